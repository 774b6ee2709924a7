from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "thetatangle" / "data" / "fixtures"

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def report_criterion():
    def record(number: int, ok: bool, detail: str):
        _CRITERIA[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(_CRITERIA[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])


def scramble(d, rng):
    """Same diagram with shuffled node ids and crossings turned by a half turn at random."""
    ids = list(d.kinds)
    new = rng.sample(range(len(ids) + 5), len(ids))
    ren = dict(zip(ids, new))
    turn = {n for n in ids if d.kinds[n] == "X" and rng.random() < 0.5}

    def mp(h):
        n, i = h
        return (ren[n], (i + 2) % 4 if n in turn else i)

    return d.replace(
        kinds={ren[n]: k for n, k in d.kinds.items()},
        pairs={mp(a): mp(b) for a, b in d.pairs.items()},
        marks={m: ren[e] for m, e in d.marks.items()},
    )


def random_diagram(rng, max_crossings=7):
    """A fixture pushed through a few random moves, then scrambled."""
    from thetatangle.codec import read_diagram
    from thetatangle.moves import apply_move, enumerate_moves

    names = sorted(p.stem for p in FIXTURES.glob("*.sg"))
    d = read_diagram(FIXTURES / f"{rng.choice(names)}.sg")
    for _ in range(rng.randrange(6)):
        moves = enumerate_moves(d, grow=d.n_crossings() < max_crossings) or enumerate_moves(d, grow=True)
        if moves:
            d = apply_move(d, rng.choice(moves))
    return scramble(d, rng)
