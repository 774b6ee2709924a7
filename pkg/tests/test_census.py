import pytest

from conftest import FIXTURES
from thetatangle.census import CensusError, build, default_site, load_census, parse_census, verify_census
from thetatangle.diagram import trivial_theta
from thetatangle.search import SearchBudget


def census(tmp_path, text):
    p = tmp_path / "census.txt"
    p.write_text(text)
    return load_census(p)


def test_parse_census():
    entries = load_census(FIXTURES / "census.txt")
    assert [e.kind for e in entries] == ["composite"] * 3
    assert entries[0].construction == "theta0 #2 3_1"
    assert entries[0].path == FIXTURES / "theta0_sum_trefoil.sg"


@pytest.mark.parametrize("line", ["a | composite | theta0", "a | odd | theta0 | x.sg", "a |  | theta0 | x.sg"])
def test_malformed_lines(line):
    with pytest.raises(CensusError, match="line 2"):
        parse_census("# header\n" + line)


def test_bad_construction():
    with pytest.raises(CensusError):
        build("theta0 #4 3_1", FIXTURES)
    with pytest.raises(CensusError):
        default_site(trivial_theta().replace(kinds={}, pairs={}), 3)


def test_build_tracks_second_summand():
    d, ids, ops = build("theta0 #2 3_1", FIXTURES)
    assert ids and ids <= set(d.kinds) and ops[1] == 2
    single, none, no_ops = build("3_1", FIXTURES)
    assert none == set() and no_ops is None


def test_theta0_sum_report(tmp_path):
    entries = census(tmp_path, f"t | composite | theta0 #2 3_1 | {FIXTURES / 'theta0_sum_trefoil.sg'}\n")
    (r,) = verify_census(entries, FIXTURES)
    assert r["family"] == "theta0_sum_knot" and r["consistent"]
    assert r["scans"]["u1"] > 0 and all(w["in_second_summand"] for w in r["witnesses"])
    assert r["verdicts"]["diagram"] == "Knotted"
    assert r["budget"] == SearchBudget().describe()


def test_mismatched_file_and_composite_without_sum(tmp_path):
    entries = census(
        tmp_path,
        f"a | composite | theta0 #2 3_1 | {FIXTURES / 'theta0.sg'}\n"
        f"b | composite | theta0 | {FIXTURES / 'theta0.sg'}\n",
    )
    ra, rb = verify_census(entries, FIXTURES, SearchBudget(max_states=200, fraction_bound=1, framing_bound=1))
    assert "diagram file does not match its construction" in ra["violations"]
    assert not rb["consistent"] and rb["family"] is None


def test_missing_diagram_file(tmp_path):
    entries = census(tmp_path, "a | prime | theta0 | nowhere.sg\n")
    with pytest.raises(CensusError, match="a:"):
        verify_census(entries, FIXTURES)
