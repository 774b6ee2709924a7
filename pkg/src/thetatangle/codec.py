"""Line-based text format for diagrams.

    V <id> <h1> <h2> <h3>          trivalent vertex, half-edges counterclockwise
    X <id> <h1> <h2> <h3> <h4>     crossing, counterclockwise from the incoming understrand
    E <id> <h1>                    endpoint (marked tangle or knotoid)
    P <hA> <hB>                    half-edges joined by an edge
    M <mark> <endpoint-id>         NW, NE, SW or SE
    O <count>                      free circles with no nodes on them
    # comment

Half-edge labels are arbitrary tokens. P lines must come after every node line.
"""

from __future__ import annotations

import re
from pathlib import Path

from .diagram import DEGREE, MARKS, DiagramError, SpatialGraphDiagram, orientations

_KIND = {"V": "V", "X": "X", "E": "E"}
_ID = re.compile(r"^\d+$")


class FormatError(DiagramError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_diagram(text: str, label: str = "") -> SpatialGraphDiagram:
    kinds: dict[int, str] = {}
    slot: dict[str, tuple[int, int]] = {}
    pairs: dict = {}
    marks: dict[str, int] = {}
    loops = 0
    seen_pair = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*name:\s*(\S+)", line)
            if m and not label:
                label = m.group(1)
            continue
        tok = line.split()
        tag = tok[0]
        if tag in _KIND:
            if seen_pair:
                raise FormatError("node lines must precede P lines", lineno)
            kind = _KIND[tag]
            if len(tok) != 2 + DEGREE[kind] or not _ID.match(tok[1]):
                raise FormatError(f"{tag} needs an id and {DEGREE[kind]} half-edges", lineno)
            n = int(tok[1])
            if n in kinds:
                raise FormatError(f"duplicate node id {n}", lineno)
            kinds[n] = kind
            for i, h in enumerate(tok[2:]):
                if h in slot:
                    raise FormatError(f"half-edge {h} used twice", lineno)
                slot[h] = (n, i)
        elif tag == "P":
            seen_pair = True
            if len(tok) != 3:
                raise FormatError("P needs two half-edges", lineno)
            a, b = tok[1], tok[2]
            for h in (a, b):
                if h not in slot:
                    raise FormatError(f"unknown half-edge {h}", lineno)
                if slot[h] in pairs:
                    raise FormatError(f"half-edge {h} paired twice", lineno)
            if a == b:
                raise FormatError("a half-edge cannot pair with itself", lineno)
            pairs[slot[a]] = slot[b]
            pairs[slot[b]] = slot[a]
        elif tag == "M":
            if len(tok) != 3 or tok[1] not in MARKS or not _ID.match(tok[2]):
                raise FormatError("M needs a mark (NW, NE, SW, SE) and an endpoint id", lineno)
            if tok[1] in marks:
                raise FormatError(f"mark {tok[1]} given twice", lineno)
            marks[tok[1]] = int(tok[2])
        elif tag == "O":
            if len(tok) != 2 or not _ID.match(tok[1]):
                raise FormatError("O needs a count", lineno)
            loops += int(tok[1])
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno)
    unpaired = sorted(h for h, s in slot.items() if s not in pairs)
    if unpaired:
        raise FormatError(f"unpaired half-edges: {' '.join(unpaired)}")
    for m, n in marks.items():
        if kinds.get(n) != "E":
            raise FormatError(f"mark {m} refers to {n}, which is not an endpoint")
    d = SpatialGraphDiagram(kinds=kinds, pairs=pairs, marks=marks, loops=loops, label=label)
    try:
        d.check()
    except DiagramError as exc:
        raise FormatError(f"invalid diagram: {exc}") from None
    return d


def _oriented(d: SpatialGraphDiagram) -> SpatialGraphDiagram:
    """Rotate crossings by a half turn where needed so slot 0 is an incoming understrand."""
    inc = orientations(d)
    flip = {x for x in d.crossings if not inc.get((x, 0), True)}
    if not flip:
        return d

    def mp(h):
        n, i = h
        return (n, (i + 2) % 4) if n in flip else h

    pairs = {mp(a): mp(b) for a, b in d.pairs.items()}
    return d.replace(pairs=pairs)


def serialize_diagram(d: SpatialGraphDiagram, comments=()) -> str:
    """Deterministic text for ``d``; half-edge ``(n, i)`` is written ``n.i``."""
    d = _oriented(d)
    out = []
    if d.label:
        out.append(f"# name: {d.label}")
    out.extend(f"# {c}" for c in comments)
    for n in d.nodes():
        k = d.kinds[n]
        if k == "W":
            raise DiagramError("wires cannot be serialized")
        hs = " ".join(f"{n}.{i}" for i in range(d.deg(n)))
        out.append(f"{k} {n} {hs}")
    for m in MARKS:
        if m in d.marks:
            out.append(f"M {m} {d.marks[m]}")
    if d.loops:
        out.append(f"O {d.loops}")
    for a in sorted(d.pairs):
        b = d.pairs[a]
        if a <= b:
            out.append(f"P {a[0]}.{a[1]} {b[0]}.{b[1]}")
    return "\n".join(out) + "\n"


def read_diagram(path) -> SpatialGraphDiagram:
    path = Path(path)
    d = parse_diagram(path.read_text(encoding="utf-8"))
    return d if d.label else d.replace(label=path.stem)


def write_diagram(d: SpatialGraphDiagram, path, comments=()) -> None:
    Path(path).write_text(serialize_diagram(d, comments), encoding="utf-8")
