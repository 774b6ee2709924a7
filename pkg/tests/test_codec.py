import random

import pytest

from conftest import FIXTURES, random_diagram
from thetatangle.codec import FormatError, parse_diagram, read_diagram, serialize_diagram, write_diagram
from thetatangle.diagram import isomorphic, orientations, trivial_theta, unknot

THETA = """\
# name: theta
V 0 a b c
V 1 d e f
P a f
P b e
P c d
"""


def test_parse_named_theta():
    d = parse_diagram(THETA)
    assert d.label == "theta"
    assert isomorphic(d, trivial_theta())


def test_free_loops():
    d = parse_diagram("O 2\n")
    assert d.loops == 2 and not d.kinds
    assert "O 1" in serialize_diagram(unknot())


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("V 0 a b\n", 1, "needs an id and 3"),
        ("V 0 a b c\nP a b\nV 1 d e f\n", 3, "precede"),
        ("V 0 a b c\nV 1 a e f\n", 2, "used twice"),
        ("V 0 a b c\nP a z\n", 2, "unknown half-edge"),
        ("Q 1\n", 1, "unknown line type"),
        ("O x\n", 1, "O needs a count"),
        ("M XX 0\n", 1, "M needs a mark"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(FormatError) as exc:
        parse_diagram(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_unpaired_and_invalid_reported():
    with pytest.raises(FormatError, match="unpaired"):
        parse_diagram("V 0 a b c\nV 1 d e f\nP a f\nP b e\n")
    with pytest.raises(FormatError, match="invalid diagram"):
        parse_diagram("X 0 a b c d\nP a c\nP b d\n")


def test_serialized_crossings_start_at_incoming_understrand():
    d = read_diagram(FIXTURES / "5_2.sg")
    again = parse_diagram(serialize_diagram(d))
    inc = orientations(again)
    assert all(inc[(x, 0)] for x in again.crossings)


def test_serialization_deterministic(tmp_path):
    d = read_diagram(FIXTURES / "clasp_theta.sg")
    write_diagram(d, tmp_path / "a.sg", comments=["hello"])
    assert (tmp_path / "a.sg").read_text() == serialize_diagram(d, ["hello"])
    assert read_diagram(tmp_path / "a.sg").label == d.label


def test_label_defaults_to_file_stem(tmp_path):
    p = tmp_path / "mystery.sg"
    p.write_text("O 1\n")
    assert read_diagram(p).label == "mystery"


def test_roundtrip_fuzz():
    rng = random.Random(2024)
    for _ in range(1000):
        d = random_diagram(rng)
        text = serialize_diagram(d)
        back = parse_diagram(text)
        assert isomorphic(back, d)
        assert back.marks.keys() == d.marks.keys() and back.loops == d.loops
        assert serialize_diagram(back) == text
