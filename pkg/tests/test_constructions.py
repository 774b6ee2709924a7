import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES
from thetatangle.codec import read_diagram
from thetatangle.constructions import (
    RtrSite,
    apply_rtr,
    attach_edge,
    close,
    connected_sum,
    constituent_knots,
    crossing_sites,
    cut_at_site,
    diagram_connectivity,
    glue_tangle_sum,
    is_theta,
    knotoid_closures,
    knotoid_from_knot,
    local_value,
    mirror_diagram,
    rational_diagram,
    rotate_diagram,
    tangle_diagram,
    theta_from_knotoid,
    trivial_knotoid,
    twist,
)
from thetatangle.diagram import DiagramError, closed_strand_count, from_braid, isomorphic, trivial_theta, unknot, validate
from thetatangle.invariants import determinant, identify_knot, jones, jones_matches, writhe_normalized_bracket
from thetatangle.moves import apply_crossing_change
from thetatangle.tangles import (
    INF,
    Closure,
    Fraction,
    Leaf,
    Sum,
    closure,
    connectivity_class,
    schubert_equivalent,
    tangle_connectivity,
)

small = st.tuples(st.integers(-9, 9), st.integers(1, 9)).map(lambda t: Fraction(*t))
odd_num = small.filter(lambda f: f.p % 2 == 1)


def name(d):
    rec = identify_knot(d)
    return rec.name if rec else None


def test_twist_diagram():
    assert twist(3).n_crossings() == 3 and validate(twist(-2))
    assert diagram_connectivity(twist(0)).value == "Horizontal"


@settings(max_examples=60, deadline=None)
@given(small)
def test_rational_diagram_connectivity(f):
    d = rational_diagram(f)
    assert validate(d)
    assert diagram_connectivity(d) is connectivity_class(f)


@settings(max_examples=40, deadline=None)
@given(odd_num)
def test_numerator_closure_determinant(f):
    # the numerator closure of p/q is the two-bridge knot of determinant |p|
    assert determinant(jones(close("N", rational_diagram(f)))) == abs(f.p)


@settings(max_examples=40, deadline=None)
@given(odd_num, odd_num)
def test_schubert_classification_agrees_with_jones(f1, f2):
    k1, k2 = closure(Closure.NUMERATOR, f1), closure(Closure.NUMERATOR, f2)
    if schubert_equivalent(k1, k2):
        v1, v2 = (jones(close("N", rational_diagram(f))) for f in (f1, f2))
        assert jones_matches(v1, v2)


def test_infinity_tangle():
    d = rational_diagram(INF)
    assert d.n_crossings() == 0
    assert diagram_connectivity(d).value == "Vertical"


def test_rotation_swaps_closures():
    d = rational_diagram(Fraction(3, 5))
    assert jones(close("N", rotate_diagram(d))) == jones(close("D", d))


def test_mirror_negates_value():
    d = rational_diagram(Fraction(3, 5))
    assert jones(close("N", mirror_diagram(d))) == jones(close("N", rational_diagram(Fraction(-3, 5))))


def test_sum_connectivity_and_loops():
    for t in (Sum(Leaf(Fraction(1, 2)), Leaf(Fraction(1, 2))), Sum(Leaf(Fraction(1, 3)), Leaf(Fraction(2, 5)))):
        d = tangle_diagram(t)
        cls, loops = tangle_connectivity(t)
        assert diagram_connectivity(d) is cls
        assert closed_strand_count(d) + d.loops == loops


def test_glue_requires_marks():
    with pytest.raises(DiagramError):
        glue_tangle_sum(from_braid([1, 1, 1]), twist(1))


def test_integral_addition_matches_value():
    d = glue_tangle_sum(rational_diagram(Fraction(2, 5)), twist(2))
    wnb = writhe_normalized_bracket
    assert wnb(close("N", d)) == wnb(close("N", rational_diagram(Fraction(12, 5))))
    assert jones(close("D", d)) == jones(close("D", rational_diagram(Fraction(2, 5))))


def test_crossing_site_values():
    assert local_value(RtrSite("crossing", crossing=0), INF) == Fraction(1, 1)
    assert local_value(RtrSite("crossing", crossing=0), Fraction(-1, 2)) == Fraction(-1, 1)


def test_rtr_at_crossing():
    k = from_braid([1, 1, 1])
    site = crossing_sites(k)[0]
    assert jones(apply_rtr(k, site, INF)) == jones(k)
    assert jones(apply_rtr(k, site, Fraction(-1, 2))) == jones(apply_crossing_change(k, site.crossing))


def test_face_cut_closes_back():
    rho = read_diagram(FIXTURES / "rho.sg")
    k = read_diagram(FIXTURES / "10_139.sg")
    assert name(close("D", rho)) == "10_139"
    site = RtrSite("face", darts=((0, 1), (4, 0)))
    assert isomorphic(close("D", cut_at_site(k, site)), k)
    with pytest.raises(DiagramError):
        cut_at_site(k, crossing_sites(k)[0])


def test_connected_sum_order_two():
    d, ids = connected_sum(2, trivial_theta(), from_braid([1, 1, 1]), (0, 0), (0, 0))
    assert is_theta(d) and ids == set(d.crossings)
    names = sorted(str(name(k)) for k in constituent_knots(d))
    assert names == ["3_1", "3_1", "unknot"]


def test_connected_sum_order_three():
    c = read_diagram(FIXTURES / "clasp_theta.sg")
    d, ids = connected_sum(3, c, c, c.vertices[0], c.vertices[0])
    assert is_theta(d) and d.n_crossings() == 2 * c.n_crossings()
    assert len(ids & set(d.crossings)) == c.n_crossings()


def test_attach_edge_makes_theta():
    d = attach_edge(from_braid([1, 1, 1]), (0, 0), (0, 1))
    assert is_theta(d) and validate(d)
    assert "3_1" in [name(k) for k in constituent_knots(d)]


def test_knotoid_theta():
    th = theta_from_knotoid(trivial_knotoid())
    assert is_theta(th) and th.n_crossings() == 0
    assert isomorphic(th, trivial_theta())
    k = read_diagram(FIXTURES / "knotoid_trefoil.sg")
    assert is_theta(theta_from_knotoid(k))
    over, under = knotoid_closures(k)
    assert "3_1" in (name(over), name(under))


def test_knot_type_knotoid_closures_agree():
    k = from_braid([1, 1, 1])
    kn = knotoid_from_knot(k, (0, 0))
    assert len(kn.endpoints) == 2
    over, under = knotoid_closures(kn)
    assert name(over) == name(under) == "3_1"


def test_theta_from_knotoid_rejects_other_diagrams():
    with pytest.raises(DiagramError):
        theta_from_knotoid(unknot())


def test_two_component_closure():
    d = close("D", rational_diagram(Fraction(1, 2)))
    assert closed_strand_count(d) + d.loops == 2
    assert writhe_normalized_bracket(d).span() > 0
