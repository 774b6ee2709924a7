"""Frozen reference values and worked examples for each module."""

import random

import pytest

from conftest import FIXTURES, scramble
from thetatangle.census import verify_census
from thetatangle.codec import read_diagram
from thetatangle.constructions import (
    RtrSite,
    apply_rtr,
    build_rational_diagram,
    close,
    connected_sum,
    crossing_sites,
    diagram_connectivity,
    glue_tangle_sum,
    is_theta,
    knotoid_from_knot,
    mirror_diagram,
    rational_diagram,
    theta_from_knotoid,
    twist,
)
from thetatangle.diagram import DiagramError, crossing_signs, from_braid, trivial_theta, unknot, validate
from thetatangle.invariants import identify_knot, jones, writhe_normalized_bracket, yamada
from thetatangle.laurent import A, LaurentPoly, poly_equal_up_to_unit
from thetatangle.moves import Move, apply_crossing_change, apply_move, enumerate_moves
from thetatangle.search import KNOTTED, TRIVIAL, UNKNOWN, SearchBudget, certify, rtr_scan, search_trivial, simplify, u1_scan
from thetatangle.tangles import (
    INF,
    UNKNOT,
    Closure,
    ConnectivityClass,
    Fraction,
    Leaf,
    Sum,
    TwoBridge,
    cf_encode,
    cf_eval,
    closure,
    connectivity_class,
    em_a2_result,
    is_integral,
    mirror,
    rtr_distance,
    tangle_sum,
)

H, V, D = ConnectivityClass.HORIZONTAL, ConnectivityClass.VERTICAL, ConnectivityClass.DIAGONAL


def box(bound):
    out = {INF}
    for p in range(-bound, bound + 1):
        for q in range(1, bound + 1):
            f = Fraction(p, q)
            if abs(f.p) <= bound and f.q <= bound:
                out.add(f)
    return sorted(out, key=lambda f: (f.q, f.p))


# ---------------------------------------------------------------- tangle calculus

def test_calibration_positive_twists():
    # [n] is n positive crossings: its numerator closure for odd n is a positive torus knot
    for n in (1, 3, 5):
        d = build_rational_diagram([n])
        assert d.n_crossings() == n and diagram_connectivity(d) is D
        assert set(crossing_signs(close("N", d)).values()) == {1}
    assert set(crossing_signs(close("N", build_rational_diagram([-3]))).values()) == {-1}
    assert diagram_connectivity(rational_diagram(Fraction(0, 1))) is H
    assert diagram_connectivity(rational_diagram(INF)) is V
    assert diagram_connectivity(rational_diagram(Fraction(-1, 1))) is D


def test_cf_values():
    assert cf_eval([]) == Fraction(0, 1)
    assert cf_eval([2, 3]) == Fraction(5, 3)
    assert cf_encode(Fraction(0, 1)) == ()
    assert cf_eval(cf_encode(Fraction(5, 3))) == Fraction(5, 3)
    assert cf_encode(INF) == (0, 0)


def test_cf_roundtrip_exhaustive():
    assert all(cf_eval(cf_encode(f)) == f for f in box(50))


def test_mirror_values():
    assert mirror(Fraction(3, 1)) == Leaf(Fraction(-3, 1))
    assert jones(close("N", mirror_diagram(twist(3)))) == jones(close("N", twist(-3)))
    assert mirror(Fraction(0, 1)) == Leaf(Fraction(0, 1))
    assert mirror(mirror(Fraction(5, 3))) == Leaf(Fraction(5, 3))


def test_sum_values():
    assert tangle_sum(Fraction(1, 2), Fraction(1, 1)) == Leaf(Fraction(3, 2))
    glued = glue_tangle_sum(rational_diagram(Fraction(1, 2)), twist(1))
    assert jones(close("N", glued)) == jones(close("N", rational_diagram(Fraction(3, 2))))
    assert tangle_sum(Fraction(2, 1), Fraction(3, 1)) == Leaf(Fraction(5, 1))
    assert isinstance(tangle_sum(Fraction(1, 2), Fraction(1, 3)), Sum)


def test_integrality_values():
    assert is_integral(Leaf(Fraction(4, 1)))
    assert not is_integral(Leaf(INF))
    assert not is_integral(Sum(Leaf(Fraction(1, 2)), Leaf(Fraction(1, 3))))


def test_integral_sum_law_exhaustive():
    fs = box(10)
    for f1 in fs:
        for f2 in fs:
            t = Sum(Leaf(f1), Leaf(f2))
            assert is_integral(t) == (f1.is_integral and f2.is_integral)


def test_connectivity_values():
    assert connectivity_class(INF) is V
    assert connectivity_class(Fraction(0, 1)) is H
    assert connectivity_class(Fraction(1, 2)) is V


def test_distance_values():
    assert rtr_distance(INF, Fraction(1, 2)) == 2
    assert rtr_distance(INF, Fraction(3, 1)) == 1
    fs = box(6)
    for f1 in fs:
        for f2 in fs:
            assert (rtr_distance(f1, f2) == 0) == (f1 == f2)


def test_a2_values():
    assert em_a2_result(3, 2) == Fraction(3, 7)
    assert em_a2_result(-2, -1) == Fraction(-3, 4)
    with pytest.raises(ValueError):
        em_a2_result(2, 1)


def test_closure_values():
    assert closure(Closure.NUMERATOR, Fraction(1, 3)) == UNKNOT
    assert all(closure(Closure.DENOMINATOR, Fraction(n, 1)) == UNKNOT for n in range(-6, 7))
    assert closure(Closure.NUMERATOR, Fraction(3, 1)) == TwoBridge(3, 1)
    assert identify_knot(close("N", rational_diagram(Fraction(3, 1)))).name == "3_1"


def test_closure_consistency_exhaustive():
    for f in box(8):
        if f.is_infinite:
            continue
        assert closure(Closure.NUMERATOR, f).is_unknot == (abs(f.p) == 1)
        assert closure(Closure.DENOMINATOR, f).is_unknot == (f.q == 1)


# ---------------------------------------------------------------- diagrams and constructions

def test_scrambled_trefoil_rotation_is_nonplanar():
    d = from_braid([1, 1, 1])
    pairs = {}
    for (n, i), (m, j) in d.pairs.items():
        i2 = (1 - i) % 4 if n == 0 else i
        j2 = (1 - j) % 4 if m == 0 else j
        pairs[(n, i2)] = (m, j2)
    assert not validate(d.replace(pairs=pairs))


def test_rational_diagram_values():
    zero = build_rational_diagram([])
    assert zero.n_crossings() == 0 and diagram_connectivity(zero) is H
    three = build_rational_diagram([3])
    assert three.n_crossings() == 3
    d = build_rational_diagram([2, 2])
    assert d.n_crossings() == 4
    f = cf_eval([2, 2])
    assert closure(Closure.NUMERATOR, f) == TwoBridge(3, 2)
    assert identify_knot(close("N", d)).name == "3_1"


def test_glue_values():
    z = glue_tangle_sum(twist(0), twist(0))
    assert z.n_crossings() == 0 and diagram_connectivity(z) is H
    assert jones(close("N", glue_tangle_sum(twist(2), twist(3)))) == jones(close("N", twist(5)))
    rho = read_diagram(FIXTURES / "rho.sg")
    r0 = glue_tangle_sum(rho, twist(0))
    assert certify(close("N", r0)).status == TRIVIAL
    assert identify_knot(close("D", r0)).name == "10_139"


def test_numerator_of_zero_tangle_is_unlink():
    d = close("N", twist(0))
    assert d.n_crossings() == 0 and d.loops == 2


def test_crossing_change_values():
    k = from_braid([1, 1, 1])
    for x in k.crossings:
        assert simplify(apply_crossing_change(k, x)).n_crossings() == 0
    with pytest.raises(DiagramError):
        apply_crossing_change(trivial_theta(), 0)


def test_rtr_values():
    k = from_braid([1, 1, 1])
    site = crossing_sites(k)[0]
    assert simplify(apply_rtr(k, site, INF)).n_crossings() == 3
    assert jones(apply_rtr(k, site, Fraction(-1, 2))) == jones(apply_crossing_change(k, site.crossing))
    # two theta edges across one face: the integral tangle 3 makes a (2,3)-twist clasp
    th = trivial_theta()
    clasp = apply_rtr(th, RtrSite("face", darts=((0, 0), (1, 1))), Fraction(3, 1))
    assert is_theta(clasp) and clasp.n_crossings() == 3
    assert not poly_equal_up_to_unit(yamada(clasp), yamada(th))


def test_enumeration_values():
    kink = read_diagram(FIXTURES / "unknot_kinked.sg")
    assert "R1remove" in {m.kind for m in enumerate_moves(kink)}
    bigon = from_braid([1, -1])
    assert "R2remove" in {m.kind for m in enumerate_moves(bigon)}
    assert "R3" in {m.kind for m in enumerate_moves(from_braid([1, 2, 1]))}


def test_connected_sum_values():
    th = trivial_theta()
    s, _ = connected_sum(2, th, from_braid([1, 1, 1]), (0, 0), (0, 0))
    assert certify(s).status == KNOTTED
    t, _ = connected_sum(3, th, th, 0, 0)
    assert certify(t).status == TRIVIAL
    c = read_diagram(FIXTURES / "clasp_theta_vsum_clasp_theta.sg")
    assert not poly_equal_up_to_unit(yamada(c), yamada(th))


def test_knot_type_knotoid_gives_sum_with_theta():
    k = from_braid([1, 1, 1])
    th = theta_from_knotoid(knotoid_from_knot(k, (0, 0)))
    s, _ = connected_sum(2, trivial_theta(), k, (0, 0), (0, 0))
    assert poly_equal_up_to_unit(yamada(th), yamada(s))


def test_nontrivial_knotoid_theta_yamada():
    th = theta_from_knotoid(read_diagram(FIXTURES / "knotoid_2_1.sg"))
    assert not poly_equal_up_to_unit(yamada(th), yamada(trivial_theta()))


# ---------------------------------------------------------------- invariants

def test_bracket_values():
    assert writhe_normalized_bracket(unknot()) == 1
    t = writhe_normalized_bracket(from_braid([1, 1, 1]))
    assert len(t.terms) == 3 and t != t.mirror()
    s, _ = connected_sum(2, from_braid([1, 1, 1]), from_braid([1, 1, 1]), (0, 0), (0, 0))
    assert writhe_normalized_bracket(s) == t * t
    assert not poly_equal_up_to_unit(t, writhe_normalized_bracket(from_braid([1, -2, 1, -2])))


def test_trivial_theta_yamada_frozen():
    expected = LaurentPoly({-2: -1, -1: -1, 0: -2, 1: -1, 2: -1})
    assert yamada(trivial_theta()) == expected


def test_yamada_r2_exact():
    d = read_diagram(FIXTURES / "theta0_sum_trefoil.sg")
    grown = [apply_move(d, m) for m in enumerate_moves(d, grow=True) if m.kind == "R2add"]
    assert grown and all(yamada(g) == yamada(d) for g in grown[:10])


def test_unit_equality_values():
    p = A**3 - 1
    assert poly_equal_up_to_unit(p, p) and poly_equal_up_to_unit(p, A**2 * p)


def test_twist_knot_outside_table():
    assert identify_knot(close("N", rational_diagram(Fraction(9, 2)))) is None


# ---------------------------------------------------------------- search

def test_simplify_values():
    assert simplify(from_braid([1, 1, 1])).n_crossings() == 3
    assert simplify(read_diagram(FIXTURES / "n_rho.sg")).n_crossings() == 0


def test_certify_fuzzed_trivial_theta():
    rng = random.Random(4)
    d = trivial_theta()
    for _ in range(5):
        d = apply_move(d, rng.choice([m for m in enumerate_moves(d, grow=True) if m.kind != "R1add"]))
    assert certify(d).status == TRIVIAL


def test_scrambled_theta_tiny_budget_unknown():
    rng = random.Random(8)
    d = trivial_theta()
    while d.n_crossings() < 14:
        d = apply_move(d, rng.choice([m for m in enumerate_moves(d, grow=True) if m.kind == "R2add"]))
    d = scramble(d, rng)
    assert search_trivial(d, SearchBudget(max_states=10)).status == UNKNOWN


def test_rtr_scan_values():
    k = from_braid([1, 1, 1])
    hits = rtr_scan(k, crossing_sites(k), SearchBudget(fraction_bound=2))
    assert Fraction(-1, 2) in {Fraction(*map(int, h.replacement.split("/"))) for h in hits}
    assert all(h.replacement != "inf" for h in hits)


def test_no_single_crossing_change_unknots_10_139():
    assert u1_scan(read_diagram(FIXTURES / "10_139.sg")) == []


def test_empty_census():
    assert verify_census([], FIXTURES) == []
