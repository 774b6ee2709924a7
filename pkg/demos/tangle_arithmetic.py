# tangle_arithmetic.py
#
# Rational tangles as fractions: continued fractions, the unknotting
# tangle family A2(l, m), and the parity law for proper replacements.

from thetatangle.constructions import close, diagram_connectivity, rational_diagram
from thetatangle.expr import format_expr, parse_expr
from thetatangle.invariants import determinant, jones
from thetatangle.tangles import INF, Fraction, cf_encode, cf_eval, connectivity_class, em_a2_result, is_proper_rtr, rtr_distance


def main():
    print("--- continued fractions ---")
    for cf in ([0, -3, -2, -2], [2, 2, 2], [0, 0]):
        f = cf_eval(cf)
        print(f"{cf} = {f}, canonical form {list(cf_encode(f))}")

    print("\n--- A2(l, m) after the unknotting crossing change ---")
    for l, m in ((3, 2), (2, -1), (-4, 3)):
        f = em_a2_result(l, m)
        print(f"A2({l}, {m}) -> {f}  integral: {f.is_integral}")

    print("\n--- the parity law ---")
    for f in (Fraction(1, 2), Fraction(3, 1), Fraction(2, 5), Fraction(3, 7)):
        traced = diagram_connectivity(rational_diagram(f)).value
        print(
            f"inf -> {f}: distance {rtr_distance(INF, f)}, proper {is_proper_rtr(INF, f)}, "
            f"class {connectivity_class(f).value} (traced: {traced})"
        )

    print("\n--- closures as two-bridge knots ---")
    for text in ("N(3/7)", "N([2,2,2])", "D(1/3 + 1/5)"):
        node = parse_expr(text)
        print(f"{text} parses to {format_expr(node)}")
    for f in (Fraction(3, 1), Fraction(5, 2), Fraction(7, 3)):
        v = jones(close("N", rational_diagram(f)))
        print(f"N({f}): det {determinant(v)}, V(t) = {v.format('t')}")


if __name__ == "__main__":
    main()
