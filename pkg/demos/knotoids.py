# knotoids.py
#
# Knotoids and their theta-curves. The forbidden-move distance of a
# knotoid matches the number of crossing changes against the closing
# arcs of its theta-curve.

from thetatangle.codec import read_diagram
from thetatangle.constructions import knotoid_closures, theta_from_knotoid
from thetatangle.invariants import identify_knot
from thetatangle.search import arc_change_distance, certify, f_distance

from _paths import FIXTURES


def main():
    for name in ("knotoid_trivial", "knotoid_2_1", "knotoid_trefoil"):
        k = read_diagram(FIXTURES / f"{name}.sg")
        th = theta_from_knotoid(k)
        over, under = (identify_knot(c) for c in knotoid_closures(k))
        print(f"{name}: {k.n_crossings()} crossings, theta has {th.n_crossings()}")
        print(f"  closures: over {over.name if over else '?'}, under {under.name if under else '?'}")
        print(f"  theta verdict {certify(th).status}")
        print(f"  f-distance {f_distance(k)}, arc changes {arc_change_distance(k)}")


if __name__ == "__main__":
    main()
