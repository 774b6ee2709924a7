# rho_unknotting.py
#
# The tangle rho is cut out of a 10_139 diagram along one face. Its
# numerator closure is an unknot, and the search returns the moves that
# prove it. Its denominator closure gives 10_139 back.

import time

from thetatangle.codec import read_diagram
from thetatangle.constructions import close
from thetatangle.invariants import identify_knot, jones
from thetatangle.search import certify, replay

from _paths import FIXTURES


def main():
    rho = read_diagram(FIXTURES / "rho.sg")
    print(f"rho: {rho.n_crossings()} crossings, marks {sorted(rho.marks)}")

    start = time.time()
    n_rho = close("N", rho)
    verdict = certify(n_rho)
    print(f"\nN(rho): {verdict.status} after exploring {verdict.explored} states ({time.time() - start:.2f}s)")
    d = n_rho
    for m in verdict.witness:
        d = replay(d, [m])
        print(f"  {m.kind:12s} -> {d.n_crossings()} crossings")

    d_rho = close("D", rho)
    rec = identify_knot(d_rho)
    print(f"\nD(rho): {d_rho.n_crossings()} crossings, V(t) = {jones(d_rho).format('t')}")
    print(f"identified as {rec.name if rec else 'nothing in the table'}")


if __name__ == "__main__":
    main()
