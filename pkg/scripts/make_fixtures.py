"""Regenerate the bundled knot table and diagram fixtures.

Run from the repository root:  python3 scripts/make_fixtures.py
Every fixture is built from an explicit construction, so rerunning is a no-op
unless the constructions change.
"""

from pathlib import Path

from thetatangle.codec import write_diagram
from thetatangle.constructions import (
    RtrSite,
    attach_edge,
    close,
    connected_sum,
    cut_at_site,
    knotoid_from_knot,
    trivial_knotoid,
)
from thetatangle.diagram import SpatialGraphDiagram, from_braid, from_pd, trivial_theta
from thetatangle.invariants import KnotRecord, determinant, format_table_line, jones
from thetatangle.moves import Move, apply_move

DATA = Path(__file__).resolve().parent.parent / "src" / "thetatangle" / "data"
FIX = DATA / "fixtures"

TREFOIL_PD = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]
KNOTS = {
    "3_1": ("pd", TREFOIL_PD),
    "4_1": ("pd", [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
    "5_1": ("pd", [[1, 6, 2, 7], [3, 8, 4, 9], [5, 10, 6, 1], [7, 2, 8, 3], [9, 4, 10, 5]]),
    "5_2": ("pd", [[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]]),
    # positive braid closure on three strands
    "10_139": ("braid", [1, 1, 1, 1, 2, 1, 1, 1, 2, 2]),
}


def knot(name):
    how, data = KNOTS[name]
    return from_pd(data, name) if how == "pd" else from_braid(data, name)


def write_table():
    lines = [
        "# name; Jones polynomial in t as (exponent,coefficient) pairs; determinant",
        "# Values computed by the Kauffman bracket state sum from the diagrams in",
        "# scripts/make_fixtures.py (3_1, 4_1, 5_1, 5_2 from PD codes, 10_139 from the",
        "# braid word s1^4 s2 s1^3 s2^2) and cross-checked by hand for 3_1 and 4_1.",
        "unknot; (0,1); 1",
    ]
    for name in KNOTS:
        v = jones(knot(name))
        lines.append(format_table_line(KnotRecord(name, v, determinant(v))))
    (DATA / "knots.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def kinked_unknot():
    d = from_pd([[1, 1, 2, 2]])
    for side in (-1, 1):
        h = max(d.pairs)
        d = apply_move(d, Move("R1add", (h, side > 0, side)))
    return d.replace(label="unknot_kinked")


def clasp_theta():
    """Trefoil plus the short arc joining its two strands beside crossing 0."""
    return attach_edge(knot("3_1"), (0, 0), (0, 1)).replace(label="clasp_theta")


KNOTOID_2_1 = SpatialGraphDiagram(
    kinds={0: "X", 1: "X", 2: "E", 3: "E"},
    pairs={(0, 0): (1, 0), (1, 0): (0, 0), (0, 1): (1, 2), (1, 2): (0, 1), (0, 2): (1, 1),
           (1, 1): (0, 2), (0, 3): (2, 0), (2, 0): (0, 3), (1, 3): (3, 0), (3, 0): (1, 3)},
    label="knotoid_2_1",
)

RHO_SITE = RtrSite("face", darts=((0, 1), (4, 0)))


def fixtures():
    out = {}
    for name in KNOTS:
        out[name] = (knot(name), f"jones matches table entry {name}")
    out["unknot_kinked"] = (kinked_unknot(), "simplifies to 0 crossings")
    theta0 = trivial_theta()
    out["theta0"] = (theta0, "crossingless theta-curve")
    tre = knot("3_1")
    s, _ = connected_sum(2, theta0, tre, (0, 0), (0, 0))
    out["theta0_sum_trefoil"] = (s.replace(label="theta0_sum_trefoil"), "constituents unknot, 3_1, 3_1")
    ct = clasp_theta()
    out["clasp_theta"] = (ct, "one constituent is 3_1")
    s, _ = connected_sum(3, ct, ct, ct.vertices[0], ct.vertices[0])
    out["clasp_theta_vsum_clasp_theta"] = (s.replace(label="clasp_theta_vsum_clasp_theta"), "no unknotting crossing change")
    site = min(h for h in ct.pairs if ct.kinds[h[0]] == "V")
    s, _ = connected_sum(2, ct, tre, site, (0, 0))
    out["clasp_theta_sum_trefoil"] = (s.replace(label="clasp_theta_sum_trefoil"), "no unknotting crossing change")
    k10 = knot("10_139")
    rho = cut_at_site(k10, RHO_SITE).replace(label="rho")
    out["rho"] = (rho, "N(rho) certifies trivial; D(rho) identifies as 10_139")
    out["n_rho"] = (close("N", rho).replace(label="n_rho"), "certifies trivial")
    out["d_rho"] = (close("D", rho).replace(label="d_rho"), "identifies as 10_139")
    hopf = from_braid([1, 1], "hopf")
    hc = attach_edge(hopf, (0, 0), (0, 1))
    bridge = next(h for h in sorted(hc.pairs) if hc.kinds[h[0]] == "V" and hc.kinds[hc.pairs[h][0]] == "V")
    s, _ = connected_sum(2, hc, tre, bridge, (0, 0))
    out["handcuff_ex1"] = (s.replace(label="handcuff_ex1"), "u1_scan finds a clasp crossing")
    out["knotoid_trivial"] = (trivial_knotoid("knotoid_trivial"), "f_distance 0")
    out["knotoid_2_1"] = (KNOTOID_2_1, "f_distance 1")
    out["knotoid_trefoil"] = (knotoid_from_knot(tre, (0, 0)).replace(label="knotoid_trefoil"), "f_distance 2")
    return out


CENSUS = [
    ("theta0_sum_trefoil", "composite", "theta0 #2 3_1", "theta0_sum_trefoil.sg"),
    ("clasp_theta_vsum_clasp_theta", "composite", "clasp_theta #3 clasp_theta", "clasp_theta_vsum_clasp_theta.sg"),
    ("clasp_theta_sum_trefoil", "composite", "clasp_theta #2 3_1", "clasp_theta_sum_trefoil.sg"),
]


def main():
    FIX.mkdir(parents=True, exist_ok=True)
    write_table()
    for name, (d, test) in fixtures().items():
        write_diagram(d, FIX / f"{name}.sg", comments=[f"selftest: {test}"])
    lines = ["# name | kind | construction | diagram file"]
    lines += [" | ".join(rec) for rec in CENSUS]
    (FIX / "census.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
