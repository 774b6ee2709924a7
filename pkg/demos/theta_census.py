# theta_census.py
#
# Unknotting operations on composite theta-curves. A knot summand of
# unknotting number one carries every unknotting crossing change of
# theta0 #2 K; the other composites admit none. A handcuff graph built
# the same way can still be unknotted, so the restriction to theta-curves
# matters.

import json
import time

from thetatangle.census import load_census, verify_census
from thetatangle.codec import read_diagram
from thetatangle.search import u1_scan

from _paths import FIXTURES


def main():
    start = time.time()
    for report in verify_census(load_census(FIXTURES / "census.txt"), FIXTURES):
        hits = report["witnesses"]
        inside = sum(w["in_second_summand"] for w in hits)
        print(f"{report['construction']:30s} witnesses {len(hits):2d} (in K: {inside})  consistent {report['consistent']}")
    print(f"census checked in {time.time() - start:.1f}s")

    handcuff = read_diagram(FIXTURES / "handcuff_ex1.sg")
    hits = u1_scan(handcuff)
    print(f"\nhandcuff_ex1: {len(hits)} unknotting crossing changes")
    for h in hits:
        print("  " + json.dumps(h.describe()["site"]), f"witness of {len(h.verdict.witness)} moves")


if __name__ == "__main__":
    main()
