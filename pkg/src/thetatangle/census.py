"""Census files of theta-curves and the consistency check run over them.

A census line reads ``name | kind | construction | diagram file`` where kind is
``prime`` or ``composite`` and a construction is either a fixture name or
``A #2 B`` / ``A #3 B`` over fixture names. Diagram paths are relative to the
census file.

For a composite entry built as (crossingless theta) #2 K with K of unknotting
number one, at least one unknotting crossing change must exist and every one
found must lie inside K. Any other composite entry must have empty crossing
change and rational tangle replacement scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .codec import read_diagram
from .constructions import connected_sum, is_theta
from .diagram import DiagramError, SpatialGraphDiagram, isomorphic
from .search import DEFAULT_BUDGET, SearchBudget, certify, rtr_scan, u1_scan


class CensusError(ValueError):
    pass


@dataclass(frozen=True)
class CensusEntry:
    name: str
    kind: str
    construction: str
    path: Path


def parse_census(text: str, base: Path = Path(".")) -> list[CensusEntry]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4 or not all(parts):
            raise CensusError(f"line {lineno}: expected 'name | kind | construction | path'")
        name, kind, construction, path = parts
        if kind not in ("prime", "composite"):
            raise CensusError(f"line {lineno}: kind must be prime or composite, not {kind!r}")
        out.append(CensusEntry(name, kind, construction, base / path))
    return out


def load_census(path) -> list[CensusEntry]:
    path = Path(path)
    return parse_census(path.read_text(encoding="utf-8"), path.parent)


def default_site(d: SpatialGraphDiagram, order: int):
    """First vertex (order 3) or the first half-edge at a vertex, else the first half-edge (order 2)."""
    if order == 3:
        if not d.vertices:
            raise CensusError(f"{d.label}: no vertex for an order-3 sum")
        return d.vertices[0]
    at_vertex = [h for h in sorted(d.pairs) if d.kinds[h[0]] == "V"]
    return at_vertex[0] if at_vertex else min(d.pairs)


def build(construction: str, fixture_dir: Path):
    """Diagram for a construction, the second summand's node ids, and the parsed operands."""
    tok = construction.split()
    if len(tok) == 1:
        return read_diagram(fixture_dir / f"{tok[0]}.sg"), set(), None
    if len(tok) != 3 or tok[1] not in ("#2", "#3"):
        raise CensusError(f"cannot parse construction {construction!r}")
    order = int(tok[1][1])
    d1 = read_diagram(fixture_dir / f"{tok[0]}.sg")
    d2 = read_diagram(fixture_dir / f"{tok[2]}.sg")
    d, ids = connected_sum(order, d1, d2, default_site(d1, order), default_site(d2, order))
    return d, ids, (d1, order, d2)


def _is_trivial_theta(d: SpatialGraphDiagram) -> bool:
    return is_theta(d) and d.n_crossings() == 0


def verify_entry(entry: CensusEntry, fixture_dir: Path, budget: SearchBudget = DEFAULT_BUDGET) -> dict:
    violations = []
    d, summand, ops = build(entry.construction, fixture_dir)
    try:
        on_file = read_diagram(entry.path)
    except (OSError, DiagramError) as exc:
        raise CensusError(f"{entry.name}: {exc}") from None
    if not isomorphic(on_file, d):
        violations.append("diagram file does not match its construction")
    verdict = certify(d, budget)
    u1 = u1_scan(d, budget)
    rtr = rtr_scan(d, budget=budget)
    hits = u1 + rtr
    witnesses = []
    for h in hits:
        x = h.site.get("crossing")
        w = h.describe()
        w["in_second_summand"] = x in summand
        witnesses.append(w)
    family = None
    if entry.kind == "composite":
        if ops is None:
            violations.append("composite entry without a sum construction")
        else:
            d1, order, d2 = ops
            if order == 2 and _is_trivial_theta(d1):
                family = "theta0_sum_knot"
                if u1_scan(d2, budget):
                    if not u1:
                        violations.append("no unknotting crossing change found for theta0 #2 K with u(K)=1")
                    outside = [w for w in witnesses if not w["in_second_summand"]]
                    if outside:
                        violations.append(f"{len(outside)} witnesses lie outside the knot summand")
            else:
                family = "other_composite"
                if hits:
                    violations.append(f"{len(hits)} unknotting operations found on a composite theta-curve")
    return {
        "name": entry.name,
        "kind": entry.kind,
        "construction": entry.construction,
        "family": family,
        "scans": {"u1": len(u1), "rtr": len(rtr), "crossings": d.n_crossings()},
        "witnesses": witnesses,
        "verdicts": {"diagram": verdict.status},
        "budget": budget.describe(),
        "violations": violations,
        "consistent": not violations,
    }


def verify_census(entries, fixture_dir, budget: SearchBudget = DEFAULT_BUDGET) -> list[dict]:
    """One report per entry, in census order. Empty scans mean no witness within budget, nothing more."""
    return [verify_entry(e, Path(fixture_dir), budget) for e in entries]
