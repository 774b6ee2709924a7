"""Certification by invariants plus bounded move search, and the unknotting scans built on it.

Every search here is deterministic: moves are enumerated in sorted order and
ties in the frontier are broken by the canonical serialization of the state.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .constructions import (
    RtrSite,
    apply_rtr,
    crossing_sites,
    delete_edges,
    local_value,
    theta_from_knotoid,
)
from .diagram import DiagramError, SpatialGraphDiagram, closed_strand_count, graph_edges
from .invariants import (
    DELTA,
    InvariantError,
    abstract_yamada,
    writhe_normalized_bracket,
    yamada,
)
from .laurent import ONE, LaurentPoly, poly_equal_up_to_unit
from .moves import Move, apply_crossing_change, apply_forbidden_move, apply_move, enumerate_moves, forbidden_site, growth_moves
from .tangles import INF, Fraction, is_proper_rtr

TRIVIAL = "Trivial"
KNOTTED = "Knotted"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SearchBudget:
    max_crossings: int = 12
    max_depth: int = 20
    max_states: int = 200_000
    fraction_bound: int = 5
    framing_bound: int = 2

    def describe(self) -> dict:
        return {
            "max_crossings": self.max_crossings,
            "max_depth": self.max_depth,
            "max_states": self.max_states,
            "fraction_bound": self.fraction_bound,
            "framing_bound": self.framing_bound,
        }


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class Verdict:
    """Outcome of a certification.

    ``witness`` is the move sequence for Trivial, replayable from the input.
    ``certificate`` names the distinguishing invariant for Knotted.
    """

    status: str
    witness: tuple = ()
    certificate: dict | None = None
    explored: int = 0

    @property
    def is_trivial(self) -> bool:
        return self.status == TRIVIAL

    def describe(self) -> dict:
        out = {"status": self.status, "explored": self.explored}
        if self.status == TRIVIAL:
            out["witness"] = [m.describe() for m in self.witness]
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def replay(d: SpatialGraphDiagram, witness) -> SpatialGraphDiagram:
    for m in witness:
        d = apply_move(d, m)
    return d


# ---------------------------------------------------------------- invariant checks

def diagram_type(d: SpatialGraphDiagram) -> str:
    if d.marks:
        return "tangle"
    if d.endpoints:
        return "knotoid" if len(d.endpoints) == 2 and not d.vertices else "other"
    if d.vertices:
        return "graph"
    return "link"


def abstract_graph(d: SpatialGraphDiagram):
    """Vertices, edges and closed circles of the underlying graph."""
    vid = {v: k for k, v in enumerate(d.vertices)}
    edges, circles = [], d.loops
    for p in graph_edges(d):
        if d.kinds[p[0][0]] == "X":
            circles += 1
        else:
            edges.append((vid[p[0][0]], vid[p[-1][0]]))
    return len(vid), edges, circles


def cycles(d: SpatialGraphDiagram) -> list[list[int]]:
    """Edge subsets (indices into ``graph_edges``) in which every vertex has degree 0 or 2."""
    paths = [p for p in graph_edges(d) if d.kinds[p[0][0]] == "V"]
    out = []
    for r in range(1, len(paths) + 1):
        for subset in itertools.combinations(range(len(paths)), r):
            deg: dict[int, int] = {}
            for k in subset:
                for n in (paths[k][0][0], paths[k][-1][0]):
                    deg[n] = deg.get(n, 0) + 1
            if all(c == 2 for c in deg.values()):
                out.append(list(subset))
    return out


def constituents(d: SpatialGraphDiagram) -> list[tuple[tuple, SpatialGraphDiagram]]:
    """Links carried by each cycle of a graph diagram, keyed by the edge indices used."""
    paths = [p for p in graph_edges(d) if d.kinds[p[0][0]] == "V"]
    out = []
    for subset in cycles(d):
        drop = [paths[k] for k in range(len(paths)) if k not in subset]
        out.append((tuple(subset), delete_edges(d, drop)))
    return out


def _unlink_bracket(components: int) -> LaurentPoly:
    return DELTA ** (components - 1) if components > 0 else ONE


def _link_check(d: SpatialGraphDiagram, name: str):
    comps = closed_strand_count(d) + d.loops
    value = writhe_normalized_bracket(d)
    trivial = _unlink_bracket(comps)
    if value != trivial:
        return {"invariant": "normalized bracket", "object": name, "value": str(value), "trivial": str(trivial)}
    return None


def _graph_check(d: SpatialGraphDiagram):
    value = yamada(d)
    trivial = abstract_yamada(*abstract_graph(d))
    if not poly_equal_up_to_unit(value, trivial):
        return {"invariant": "yamada", "object": d.label or "graph", "value": str(value), "trivial": str(trivial)}
    for subset, link in constituents(d):
        cert = _link_check(link, f"cycle{list(subset)}")
        if cert:
            return cert
    return None


def invariant_obstruction(d: SpatialGraphDiagram) -> dict | None:
    """Certificate that ``d`` is not trivial, or None if the invariants cannot tell."""
    kind = diagram_type(d)
    try:
        if kind == "link":
            return _link_check(d, d.label or "link")
        if kind == "graph":
            return _graph_check(d)
        if kind == "knotoid":
            cert = _graph_check(theta_from_knotoid(d))
            if cert:
                cert["object"] = "theta(" + cert["object"] + ")"
            return cert
    except InvariantError:
        return None
    return None


# ---------------------------------------------------------------- move search

def _key(d: SpatialGraphDiagram) -> str:
    return d.canonical_str()


def _neighbors(d: SpatialGraphDiagram, grow: bool, forbidden: bool = False):
    """Non-growth moves, or with ``grow`` only the growth moves (kinks excluded)."""
    moves = sorted(set(growth_moves(d))) if grow else enumerate_moves(d, forbidden=forbidden)
    for m in moves:
        if m.kind == "R1add":
            continue
        try:
            yield m, apply_move(d, m)
        except DiagramError:
            continue


def search_trivial(d: SpatialGraphDiagram, budget: SearchBudget = DEFAULT_BUDGET, goal=None) -> Verdict:
    """Best-first search for a move sequence reaching a crossingless diagram.

    States are ordered by (crossings, depth, canonical form). Growth moves are
    generated lazily, only after all smaller states have been examined.
    """
    goal = goal or (lambda s: s.n_crossings() == 0)
    if goal(d):
        return Verdict(TRIVIAL, (), None, 1)
    start = _key(d)
    parent = {start: None}
    states = {start: d}
    depth = {start: 0}
    heap = [(d.n_crossings(), 0, start, False)]
    explored = 1
    while heap:
        _, dep, key, grow = heapq.heappop(heap)
        s = states[key]
        if not grow and s.n_crossings() < budget.max_crossings:
            heapq.heappush(heap, (s.n_crossings() + 1, dep, key, True))
        for m, t in _neighbors(s, grow):
            if t.n_crossings() > budget.max_crossings:
                continue
            k = _key(t)
            if k in parent:
                continue
            parent[k] = (key, m)
            states[k] = t
            depth[k] = dep + 1
            explored += 1
            if goal(t):
                return Verdict(TRIVIAL, _path(parent, k), None, explored)
            if explored >= budget.max_states:
                return Verdict(UNKNOWN, (), None, explored)
            if dep + 1 < budget.max_depth:
                heapq.heappush(heap, (t.n_crossings(), dep + 1, k, False))
    return Verdict(UNKNOWN, (), None, explored)


def _path(parent, k) -> tuple:
    out = []
    while parent[k] is not None:
        k, m = parent[k]
        out.append(m)
    return tuple(reversed(out))


def simplify(d: SpatialGraphDiagram, budget: SearchBudget = DEFAULT_BUDGET, forbidden: bool = False) -> SpatialGraphDiagram:
    """Reduce crossings without ever adding any.

    Greedy reducing moves, then a bounded sweep through crossing-neutral moves
    in search of a new reduction. Returns the first minimum found.
    """
    best = d
    limit = max(1, min(budget.max_states, 5000))
    while True:
        seen = {_key(best)}
        frontier = [best]
        improved = None
        count = 0
        while frontier and improved is None and count < limit:
            nxt = []
            for s in frontier:
                for m, t in _neighbors(s, grow=False, forbidden=forbidden):
                    if t.n_crossings() < s.n_crossings():
                        improved = t
                        break
                    k = _key(t)
                    if k in seen:
                        continue
                    seen.add(k)
                    nxt.append(t)
                    count += 1
                if improved is not None:
                    break
            frontier = nxt
        if improved is None:
            return best
        best = improved


def certify(d: SpatialGraphDiagram, budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    """Trivial with a witness, Knotted with an invariant certificate, or Unknown."""
    if d.n_crossings() == 0 and diagram_type(d) != "tangle":
        return Verdict(TRIVIAL, (), None, 1)
    cert = invariant_obstruction(d)
    if cert is not None:
        return Verdict(KNOTTED, (), cert, 1)
    if diagram_type(d) == "tangle":
        return Verdict(UNKNOWN)
    return search_trivial(d, budget)


# ---------------------------------------------------------------- scans

@dataclass(frozen=True)
class ScanHit:
    """One unknotting operation and the verdict it earned."""

    kind: str  # "crossing_change" or "rtr"
    site: dict
    replacement: str | None
    verdict: Verdict = field(compare=False)

    def describe(self) -> dict:
        out = {"kind": self.kind, "site": self.site}
        if self.replacement is not None:
            out["replacement"] = self.replacement
        out["witness"] = [m.describe() for m in self.verdict.witness]
        return out


def u1_scan(d: SpatialGraphDiagram, budget: SearchBudget = DEFAULT_BUDGET) -> list[ScanHit]:
    """Crossings whose change yields a diagram certified Trivial."""
    hits = []
    for x in d.crossings:
        v = certify(apply_crossing_change(d, x), budget)
        if v.is_trivial:
            hits.append(ScanHit("crossing_change", {"kind": "crossing", "crossing": x}, None, v))
    return hits


def proper_replacements(bound: int) -> list[Fraction]:
    """Rational tangles r with |p|, |q| <= bound for which ∞ -> r is proper."""
    out = set()
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            f = Fraction(p, q) if p else None
            if f is not None and (f.p, f.q) == (p, q) and is_proper_rtr(INF, f):
                out.add(f)
    return sorted(out, key=lambda f: (f.q, abs(f.p), f.p))


def default_sites(d: SpatialGraphDiagram, budget: SearchBudget = DEFAULT_BUDGET) -> list[RtrSite]:
    """Crossing sites at every framing within bound, unframed first."""
    out = []
    for k in sorted(range(-budget.framing_bound, budget.framing_bound + 1), key=lambda k: (abs(k), k)):
        out.extend(crossing_sites(d, framing=k))
    return out


def rtr_scan(d: SpatialGraphDiagram, sites=None, budget: SearchBudget = DEFAULT_BUDGET) -> list[ScanHit]:
    """Proper rational tangle replacements that yield a diagram certified Trivial.

    Replacements producing the same local tangle at the same place are tried once.
    """
    sites = default_sites(d, budget) if sites is None else list(sites)
    hits = []
    tried = set()
    for site in sites:
        place = (site.kind, site.crossing, site.darts)
        for r in proper_replacements(budget.fraction_bound):
            value = local_value(site, r)
            if (place, value) in tried:
                continue
            tried.add((place, value))
            try:
                out = apply_rtr(d, site, r)
            except DiagramError:
                continue
            v = certify(out, budget)
            if v.is_trivial:
                hits.append(ScanHit("rtr", site.describe(), str(r), v))
    return hits


# ---------------------------------------------------------------- knotoids

def _forbidden_neighbors(k: SpatialGraphDiagram, budget: SearchBudget, limit: int):
    """Knotoids one forbidden move away, allowing neutral moves to bring a crossing next to an endpoint."""
    seen = {_key(k)}
    frontier = [k]
    pool = [k]
    while frontier and len(pool) < limit:
        nxt = []
        for s in frontier:
            for m, t in _neighbors(s, grow=False):
                key = _key(t)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(t)
                pool.append(t)
        frontier = nxt
    out = {}
    for s in pool:
        for n in s.endpoints:
            site = forbidden_site(s, n)
            if site is None:
                continue
            for kind in ("Over", "Under"):
                try:
                    t = apply_forbidden_move(s, kind, n)
                except DiagramError:
                    continue
                out.setdefault(_key(t), t)
    return [out[key] for key in sorted(out)]


def f_distance(k: SpatialGraphDiagram, bound: int = 2, budget: SearchBudget = DEFAULT_BUDGET) -> int | None:
    """Fewest forbidden moves turning ``k`` into a knotoid certified trivial, or None past ``bound``."""
    level = [simplify(k, budget)]
    seen = {_key(level[0])}
    for dist in range(bound + 1):
        for s in level:
            if certify(s, budget).is_trivial:
                return dist
        if dist == bound:
            break
        nxt = []
        for s in level:
            for t in _forbidden_neighbors(s, budget, limit=200):
                t = simplify(t, budget)
                key = _key(t)
                if key not in seen:
                    seen.add(key)
                    nxt.append(t)
        level = nxt
    return None


def min_crossing_changes(d: SpatialGraphDiagram, bound: int = 2, budget: SearchBudget = DEFAULT_BUDGET) -> int | None:
    """Fewest crossing changes (up to ``bound``) after which ``d`` certifies Trivial."""
    for r in range(bound + 1):
        for xs in itertools.combinations(d.crossings, r):
            t = d
            for x in xs:
                t = apply_crossing_change(t, x)
            if certify(t, budget).is_trivial:
                return r
    return None


def _arc_crossings(th: SpatialGraphDiagram, tail: int) -> list[int]:
    """Crossings of a knotoid's theta-curve that involve the over or under closing arc."""
    arcs = [p for p in graph_edges(th) if p[0] in ((tail, 1), (tail, 2)) or p[-1] in ((tail, 1), (tail, 2))]
    return sorted({h[0] for p in arcs for h in p if th.kinds[h[0]] == "X"})


def _slide_pool(th: SpatialGraphDiagram, vertices, depth: int) -> list[SpatialGraphDiagram]:
    """The diagram plus everything reachable by up to ``depth`` vertex slides that push strands onto the arcs."""
    seen = {_key(th): th}
    frontier = [th]
    for _ in range(depth):
        nxt = []
        for s in frontier:
            for v in vertices:
                for j in range(3):
                    w, c = s.pairs[(v, (j + 2) % 3)]
                    if s.kinds[w] != "X":
                        continue
                    try:
                        t = apply_move(s, Move("VertexSlide", (v, j, w, c)))
                    except DiagramError:
                        continue
                    k = _key(t)
                    if k not in seen:
                        seen[k] = t
                        nxt.append(t)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def arc_change_distance(k: SpatialGraphDiagram, bound: int = 2, budget: SearchBudget = DEFAULT_BUDGET) -> int | None:
    """Fewest crossing changes between the knotoid strand and the closing arcs of theta(k) reaching a trivial theta-curve.

    The theta-curve side of ``f_distance``: vertex slides bring strands onto
    the arcs, and only crossings on an arc may be changed.
    """
    tail, head = k.endpoints
    level = [theta_from_knotoid(k)]
    seen = {_key(level[0])}
    for dist in range(bound + 1):
        for s in level:
            if certify(s, budget).is_trivial:
                return dist
        if dist == bound:
            break
        nxt = []
        for s in level:
            for p in _slide_pool(s, (tail, head), depth=2):
                for x in _arc_crossings(p, tail):
                    t = apply_crossing_change(p, x)
                    key = _key(t)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(t)
        level = nxt
    return None
