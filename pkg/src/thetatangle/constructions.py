"""Diagram-level constructions: rational tangles, sums, closures, replacements, connected sums."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .diagram import (
    DiagramError,
    Edit,
    SpatialGraphDiagram,
    disjoint_union,
    graph_edges,
    trace_endpoints,
)
from .moves import apply_crossing_change
from .tangles import (
    INF,
    AlgebraicTangle,
    Closure,
    ConnectivityClass,
    Fraction,
    Leaf,
    Mirror,
    Rotate,
    Sum,
    as_tangle,
    cf_encode,
)

# A crossing whose arms NE, NW, SW, SE sit at slots 0..3 reads as the tangle [+1]
# (positive in the numerator closure); NW, SW, SE, NE at 0..3 reads as [-1].
POSITIVE_ARMS = {"NE": 0, "NW": 1, "SW": 2, "SE": 3}
NEGATIVE_ARMS = {"NW": 0, "SW": 1, "SE": 2, "NE": 3}


# ---------------------------------------------------------------- marked tangles

def _endpoints(marks: Sequence[str]):
    kinds = {i: "E" for i in range(len(marks))}
    return kinds, {m: i for i, m in enumerate(marks)}


def twist(n: int) -> SpatialGraphDiagram:
    """Integral tangle [n]: |n| crossings in a horizontal row."""
    kinds, marks = _endpoints(("NW", "SW", "NE", "SE"))
    pairs = {}

    def link(a, b):
        pairs[a] = b
        pairs[b] = a

    arms = POSITIVE_ARMS if n > 0 else NEGATIVE_ARMS
    west_top, west_bot = (marks["NW"], 0), (marks["SW"], 0)
    for k in range(abs(n)):
        x = 4 + k
        kinds[x] = "X"
        link(west_top, (x, arms["NW"]))
        link(west_bot, (x, arms["SW"]))
        west_top, west_bot = (x, arms["NE"]), (x, arms["SE"])
    link(west_top, (marks["NE"], 0))
    link(west_bot, (marks["SE"], 0))
    return SpatialGraphDiagram(kinds=kinds, pairs=pairs, marks=marks, label=f"[{n}]")


_ROTATE = {"NW": "NE", "NE": "SE", "SE": "SW", "SW": "NW"}


def rotate_diagram(d: SpatialGraphDiagram) -> SpatialGraphDiagram:
    """Quarter turn of a marked tangle (Conway number x -> -1/x)."""
    return d.replace(marks={_ROTATE[m]: e for m, e in d.marks.items()})


def mirror_diagram(d: SpatialGraphDiagram) -> SpatialGraphDiagram:
    """Switch every crossing (Conway number x -> -x)."""
    for x in d.crossings:
        d = apply_crossing_change(d, x)
    return d


def glue_tangle_sum(d1: SpatialGraphDiagram, d2: SpatialGraphDiagram) -> SpatialGraphDiagram:
    """Join d1's east endpoints to d2's west endpoints."""
    for d in (d1, d2):
        d.check()
        if set(d.marks) != {"NW", "NE", "SW", "SE"}:
            raise DiagramError("tangle sum needs marked tangles")
    u, off = disjoint_union(d1, d2)
    marks = {"NW": d1.marks["NW"], "SW": d1.marks["SW"], "NE": d2.marks["NE"] + off, "SE": d2.marks["SE"] + off}
    e = Edit(u.replace(marks=marks))
    for a, b in (("NE", "NW"), ("SE", "SW")):
        p, q = d1.marks[a], d2.marks[b] + off
        e.remove(p)
        e.remove(q)
        e.join((p, 0), (q, 0))
    out = e.result()
    return out.replace(label=f"{d1.label}+{d2.label}")


def build_rational_diagram(cf: Sequence[int]) -> SpatialGraphDiagram:
    """Diagram of [a0, ..., an]: start from [an], then rotate and add a_i twists."""
    cf = list(cf)
    if not cf:
        return twist(0).replace(label="[]")
    d = twist(cf[-1])
    for a in reversed(cf[:-1]):
        d = glue_tangle_sum(rotate_diagram(d), twist(a))
    return d.replace(label="[" + ",".join(map(str, cf)) + "]")


def rational_diagram(f: Fraction) -> SpatialGraphDiagram:
    return build_rational_diagram(cf_encode(f)).replace(label=str(f))


def tangle_diagram(t) -> SpatialGraphDiagram:
    """Diagram of an algebraic tangle expression."""
    t = as_tangle(t)
    if isinstance(t, Leaf):
        return rational_diagram(t.value)
    if isinstance(t, Mirror):
        return mirror_diagram(tangle_diagram(t.child))
    if isinstance(t, Rotate):
        return rotate_diagram(tangle_diagram(t.child))
    if isinstance(t, Sum):
        return glue_tangle_sum(tangle_diagram(t.left), tangle_diagram(t.right))
    raise TypeError(t)


def diagram_connectivity(d: SpatialGraphDiagram) -> ConnectivityClass:
    """Connectivity class read off by following the strands from the marked endpoints."""
    other = trace_endpoints(d)
    if other["NW"] == "NE":
        return ConnectivityClass.HORIZONTAL
    if other["NW"] == "SW":
        return ConnectivityClass.VERTICAL
    if other["NW"] == "SE":
        return ConnectivityClass.DIAGONAL
    raise DiagramError("marked strands do not pair the boundary points")


def close(kind: Closure | str, d: SpatialGraphDiagram) -> SpatialGraphDiagram:
    """Numerator (NW-NE, SW-SE) or denominator (NW-SW, NE-SE) closure."""
    kind = Closure(kind) if isinstance(kind, str) else kind
    d.check()
    pairs = (("NW", "NE"), ("SW", "SE")) if kind is Closure.NUMERATOR else (("NW", "SW"), ("NE", "SE"))
    e = Edit(d)
    for a, b in pairs:
        p, q = d.marks[a], d.marks[b]
        e.remove(p)
        e.remove(q)
        e.join((p, 0), (q, 0))
    out = e.result()
    return out.replace(marks={}, label=f"{kind.value}({d.label})")


# ---------------------------------------------------------------- rational tangle replacement

@dataclass(frozen=True)
class RtrSite:
    """Framed crossing arc.

    ``crossing`` sites use the short arc joining the two strands at a
    crossing. ``face`` sites use an arc across one face between the edges
    leaving darts ``t1`` and ``t2``. In the site's own marking the strands
    form the ∞-tangle, and framing ``k`` shifts a replacement r to r + k.
    """

    kind: str
    crossing: int | None = None
    darts: tuple | None = None
    framing: int = 0

    def describe(self) -> dict:
        out = {"kind": self.kind, "framing": self.framing}
        if self.kind == "crossing":
            out["crossing"] = self.crossing
        else:
            out["darts"] = [list(self.darts[0]), list(self.darts[1])]
        return out


def crossing_sites(d: SpatialGraphDiagram, framing: int = 0) -> list[RtrSite]:
    return [RtrSite("crossing", crossing=x, framing=framing) for x in d.crossings]


def local_value(site: RtrSite, r: Fraction) -> Fraction:
    """Conway number of the replacement in the marking used for splicing."""
    shifted = r.add_integer(site.framing) if not r.is_infinite else r
    if site.kind == "face":
        return shifted
    # crossing marking reads the crossing itself as +1; x -> x/(x+1) sends ∞ to 1 and -1/2 to -1
    return Fraction(shifted.p, shifted.p + shifted.q)


def _splice(e: Edit, tangle: SpatialGraphDiagram, outer: dict):
    """Place a marked tangle inside ``e`` with each mark joined to the given outer half-edge."""
    off = e._next
    for n, k in tangle.kinds.items():
        e.kinds[n + off] = k
    for (a, i), (b, j) in tangle.pairs.items():
        e.pairs[(a + off, i)] = (b + off, j)
    e._next = off + tangle.next_id()
    e.loops += tangle.loops
    for m, h in outer.items():
        p = tangle.marks[m] + off
        w = e.new_node("W")
        e.remove(w)
        e.link((w, 1), h)
        e.remove(p)
        e.join((p, 0), (w, 1))


def apply_rtr(d: SpatialGraphDiagram, site: RtrSite, replacement: Fraction) -> SpatialGraphDiagram:
    value = local_value(site, replacement)
    e = Edit(d)
    if site.kind == "crossing":
        x = site.crossing
        if d.kinds.get(x) != "X":
            raise DiagramError(f"site crossing {x} is not a crossing")
        ext = e.open_around({x})
        outer = {m: ext[(x, i)] for m, i in POSITIVE_ARMS.items()}
        for i in range(4):
            e.unlink((x, i))
        e.remove(x)
    elif site.kind == "face":
        t1, t2 = site.darts
        for t in (t1, t2):
            if t not in d.pairs:
                raise DiagramError(f"dart {t} is not a half-edge")
        h1, h2 = d.pairs[t1], d.pairs[t2]
        if {t1, h1} == {t2, h2}:
            raise DiagramError("site darts lie on the same edge")
        fidx = d.face_index()
        c1 = (t1[0], (t1[1] - 1) % d.deg(t1[0]))
        c2 = (t2[0], (t2[1] - 1) % d.deg(t2[0]))
        if fidx[c1] != fidx[c2]:
            raise DiagramError("site arc must cross a single face")
        outer = {"SW": t1, "NW": h1, "NE": t2, "SE": h2}
        e.unlink(t1)
        e.unlink(t2)
    else:
        raise DiagramError(f"unknown site kind {site.kind}")
    _splice(e, rational_diagram(value), outer)
    return e.result().replace(label=f"{d.label}~{replacement}")


def cut_at_site(d: SpatialGraphDiagram, site: RtrSite) -> SpatialGraphDiagram:
    """Marked tangle left by cutting the two edges of a face site.

    Marks follow the site's own framing, so the denominator closure glues the
    cuts back and returns ``d``.
    """
    if site.kind != "face":
        raise DiagramError("only face sites can be cut open")
    t1, t2 = site.darts
    h1, h2 = d.pairs[t1], d.pairs[t2]
    if {t1, h1} == {t2, h2}:
        raise DiagramError("site darts lie on the same edge")
    e = Edit(d)
    marks = {}
    for m, h in (("NW", t1), ("SW", h1), ("NE", h2), ("SE", t2)):
        n = e.new_node("E")
        e.link((n, 0), h)
        marks[m] = n
    e.marks = marks
    out = e.result()
    out.check()
    return out.replace(label=f"cut({d.label})")


# ---------------------------------------------------------------- connected sums

def connected_sum(order: int, d1: SpatialGraphDiagram, d2: SpatialGraphDiagram, site1, site2, twist_index: int = 0):
    """Order-2 sum along edges (sites are half-edges) or order-3 sum at trivalent vertices.

    Returns the diagram and the set of node ids that came from ``d2``.
    """
    u, off = disjoint_union(d1, d2)
    e = Edit(u)
    if order == 2:
        h1 = tuple(site1)
        h2 = (site2[0] + off, site2[1])
        for h, d in ((h1, d1), (tuple(site2), d2)):
            if h not in d.pairs:
                raise DiagramError(f"order-2 site {h} is not an edge")
        g1, g2 = u.pairs[h1], u.pairs[h2]
        e.link(h1, g2)
        e.link(g1, h2)
    elif order == 3:
        v1, v2 = site1, site2 + off
        if d1.kinds.get(site1) != "V" or d2.kinds.get(site2) != "V":
            raise DiagramError("order-3 sites must be trivalent vertices")
        e.remove(v1)
        e.remove(v2)
        for i in range(3):
            e.join((v1, i), (v2, (twist_index - i) % 3))
    else:
        raise DiagramError("connected sum order must be 2 or 3")
    out = e.result().replace(label=f"{d1.label}#{order}{d2.label}")
    return out, {n + off for n in d2.kinds if n + off in out.kinds}


def attach_edge(d: SpatialGraphDiagram, h1, h2) -> SpatialGraphDiagram:
    """Put trivalent vertices on the edges at half-edges ``h1`` and ``h2`` and join them by a new edge.

    The two edges must border a common face; the new edge runs across it.
    """
    for order in itertools.product(((0, 1), (1, 0)), repeat=2):
        e = Edit(d)
        vs = []
        for h, (a, b) in zip((h1, h2), order):
            g = d.pairs[h]
            v = e.new_node("V")
            e.link(h, (v, a))
            e.link(g, (v, b))
            vs.append(v)
        e.link((vs[0], 2), (vs[1], 2))
        out = e.result()
        if out.is_valid():
            return out
    raise DiagramError("edges do not share a face")


# ---------------------------------------------------------------- graph structure

def is_theta(d: SpatialGraphDiagram) -> bool:
    if sorted(set(d.kinds.values()) - {"X"}) != ["V"] or len(d.vertices) != 2 or d.loops:
        return False
    v0, v1 = d.vertices
    paths = [p for p in graph_edges(d) if d.kinds[p[0][0]] == "V"]
    return len(paths) == 3 and all({p[0][0], p[-1][0]} == {v0, v1} for p in paths)


def theta_edges(d: SpatialGraphDiagram) -> list[list]:
    if not is_theta(d):
        raise DiagramError("not a theta-curve diagram")
    return sorted((p for p in graph_edges(d) if d.kinds[p[0][0]] == "V"), key=lambda p: p[0])


def delete_edges(d: SpatialGraphDiagram, paths: list[list]) -> SpatialGraphDiagram:
    """Delete whole graph edges (strands between vertices), then smooth degree-2 vertices."""
    gone = {h for p in paths for h in p}
    e = Edit(d)
    for x in d.crossings:
        if any((x, i) in gone for i in range(4)):
            e.remove(x, [(0, 2), (1, 3)])
    for v in d.vertices:
        keep = [i for i in range(3) if (v, i) not in gone]
        if len(keep) == 2:
            e.remove(v, [tuple(keep)])
        elif len(keep) < 2:
            e.remove(v)
    return e.result()


def constituent_knots(theta: SpatialGraphDiagram) -> list[SpatialGraphDiagram]:
    """The three knots obtained by deleting one edge of a theta-curve; the i-th omits edge i."""
    edges = theta_edges(theta)
    out = []
    for i in range(3):
        k = delete_edges(theta, [edges[i]])
        out.append(k.replace(label=f"{theta.label}/e{i}"))
    return out


def edge_of_crossing(d: SpatialGraphDiagram, x: int) -> tuple[int, ...]:
    """Indices (in ``graph_edges`` order) of the strands passing through crossing ``x``."""
    out = []
    for k, p in enumerate(graph_edges(d)):
        if any(h[0] == x for h in p):
            out.append(k)
    return tuple(sorted(set(out)))


# ---------------------------------------------------------------- knotoids

def _dual_path(d: SpatialGraphDiagram, start_face: int, end_face: int) -> list:
    faces = d.faces()
    fidx = d.face_index()
    prev = {start_face: None}
    q = deque([start_face])
    while q:
        f = q.popleft()
        if f == end_face:
            break
        for n, j in faces[f]:
            u = (n, (j + 1) % d.deg(n))
            w = d.pairs[u]
            g = fidx[(w[0], (w[1] - 1) % d.deg(w[0]))]
            if g not in prev:
                prev[g] = (f, u)
                q.append(g)
    if end_face not in prev:
        raise DiagramError("endpoint faces are not connected")
    path = []
    f = end_face
    while prev[f] is not None:
        f0, u = prev[f]
        path.append(u)
        f = f0
    return path[::-1]


def theta_from_knotoid(k: SpatialGraphDiagram) -> SpatialGraphDiagram:
    """Join the two endpoints by an arc over everything and an arc under everything.

    The arcs follow a shortest path in the dual graph from the tail's face to
    the head's face. The tail is the endpoint with the smaller id.
    """
    ends = k.endpoints
    if len(ends) != 2:
        raise DiagramError(f"a knotoid needs exactly two endpoints, found {len(ends)}")
    if k.vertices:
        raise DiagramError("a knotoid diagram has crossings and endpoints only")
    tail, head = ends
    fidx = k.face_index()
    path = _dual_path(k, fidx[(tail, 0)], fidx[(head, 0)])
    e = Edit(k)
    # endpoints become trivalent vertices; slot 0 stays the leg
    e.kinds[tail] = "V"
    e.kinds[head] = "V"
    over_end, under_end = (tail, 1), (tail, 2)
    for u in path:
        w = e.pairs[u]
        cu, co = e.new_node("X"), e.new_node("X")
        e.link(u, (cu, 1))
        e.link((cu, 3), (co, 2))
        e.link((co, 0), w)
        e.link(under_end, (cu, 2))
        e.link(over_end, (co, 3))
        under_end, over_end = (cu, 0), (co, 1)
    e.link(over_end, (head, 2))
    e.link(under_end, (head, 1))
    out = e.result()
    return out.replace(label=f"theta({k.label})")


def knotoid_from_knot(d: SpatialGraphDiagram, h) -> SpatialGraphDiagram:
    """Cut a knot diagram open at the edge of half-edge ``h`` (a knot-type knotoid)."""
    g = d.pairs[h]
    e = Edit(d)
    a, b = e.new_node("E"), e.new_node("E")
    e.link(h, (a, 0))
    e.link(g, (b, 0))
    return e.result().replace(label=f"cut({d.label})")


def trivial_knotoid(label: str = "knotoid0") -> SpatialGraphDiagram:
    return SpatialGraphDiagram(kinds={0: "E", 1: "E"}, pairs={(0, 0): (1, 0), (1, 0): (0, 0)}, label=label)


def knotoid_closures(k: SpatialGraphDiagram) -> tuple[SpatialGraphDiagram, SpatialGraphDiagram]:
    """Knots from joining the endpoints by an arc over (resp. under) everything."""
    th = theta_from_knotoid(k)
    tail, head = k.endpoints
    paths = [p for p in graph_edges(th) if th.kinds[p[0][0]] == "V"]
    leg = [p for p in paths if (tail, 0) in (p[0], p[-1])]
    over = [p for p in paths if (tail, 1) in (p[0], p[-1])]
    under = [p for p in paths if (tail, 2) in (p[0], p[-1])]
    if not (leg and over and under):
        raise DiagramError("unexpected theta structure")
    return delete_edges(th, under), delete_edges(th, over)
