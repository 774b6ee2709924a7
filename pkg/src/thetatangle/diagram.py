"""Combinatorial planar diagrams of knots, links, spatial graphs, tangles and knotoids.

A diagram is a set of nodes, each with an ordered tuple of half-edge slots
listed counterclockwise, plus a perfect matching on the slots:

* ``X`` crossing, 4 slots, starting at the incoming understrand (PD style):
  slots 0/2 carry the understrand, 1/3 the overstrand.
* ``V`` graph vertex, 3 slots.
* ``E`` endpoint, 1 slot (tangle boundary points and knotoid ends).

Crossingless closed components carry no nodes and are counted in ``loops``.
Marked tangles label four endpoints NW, NE, SW, SE.

Faces are orbits of ``(n, j) -> pair[(n, j + 1)]``: a corner ``(n, j)``
arrives at node ``n`` through slot ``j`` and leaves through ``j + 1``, so
each face lies on the right of the walk.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

HalfEdge = tuple[int, int]

DEGREE = {"X": 4, "V": 3, "E": 1, "W": 2}
MARKS = ("NW", "NE", "SW", "SE")


class DiagramError(ValueError):
    """Invalid diagram or inapplicable operation."""


@dataclass(frozen=True)
class SpatialGraphDiagram:
    kinds: dict = field(default_factory=dict)  # node id -> kind
    pairs: dict = field(default_factory=dict)  # half-edge -> half-edge (involution)
    marks: dict = field(default_factory=dict)  # mark -> endpoint id
    loops: int = 0
    label: str = ""

    # ------------------------------------------------------------ basic queries
    def deg(self, n: int) -> int:
        return DEGREE[self.kinds[n]]

    def nodes(self, kind: str | None = None) -> list[int]:
        return sorted(n for n, k in self.kinds.items() if kind is None or k == kind)

    @property
    def crossings(self) -> list[int]:
        return self.nodes("X")

    @property
    def vertices(self) -> list[int]:
        return self.nodes("V")

    @property
    def endpoints(self) -> list[int]:
        return self.nodes("E")

    def n_crossings(self) -> int:
        return sum(1 for k in self.kinds.values() if k == "X")

    def half_edges(self) -> list[HalfEdge]:
        return [(n, i) for n in sorted(self.kinds) for i in range(self.deg(n))]

    def partner(self, h: HalfEdge) -> HalfEdge:
        return self.pairs[h]

    def edges(self) -> list[tuple[HalfEdge, HalfEdge]]:
        return sorted((h, g) for h, g in self.pairs.items() if h < g or h == g)

    def next_id(self) -> int:
        return max(self.kinds, default=-1) + 1

    def is_closed(self) -> bool:
        return not self.endpoints

    def is_knot_diagram(self) -> bool:
        return all(k == "X" for k in self.kinds.values())

    def mark_of(self, endpoint: int) -> str | None:
        for m, e in self.marks.items():
            if e == endpoint:
                return m
        return None

    def replace(self, **kw) -> "SpatialGraphDiagram":
        data = dict(kinds=self.kinds, pairs=self.pairs, marks=self.marks, loops=self.loops, label=self.label)
        data.update(kw)
        return SpatialGraphDiagram(**data)

    # ------------------------------------------------------------ faces
    def corner_next(self, c: HalfEdge) -> HalfEdge:
        n, j = c
        return self.pairs[(n, (j + 1) % self.deg(n))]

    def faces(self) -> list[list[HalfEdge]]:
        seen: set[HalfEdge] = set()
        out = []
        for h in self.half_edges():
            if h in seen:
                continue
            face = []
            c = h
            while c not in seen:
                seen.add(c)
                face.append(c)
                c = self.corner_next(c)
            out.append(face)
        return out

    def face_index(self) -> dict[HalfEdge, int]:
        return {c: i for i, f in enumerate(self.faces()) for c in f}

    # ------------------------------------------------------------ components
    def components(self) -> list[list[int]]:
        adj: dict[int, set[int]] = {n: set() for n in self.kinds}
        for (a, _), (b, _) in self.pairs.items():
            adj[a].add(b)
        seen: set[int] = set()
        comps = []
        for n in sorted(self.kinds):
            if n in seen:
                continue
            comp, todo = [], [n]
            seen.add(n)
            while todo:
                m = todo.pop()
                comp.append(m)
                for k in adj[m]:
                    if k not in seen:
                        seen.add(k)
                        todo.append(k)
            comps.append(sorted(comp))
        return comps

    # ------------------------------------------------------------ validation
    def check(self) -> None:
        """Raise DiagramError describing the first violated invariant."""
        for n, k in self.kinds.items():
            if k not in ("X", "V", "E"):
                raise DiagramError(f"node {n} has unknown kind {k!r}")
        slots = set(self.half_edges())
        for h, g in self.pairs.items():
            if h not in slots or g not in slots:
                raise DiagramError(f"pairing {h}-{g} refers to a missing slot")
            if self.pairs.get(g) != h:
                raise DiagramError(f"pairing is not symmetric at {h}")
        for h in slots:
            if h not in self.pairs:
                raise DiagramError(f"half-edge {h} is unpaired")
        if self.loops < 0:
            raise DiagramError("negative loop count")
        for m, e in self.marks.items():
            if m not in MARKS:
                raise DiagramError(f"unknown mark {m}")
            if self.kinds.get(e) != "E":
                raise DiagramError(f"mark {m} is not on an endpoint")
        if len(set(self.marks.values())) != len(self.marks):
            raise DiagramError("two marks on one endpoint")
        fidx = self.face_index()
        for comp in self.components():
            cset = set(comp)
            nv = len(comp)
            ne = sum(1 for (a, _), _ in self.pairs.items() if a in cset) // 2
            nf = len({fidx[h] for h in fidx if h[0] in cset})
            if nv - ne + nf != 2:
                raise DiagramError(f"component {comp[:4]}... is not planar (V-E+F={nv - ne + nf})")
        if self.marks:
            self._check_marks(fidx)

    def _check_marks(self, fidx) -> None:
        if set(self.marks) != set(MARKS):
            raise DiagramError("a marked tangle needs all of NW, NE, SW, SE")
        faces = self.faces()
        cyc = ["NW", "SW", "SE", "NE"]
        for fi in {fidx[(self.marks[m], 0)] for m in MARKS}:
            order = [self.mark_of(n) for n, _ in faces[fi] if self.kinds[n] == "E" and self.mark_of(n)]
            # the boundary walked with the face on the right runs NW -> SW -> SE -> NE
            pos = [cyc.index(m) for m in order]
            k = pos.index(min(pos))
            pos = pos[k:] + pos[:k]
            if pos != sorted(pos):
                raise DiagramError(f"boundary marks in wrong cyclic order {order}")
        comp_of = {n: i for i, c in enumerate(self.components()) for n in c}
        for m in MARKS:
            e = self.marks[m]
            for m2 in MARKS:
                e2 = self.marks[m2]
                if comp_of[e] == comp_of[e2] and fidx[(e, 0)] != fidx[(e2, 0)]:
                    raise DiagramError("marked endpoints do not share the boundary face")

    def is_valid(self) -> bool:
        try:
            self.check()
        except DiagramError:
            return False
        return True

    # ------------------------------------------------------------ canonical form
    def _component_code(self, comp: list[int]) -> tuple:
        best = None
        for n0 in comp:
            for s0 in range(self.deg(n0)):
                code = self._code_from(n0, s0)
                if best is None or code < best:
                    best = code
        return best

    def _code_from(self, n0: int, s0: int) -> tuple:
        label = {n0: 0}
        offset = {n0: s0}
        order = [n0]
        i = 0
        out = []
        while i < len(order):
            n = order[i]
            i += 1
            k, dg, o = self.kinds[n], self.deg(n), offset[n]
            row = [k, (o % 2) if k == "X" else 0, self.mark_of(n) or ""]
            for t in range(dg):
                m, s = self.pairs[(n, (o + t) % dg)]
                if m not in label:
                    label[m] = len(order)
                    offset[m] = s
                    order.append(m)
                row.append((label[m], (s - offset[m]) % self.deg(m)))
            out.append(tuple(row))
        return tuple(out)

    def canonical(self) -> tuple:
        """Relabeling-invariant key (orientation-preserving planar isomorphism)."""
        codes = sorted(self._component_code(c) for c in self.components())
        return (self.loops, tuple(codes))

    def canonical_str(self) -> str:
        return repr(self.canonical())

    def relabeled(self) -> "SpatialGraphDiagram":
        """Copy with node ids 0..n-1 in a canonical traversal order."""
        order: list[int] = []
        for comp in sorted(self.components(), key=self._component_code):
            best = None
            for n0 in comp:
                for s0 in range(self.deg(n0)):
                    code = self._code_from(n0, s0)
                    if best is None or code < best[0]:
                        best = (code, n0, s0)
            _, n0, s0 = best
            seen = {n0: s0}
            q = [n0]
            i = 0
            while i < len(q):
                n = q[i]
                i += 1
                dg = self.deg(n)
                for t in range(dg):
                    m, s = self.pairs[(n, (seen[n] + t) % dg)]
                    if m not in seen:
                        seen[m] = s
                        q.append(m)
            rot = seen
            for n in q:
                order.append((n, rot[n]))
        new_id = {n: i for i, (n, _) in enumerate(order)}
        shift = {}
        for n, o in order:
            shift[n] = o - (o % 2) if self.kinds[n] == "X" else o
        def mp(h):
            n, s = h
            return (new_id[n], (s - shift[n]) % self.deg(n))
        pairs = {mp(h): mp(g) for h, g in self.pairs.items()}
        kinds = {new_id[n]: k for n, k in self.kinds.items()}
        marks = {m: new_id[e] for m, e in self.marks.items()}
        return self.replace(kinds=kinds, pairs=pairs, marks=marks)

    def __eq__(self, other):
        if not isinstance(other, SpatialGraphDiagram):
            return NotImplemented
        return (self.kinds, self.pairs, self.marks, self.loops) == (other.kinds, other.pairs, other.marks, other.loops)

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        k = {c: sum(1 for v in self.kinds.values() if v == c) for c in "XVE"}
        return f"<SpatialGraphDiagram {self.label!r} X={k['X']} V={k['V']} E={k['E']} loops={self.loops}>"


def validate(d: SpatialGraphDiagram) -> bool:
    return d.is_valid()


def isomorphic(d1: SpatialGraphDiagram, d2: SpatialGraphDiagram) -> bool:
    return d1.canonical() == d2.canonical()


# ---------------------------------------------------------------- editing

class Edit:
    """Mutable scratch copy used to rewire a diagram.

    Removed nodes may declare pass-through slot pairs; ``result`` then joins
    whatever reached the two sides, turning closed chains into free loops and
    dropping chains that dangle at both ends. ``open_around`` subdivides the
    edges at a set of nodes with temporary wires so that local rewiring never
    has to reason about edges that leave and re-enter the patch.
    """

    def __init__(self, d: SpatialGraphDiagram):
        self.kinds = dict(d.kinds)
        self.pairs = dict(d.pairs)
        self.marks = dict(d.marks)
        self.loops = d.loops
        self.label = d.label
        self.through: dict[HalfEdge, HalfEdge] = {}
        self.removed: set[int] = set()
        self._next = d.next_id()

    def deg(self, n):
        return DEGREE[self.kinds[n]]

    def new_node(self, kind: str) -> int:
        n = self._next
        self._next += 1
        self.kinds[n] = kind
        return n

    def unlink(self, h: HalfEdge) -> None:
        g = self.pairs.pop(h, None)
        if g is not None and self.pairs.get(g) == h:
            del self.pairs[g]

    def link(self, a: HalfEdge, b: HalfEdge) -> None:
        self.unlink(a)
        self.unlink(b)
        self.pairs[a] = b
        self.pairs[b] = a

    def remove(self, n: int, through: Iterable[tuple[int, int]] = ()) -> None:
        self.removed.add(n)
        for a, b in through:
            self.through[(n, a)] = (n, b)
            self.through[(n, b)] = (n, a)

    def join(self, a: HalfEdge, b: HalfEdge) -> None:
        """Declare removed half-edges ``a`` and ``b`` (possibly on different nodes) as connected."""
        self.through[a] = b
        self.through[b] = a

    def open_around(self, nodes: Iterable[int]) -> dict[HalfEdge, HalfEdge]:
        """Put a wire on every edge at ``nodes``; return slot -> adjacent wire half."""
        nodes = set(nodes)
        ext = {}
        done = set()
        for n in sorted(nodes):
            for i in range(self.deg(n)):
                h = (n, i)
                if h in done:
                    continue
                g = self.pairs[h]
                w = self.new_node("W")
                self.remove(w, [(0, 1)])
                self.link(h, (w, 0))
                self.link(g, (w, 1))
                ext[h] = (w, 0)
                done.add(h)
                if g[0] in nodes:
                    ext[g] = (w, 1)
                    done.add(g)
        return ext

    def _transit(self, h: HalfEdge) -> bool:
        return h[0] in self.removed

    def result(self) -> SpatialGraphDiagram:
        pairs = self.pairs
        live_pairs: dict[HalfEdge, HalfEdge] = {}
        visited: set[HalfEdge] = set()
        for h in sorted(pairs):
            if self._transit(h) or h in live_pairs:
                continue
            g = pairs[h]
            while self._transit(g):
                visited.add(g)
                t = self.through.get(g)
                if t is None:
                    raise DiagramError(f"strand from {h} ends inside a removed patch")
                visited.add(t)
                if t not in pairs:
                    raise DiagramError(f"strand from {h} dangles at {t}")
                g = pairs[t]
            live_pairs[h] = g
            live_pairs[g] = h
        loops = self.loops
        # chains of removed half-edges not reached from live ones
        for h in sorted(pairs):
            if not self._transit(h) or h in visited:
                continue
            # walk both directions; a cycle returns to h
            cur, closed = h, False
            chain = []
            while True:
                chain.append(cur)
                visited.add(cur)
                t = self.through.get(cur)
                if t is None:
                    break
                chain.append(t)
                visited.add(t)
                nxt = pairs.get(t)
                if nxt is None:
                    break
                if nxt == h:
                    closed = True
                    break
                if not self._transit(nxt):
                    raise DiagramError("inconsistent chain")
                if nxt in visited:
                    break
                cur = nxt
            if closed:
                loops += 1
            else:
                # mark the other direction as seen
                back = pairs.get(h)
                while back is not None and self._transit(back) and back not in visited:
                    visited.add(back)
                    t = self.through.get(back)
                    if t is None:
                        break
                    visited.add(t)
                    back = pairs.get(t)
        kinds = {n: k for n, k in self.kinds.items() if n not in self.removed}
        marks = {m: e for m, e in self.marks.items() if e in kinds}
        return SpatialGraphDiagram(kinds=kinds, pairs=live_pairs, marks=marks, loops=loops, label=self.label)


# ---------------------------------------------------------------- constructors

def from_pd(pd: Iterable[Iterable[int]], label: str = "") -> SpatialGraphDiagram:
    """Knot or link diagram from a PD code (each crossing lists edge labels ccw from incoming under)."""
    kinds, where = {}, {}
    for n, x in enumerate(pd):
        x = list(x)
        if len(x) != 4:
            raise DiagramError("PD crossings need four labels")
        kinds[n] = "X"
        for i, e in enumerate(x):
            where.setdefault(e, []).append((n, i))
    pairs = {}
    for e, hs in where.items():
        if len(hs) != 2:
            raise DiagramError(f"edge label {e} appears {len(hs)} times")
        a, b = hs
        pairs[a] = b
        pairs[b] = a
    return SpatialGraphDiagram(kinds=kinds, pairs=pairs, label=label)


def from_braid(word: Iterable[int], label: str = "") -> SpatialGraphDiagram:
    """Closure of a braid word; generator ``±i`` crosses strands i and i+1 (1-based)."""
    word = list(word)
    n_strands = max(abs(g) for g in word) + 1
    counter = iter(range(1, 10**9))
    start = [next(counter) for _ in range(n_strands)]
    cur = list(start)
    pd = []
    for g in word:
        i = abs(g) - 1
        a, b = cur[i], cur[i + 1]
        c, d = next(counter), next(counter)
        if g > 0:
            pd.append([b, d, c, a])
        else:
            pd.append([a, b, d, c])
        cur[i], cur[i + 1] = c, d
    rename = {cur[k]: start[k] for k in range(n_strands)}
    pd = [[rename.get(e, e) for e in x] for x in pd]
    return from_pd(pd, label=label)


def unknot(label: str = "unknot") -> SpatialGraphDiagram:
    return SpatialGraphDiagram(loops=1, label=label)


def trivial_theta(label: str = "theta0") -> SpatialGraphDiagram:
    pairs = {}
    for a, b in (((0, 0), (1, 0)), ((0, 1), (1, 2)), ((0, 2), (1, 1))):
        pairs[a] = b
        pairs[b] = a
    return SpatialGraphDiagram(kinds={0: "V", 1: "V"}, pairs=pairs, label=label)


def trivial_handcuff(label: str = "handcuff0") -> SpatialGraphDiagram:
    pairs = {}
    for a, b in (((0, 1), (0, 2)), ((0, 0), (1, 0)), ((1, 1), (1, 2))):
        pairs[a] = b
        pairs[b] = a
    return SpatialGraphDiagram(kinds={0: "V", 1: "V"}, pairs=pairs, label=label)


def disjoint_union(d1: SpatialGraphDiagram, d2: SpatialGraphDiagram) -> tuple[SpatialGraphDiagram, int]:
    """Union with d2's ids shifted; returns (diagram, shift). Marks are taken from d1 only."""
    off = d1.next_id()
    kinds = dict(d1.kinds)
    kinds.update({n + off: k for n, k in d2.kinds.items()})
    pairs = dict(d1.pairs)
    pairs.update({(a + off, i): (b + off, j) for (a, i), (b, j) in d2.pairs.items()})
    return SpatialGraphDiagram(kinds=kinds, pairs=pairs, marks=dict(d1.marks), loops=d1.loops + d2.loops,
                               label=d1.label), off


# ---------------------------------------------------------------- strand structure

def strand_next(d: SpatialGraphDiagram, h: HalfEdge) -> HalfEdge | None:
    """Slot through which a strand entering at ``h`` leaves its node, or None at a vertex/endpoint."""
    n, i = h
    if d.kinds[n] == "X":
        return (n, (i + 2) % 4)
    return None


def graph_edges(d: SpatialGraphDiagram) -> list[list[HalfEdge]]:
    """Maximal strands: each is the list of half-edges visited in order.

    Strands between vertices/endpoints start and end at their slots; closed
    components through crossings only start at their least half-edge.
    """
    seen: set[HalfEdge] = set()
    out = []
    starts = [(n, i) for n in d.nodes() if d.kinds[n] != "X" for i in range(d.deg(n))]
    for h in starts:
        if h in seen:
            continue
        path = [h]
        seen.add(h)
        g = d.pairs[h]
        while True:
            path.append(g)
            seen.add(g)
            nxt = strand_next(d, g)
            if nxt is None:
                break
            path.append(nxt)
            seen.add(nxt)
            g = d.pairs[nxt]
        out.append(path)
    for h in d.half_edges():
        if h in seen or d.kinds[h[0]] != "X":
            continue
        path = []
        g = h
        while g not in seen:
            path.append(g)
            seen.add(g)
            nxt = strand_next(d, g)
            path.append(nxt)
            seen.add(nxt)
            g = d.pairs[nxt]
        out.append(path)
    return out


def trace_endpoints(d: SpatialGraphDiagram) -> dict[str, str]:
    """For a marked tangle, map each mark to the mark at the other end of its strand."""
    out = {}
    for m, e in d.marks.items():
        g = d.pairs[(e, 0)]
        while d.kinds[g[0]] == "X":
            g = d.pairs[strand_next(d, g)]
        other = d.mark_of(g[0])
        out[m] = other
    return out


def closed_strand_count(d: SpatialGraphDiagram) -> int:
    """Closed components passing only through crossings (excluding free loops)."""
    return sum(1 for p in graph_edges(d) if d.kinds[p[0][0]] == "X")


def orientations(d: SpatialGraphDiagram) -> dict[HalfEdge, bool]:
    """Orient every strand along its traversal; map each crossing slot to True if the strand enters there."""
    inc = {}
    for path in graph_edges(d):
        if d.kinds[path[0][0]] == "X":
            # closed: path = [in, out, in, out, ...]
            for k in range(0, len(path), 2):
                inc[path[k]] = True
                inc[path[k + 1]] = False
        else:
            for k in range(1, len(path) - 1, 2):
                inc[path[k]] = True
                inc[path[k + 1]] = False
    return inc


def crossing_signs(d: SpatialGraphDiagram, inc: dict | None = None) -> dict[int, int]:
    """Sign of each crossing under the traversal orientation: +1 iff the overstrand enters at slot 3."""
    inc = orientations(d) if inc is None else inc
    signs = {}
    for x in d.crossings:
        under_in = inc[(x, 0)]
        over_in3 = inc[(x, 3)]
        s = 1 if over_in3 else -1
        signs[x] = s if under_in else -s
    return signs


def writhe(d: SpatialGraphDiagram) -> int:
    return sum(crossing_signs(d).values())
