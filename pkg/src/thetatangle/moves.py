"""Local moves on diagrams: Reidemeister, vertex moves, forbidden moves, crossing changes.

Every move is read off the face structure. A corner ``(n, j)`` of a face
means the walk arrives at ``n`` through slot ``j`` and leaves through
``j + 1``, with the face on its right.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import DiagramError, Edit, SpatialGraphDiagram

REDUCING = ("R1remove", "R2remove", "LoopSlip", "ForbiddenOver", "ForbiddenUnder")
NEUTRAL = ("R3", "VertexSlide", "VertexTwist")


@dataclass(frozen=True, order=True)
class Move:
    kind: str
    data: tuple

    def __str__(self):
        return f"{self.kind}{self.data}"

    def describe(self) -> dict:
        def plain(x):
            return [plain(y) for y in x] if isinstance(x, tuple) else x

        return {"move": self.kind, "args": plain(self.data)}


def _X(d, n):
    return d.kinds.get(n) == "X"


# ---------------------------------------------------------------- crossing change

def apply_crossing_change(d: SpatialGraphDiagram, x: int) -> SpatialGraphDiagram:
    """Swap over and under at crossing ``x`` (relabel slot i as i - 1)."""
    if not _X(d, x):
        raise DiagramError(f"no crossing with id {x}")

    def mp(h):
        n, i = h
        return (n, (i - 1) % 4) if n == x else h

    pairs = {mp(h): mp(g) for h, g in d.pairs.items()}
    return d.replace(pairs=pairs)


# ---------------------------------------------------------------- R1

def _r1_remove(d, x, i):
    if not _X(d, x) or d.pairs[(x, i)] != (x, (i + 1) % 4):
        raise DiagramError("no kink at this slot")
    e = Edit(d)
    e.remove(x, [(i, (i + 2) % 4), ((i + 1) % 4, (i + 3) % 4)])
    return e.result()


def _r1_add(d, h, over, side):
    """Kink on the edge leaving half-edge ``h``; ``over`` says whether the strand from h enters over."""
    g = d.pairs[h]
    e = Edit(d)
    x = e.new_node("X")
    s = 1 if over else 0
    e.link(h, (x, s))
    if side > 0:
        e.link((x, (s + 2) % 4), (x, (s + 3) % 4))
        e.link((x, (s + 1) % 4), g)
    else:
        e.link((x, (s + 2) % 4), (x, (s + 1) % 4))
        e.link((x, (s + 3) % 4), g)
    return e.result()


# ---------------------------------------------------------------- R2

def _r2_remove(d, x, i, y, j):
    if not (_X(d, x) and _X(d, y)) or x == y:
        raise DiagramError("R2 needs two distinct crossings")
    if d.pairs[(x, (i + 1) % 4)] != (y, j) or d.pairs[(y, (j + 1) % 4)] != (x, i):
        raise DiagramError("not a bigon")
    if (i + 1) % 2 != j % 2:
        raise DiagramError("bigon strands alternate; no R2")
    e = Edit(d)
    e.remove(x, [(i, (i + 2) % 4), ((i + 1) % 4, (i + 3) % 4)])
    e.remove(y, [(j, (j + 2) % 4), ((j + 1) % 4, (j + 3) % 4)])
    return e.result()


def _r2_add(d, t1, t2, over):
    """Push the edge leaving ``t1`` across the edge leaving ``t2`` (both on one face)."""
    h1, h2 = d.pairs[t1], d.pairs[t2]
    if {t1, h1} == {t2, h2}:
        raise DiagramError("R2 needs two distinct edges")
    e = Edit(d)
    P, Q = e.new_node("X"), e.new_node("X")
    if over:
        links = [(t1, (P, 1)), ((P, 3), (Q, 3)), ((Q, 1), h1), (t2, (Q, 0)), ((Q, 2), (P, 0)), ((P, 2), h2)]
    else:
        links = [(t1, (P, 0)), ((P, 2), (Q, 0)), ((Q, 2), h1), (t2, (Q, 1)), ((Q, 3), (P, 3)), ((P, 1), h2)]
    for a, b in links:
        e.link(a, b)
    return e.result()


# ---------------------------------------------------------------- R3

def _triangle(d, corners):
    (P, a), (Q, b), (R, c) = corners
    if len({P, Q, R}) != 3 or not all(_X(d, n) for n in (P, Q, R)):
        raise DiagramError("R3 needs a triangle of three crossings")
    sides = [((P, (a + 1) % 4), (Q, b)), ((Q, (b + 1) % 4), (R, c)), ((R, (c + 1) % 4), (P, a))]
    for u, w in sides:
        if d.pairs[u] != w:
            raise DiagramError("corners do not bound a face")
    return sides


def _r3(d, corners):
    sides = _triangle(d, corners)
    if not any(u[1] % 2 == w[1] % 2 for u, w in sides):
        raise DiagramError("alternating triangle; no R3")
    e = Edit(d)
    ext = e.open_around({n for n, _ in corners})
    new = []
    for (P, s), (Q, t) in sides:
        ps2, qt2 = (P, (s + 2) % 4), (Q, (t + 2) % 4)
        new.append(((P, s), ext[qt2]))
        new.append(((Q, t), ext[ps2]))
        new.append((ps2, qt2))
    for a, b in new:
        e.unlink(a)
        e.unlink(b)
    for a, b in new:
        e.link(a, b)
    return e.result()


# ---------------------------------------------------------------- vertex moves

def _twist_remove(d, v, j, x, k):
    if d.kinds.get(v) != "V" or not _X(d, x):
        raise DiagramError("vertex twist needs a vertex and a crossing")
    if d.pairs[(v, (j + 1) % 3)] != (x, k) or d.pairs[(x, (k + 1) % 4)] != (v, j):
        raise DiagramError("not a vertex bigon")
    e = Edit(d)
    e.remove(x, [((k + 1) % 4, (k + 2) % 4), (k, (k + 3) % 4)])
    return e.result()


def _twist_add(d, v, j, over):
    if d.kinds.get(v) != "V":
        raise DiagramError("vertex twist needs a vertex")
    e = Edit(d)
    ext = e.open_around({v})
    x = e.new_node("X")
    k = 1 if over else 0
    hj, hj1 = (v, j), (v, (j + 1) % 3)
    ej, ej1 = ext[hj], ext[hj1]
    e.unlink(hj)
    e.unlink(hj1)
    e.link(hj, (x, (k + 1) % 4))
    e.link(hj1, (x, k))
    e.link((x, (k + 2) % 4), ej)
    e.link((x, (k + 3) % 4), ej1)
    return e.result()


def _slide_remove(d, v, s, y, b, x, a):
    """Pull a strand crossing two edges at ``v`` across the vertex onto its third edge."""
    if d.kinds.get(v) != "V" or not (_X(d, x) and _X(d, y)) or x == y:
        raise DiagramError("vertex slide needs a vertex and two crossings")
    if (d.pairs[(v, (s + 1) % 3)] != (y, b) or d.pairs[(y, (b + 1) % 4)] != (x, a)
            or d.pairs[(x, (a + 1) % 4)] != (v, s)):
        raise DiagramError("not a vertex triangle")
    if (b + 1) % 2 != a % 2:
        raise DiagramError("strand changes level; no slide")
    over = a % 2 == 1
    e = Edit(d)
    ext = e.open_around({v, x, y})
    vs, vs1, vs2 = (v, s), (v, (s + 1) % 3), (v, (s + 2) % 3)
    west, east = ext[(y, (b + 3) % 4)], ext[(x, (a + 2) % 4)]
    out_s, out_s1, out_s2 = ext[(x, (a + 3) % 4)], ext[(y, (b + 2) % 4)], ext[vs2]
    e.remove(x)
    e.remove(y)
    for h in (vs, vs1, vs2):
        e.unlink(h)
    w = e.new_node("X")
    if over:
        slots = {0: vs2, 1: west, 2: out_s2, 3: east}
    else:
        slots = {0: west, 1: out_s2, 2: east, 3: vs2}
    for i, h in slots.items():
        e.link((w, i), h)
    e.link(vs, out_s)
    e.link(vs1, out_s1)
    return e.result()


def _slide_add(d, v, s, w, c):
    """Inverse slide: a strand crossing edge ``s + 2`` of ``v`` right at ``w`` moves over to edges s, s+1."""
    if d.kinds.get(v) != "V" or not _X(d, w):
        raise DiagramError("vertex slide needs a vertex and a crossing")
    vs2 = (v, (s + 2) % 3)
    if d.pairs[vs2] != (w, c):
        raise DiagramError("crossing not adjacent to the vertex")
    over = c % 2 == 0
    e = Edit(d)
    ext = e.open_around({v, w})
    vs, vs1 = (v, s), (v, (s + 1) % 3)
    west, east = ext[(w, (c + 1) % 4)], ext[(w, (c + 3) % 4)]
    out_s, out_s1 = ext[vs], ext[vs1]
    e.remove(w, [(c, (c + 2) % 4)])
    e.unlink(vs)
    e.unlink(vs1)
    x, y = e.new_node("X"), e.new_node("X")
    a = 1 if over else 0
    b = (a - 1) % 4
    links = [((y, b), vs1), ((y, (b + 2) % 4), out_s1), ((y, (b + 1) % 4), (x, a)),
             ((y, (b + 3) % 4), west), ((x, (a + 1) % 4), vs), ((x, (a + 3) % 4), out_s),
             ((x, (a + 2) % 4), east)]
    for p, q in links:
        e.link(p, q)
    return e.result()


def _loop_slip(d, v, j):
    """Vertex with an empty loop on slots j, j+1: pull its third edge back through the next crossing.

    Same as sliding the crossing strand over the vertex onto the loop, then
    removing the resulting bigon.
    """
    if d.kinds.get(v) != "V" or d.pairs[(v, (j + 1) % 3)] != (v, j):
        raise DiagramError("no empty loop at this vertex")
    w, c = d.pairs[(v, (j + 2) % 3)]
    if not _X(d, w):
        raise DiagramError("stem does not meet a crossing")
    e = Edit(d)
    e.remove(w, [(0, 2), (1, 3)])
    return e.result()


# ---------------------------------------------------------------- forbidden moves

def forbidden_site(d: SpatialGraphDiagram, endpoint: int) -> tuple[int, int] | None:
    """(crossing, slot) where the endpoint's leg first meets a strand, if it does so directly."""
    if d.kinds.get(endpoint) != "E":
        raise DiagramError(f"no endpoint with id {endpoint}")
    x, k = d.pairs[(endpoint, 0)]
    if not _X(d, x):
        return None
    return x, k


def apply_forbidden_move(d: SpatialGraphDiagram, site: str, endpoint: int) -> SpatialGraphDiagram:
    """Pull the endpoint's leg back across the strand it meets first.

    ``site`` is "Over" when that strand passes over the leg and "Under"
    otherwise; the request fails if it does not match the diagram.
    """
    found = forbidden_site(d, endpoint)
    if found is None:
        raise DiagramError("endpoint leg meets no crossing")
    x, k = found
    if d.pairs[(x, (k + 2) % 4)] == (endpoint, 0):
        raise DiagramError("leg loops back to its own endpoint")
    actual = "Over" if k % 2 == 0 else "Under"
    if site != actual:
        raise DiagramError(f"strand passes {actual.lower()} the leg, not {site.lower()}")
    e = Edit(d)
    e.remove(x, [(k, (k + 2) % 4), ((k + 1) % 4, (k + 3) % 4)])
    return e.result()


# ---------------------------------------------------------------- enumeration

def apply_move(d: SpatialGraphDiagram, m: Move) -> SpatialGraphDiagram:
    k, a = m.kind, m.data
    if k == "R1remove":
        return _r1_remove(d, *a)
    if k == "R1add":
        return _r1_add(d, *a)
    if k == "R2remove":
        return _r2_remove(d, *a)
    if k == "R2add":
        return _r2_add(d, *a)
    if k == "R3":
        return _r3(d, a)
    if k == "VertexTwist":
        return _twist_remove(d, *a) if len(a) == 4 else _twist_add(d, *a)
    if k == "VertexSlide":
        return _slide_remove(d, *a) if len(a) == 6 else _slide_add(d, *a)
    if k == "LoopSlip":
        return _loop_slip(d, *a)
    if k in ("ForbiddenOver", "ForbiddenUnder"):
        return apply_forbidden_move(d, k[len("Forbidden"):], a[0])
    if k == "CrossingChange":
        return apply_crossing_change(d, a[0])
    raise DiagramError(f"unknown move {k}")


def _tangle_face(d, face):
    return any(d.kinds[n] == "E" and d.mark_of(n) for n, _ in face)


def enumerate_moves(d: SpatialGraphDiagram, grow: bool = False, forbidden: bool = False) -> list[Move]:
    """Applicable moves, sorted. Growth moves (R1add, R2add, additive vertex moves) only when ``grow``."""
    out: list[Move] = []
    for x in d.crossings:
        for i in range(4):
            if d.pairs[(x, i)] == (x, (i + 1) % 4):
                out.append(Move("R1remove", (x, i)))
    for v in d.vertices:
        for j in range(3):
            if d.pairs[(v, (j + 1) % 3)] == (v, j) and _X(d, d.pairs[(v, (j + 2) % 3)][0]):
                out.append(Move("LoopSlip", (v, j)))
    faces = d.faces()
    for face in faces:
        if _tangle_face(d, face):
            continue
        if len(face) == 2:
            (n1, j1), (n2, j2) = face
            for (x, i), (y, j) in (((n1, j1), (n2, j2)), ((n2, j2), (n1, j1))):
                if _X(d, x) and _X(d, y) and x != y and (i + 1) % 2 == j % 2:
                    if (x, i) < (y, j):
                        out.append(Move("R2remove", (x, i, y, j)))
                if d.kinds[x] == "V" and _X(d, y):
                    out.append(Move("VertexTwist", (x, i, y, j)))
        if len(face) == 3:
            for r in range(3):
                cs = face[r:] + face[:r]
                (n0, _), (n1, _), (n2, _) = cs
                if d.kinds[n0] == "V" and _X(d, n1) and _X(d, n2) and n1 != n2:
                    (v, s), (y, b), (x, a) = cs
                    if (b + 1) % 2 == a % 2:
                        out.append(Move("VertexSlide", (v, s, y, b, x, a)))
            if all(_X(d, n) for n, _ in face) and len({n for n, _ in face}) == 3:
                try:
                    sides = _triangle(d, face)
                except DiagramError:
                    sides = None
                if sides and any(u[1] % 2 == w[1] % 2 for u, w in sides):
                    out.append(Move("R3", tuple(min(face[r:] + face[:r] for r in range(3)))))
    if forbidden:
        for n in d.endpoints:
            site = forbidden_site(d, n)
            if site is not None and d.pairs[(site[0], (site[1] + 2) % 4)] != (n, 0):
                kind = "ForbiddenOver" if site[1] % 2 == 0 else "ForbiddenUnder"
                out.append(Move(kind, (n,)))
    if grow:
        out.extend(growth_moves(d, faces))
    return sorted(set(out))


def growth_moves(d: SpatialGraphDiagram, faces=None) -> list[Move]:
    out = []
    for h in d.half_edges():
        if h < d.pairs[h] or h == d.pairs[h]:
            for over in (False, True):
                for side in (-1, 1):
                    out.append(Move("R1add", (h, over, side)))
    for face in faces if faces is not None else d.faces():
        if _tangle_face(d, face):
            continue
        darts = [(n, (j + 1) % d.deg(n)) for n, j in face]
        for p in range(len(darts)):
            for q in range(len(darts)):
                t1, t2 = darts[p], darts[q]
                if p == q or {t1, d.pairs[t1]} == {t2, d.pairs[t2]}:
                    continue
                for over in (False, True):
                    out.append(Move("R2add", (t1, t2, over)))
    for v in d.vertices:
        for j in range(3):
            for over in (False, True):
                out.append(Move("VertexTwist", (v, j, over)))
            w, c = d.pairs[(v, (j + 2) % 3)]
            if _X(d, w):
                out.append(Move("VertexSlide", (v, j, w, c)))
    return out


def inverse_candidates(before: SpatialGraphDiagram, after: SpatialGraphDiagram) -> list[Move]:
    """Moves on ``after`` that restore ``before`` up to relabeling."""
    key = before.canonical()
    out = []
    for m in enumerate_moves(after, grow=True):
        try:
            if apply_move(after, m).canonical() == key:
                out.append(m)
        except DiagramError:
            continue
    return out
