"""Polynomial invariants: Kauffman bracket / Jones for links, Yamada for spatial graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .diagram import SpatialGraphDiagram, closed_strand_count, crossing_signs
from .laurent import A, ONE, ZERO, LaurentPoly, poly_equal_up_to_unit

DELTA = -(A**2) - A ** -2
SIGMA = -A - 2 - A ** -1
MAX_CROSSINGS = 24

# smoothings as slot pairings; A joins (0,1),(2,3), B joins (0,3),(1,2)
# (a positive kink then has bracket -A^3)
A_SMOOTH = ((0, 1), (2, 3))
B_SMOOTH = ((0, 3), (1, 2))


class InvariantError(ValueError):
    pass


def _crossing_order(d: SpatialGraphDiagram, nodes: list[int]) -> list[int]:
    """Order nodes so that each new one touches the processed part as much as possible."""
    todo = set(nodes)
    order = []
    while todo:
        start = min(todo)
        best = start
        if order:
            done = set(order)
            score = lambda n: (-sum(1 for i in range(d.deg(n)) if d.pairs[(n, i)][0] in done), n)
            best = min(todo, key=score)
        order.append(best)
        todo.remove(best)
    return order


def _check_budget(d: SpatialGraphDiagram, limit: int | None):
    limit = MAX_CROSSINGS if limit is None else limit
    if d.n_crossings() > limit:
        raise InvariantError(f"{d.n_crossings()} crossings exceed the evaluation budget of {limit}")


# ---------------------------------------------------------------- bracket

def kauffman_bracket(d: SpatialGraphDiagram, limit: int | None = None) -> LaurentPoly:
    """Bracket normalized so that a single crossingless circle has value 1."""
    if any(k != "X" for k in d.kinds.values()):
        raise InvariantError("bracket needs a diagram made of crossings only")
    _check_budget(d, limit)
    if not d.kinds and d.loops == 0:
        return ONE
    order = _crossing_order(d, d.crossings)
    # state: frozenset of open-end pairs -> polynomial
    states: dict[frozenset, LaurentPoly] = {frozenset(): ONE}
    done: set[int] = set()
    for x in order:
        new_states: dict[frozenset, LaurentPoly] = {}
        for smoothing, weight in ((A_SMOOTH, A), (B_SMOOTH, A ** -1)):
            for match, poly in states.items():
                m, loops = _splice(d, match, x, smoothing, done)
                val = poly * weight * DELTA**loops
                new_states[m] = new_states.get(m, ZERO) + val
        states = {m: p for m, p in new_states.items() if not p.is_zero()}
        done.add(x)
    total = states.get(frozenset(), ZERO) * DELTA**d.loops
    return total.exact_div(DELTA)


def _splice(d, match: frozenset, x: int, smoothing, done: set[int]):
    """Glue crossing ``x``'s smoothing onto the open-end matching; return (matching, closed loops)."""
    links = list(match) + [((x, i), (x, j)) for i, j in smoothing]
    for i in range(4):
        p = d.pairs[(x, i)]
        if p[0] in done or (p[0] == x and i < p[1]):
            links.append((p, (x, i)))
    inc: dict = {}
    for k, (a, b) in enumerate(links):
        inc.setdefault(a, []).append(k)
        inc.setdefault(b, []).append(k)
    ends = sorted(h for h in inc if d.pairs[h][0] not in done and d.pairs[h][0] != x)
    used = [False] * len(links)
    pairs = []
    for e in ends:
        if not inc[e] or used[inc[e][0]]:
            continue
        cur = e
        while True:
            ks = [k for k in inc[cur] if not used[k]]
            if not ks:
                break
            k = ks[0]
            used[k] = True
            a, b = links[k]
            cur = b if a == cur else a
        pairs.append((e, cur))
    loops = 0
    for k0 in range(len(links)):
        if used[k0]:
            continue
        loops += 1
        stack = [k0]
        while stack:
            k = stack.pop()
            if used[k]:
                continue
            used[k] = True
            for h in links[k]:
                stack.extend(inc[h])
    return frozenset(pairs), loops


def writhe_normalized_bracket(d: SpatialGraphDiagram, limit: int | None = None) -> LaurentPoly:
    """``(-A^3)^(-w) <D>``: the Jones polynomial in the variable A."""
    w = sum(crossing_signs(d).values())
    return kauffman_bracket(d, limit) * (-(A**3)) ** (-w)


def jones(d: SpatialGraphDiagram, limit: int | None = None) -> LaurentPoly:
    """Jones polynomial in ``t`` (substituting ``A = t^(-1/4)``) for knot diagrams.

    Links with an even number of components have half-integral exponents;
    for those use :func:`writhe_normalized_bracket`.
    """
    f = writhe_normalized_bracket(d, limit)
    try:
        return f.divide_exponents(-4)
    except ValueError:
        raise InvariantError("half-integral exponents: use writhe_normalized_bracket for this link") from None


def determinant(v_t: LaurentPoly) -> int:
    """|V(-1)|, summed exactly (negative powers of -1 are ±1)."""
    return abs(sum(c if e % 2 == 0 else -c for e, c in v_t.terms))


# ---------------------------------------------------------------- Yamada

Y = LaurentPoly.monomial(1)  # formal variable standing for sigma


def _graph_key(nv: int, edges: list[tuple[int, int]], circles: int):
    return (nv, tuple(sorted(tuple(sorted(e)) for e in edges)), circles)


def graph_polynomial(nv: int, edges: list[tuple[int, int]], circles: int = 0) -> LaurentPoly:
    """``h(G) = sum_F (-1)^mu(G-F) y^beta(G-F)`` as a polynomial in y.

    ``circles`` counts vertexless closed curves (each a vertex with a loop).
    """
    return _h(_graph_key(nv, edges, circles))


@lru_cache(maxsize=200_000)
def _h(key) -> LaurentPoly:
    nv, edges, circles = key
    factor = (-(Y + 1)) ** circles
    edges = list(edges)
    alive = set(range(nv))
    while True:
        loops = [e for e in edges if e[0] == e[1]]
        if loops:
            factor = factor * (Y + 1) ** len(loops)
            edges = [e for e in edges if e[0] != e[1]]
        deg = {v: 0 for v in alive}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        iso = [v for v in alive if deg[v] == 0]
        if iso:
            factor = factor * (-1) ** len(iso)
            alive -= set(iso)
        if any(deg[v] == 1 for v in alive):
            return ZERO
        twos = [v for v in sorted(alive) if deg[v] == 2]
        if twos:
            v = twos[0]
            inc = [e for e in edges if v in e]
            rest = [e for e in edges if v not in e]
            ends = [a if b == v else b for a, b in inc]
            edges = rest + [(ends[0], ends[1])]
            alive.discard(v)
            continue
        break
    if not edges:
        return factor
    # deletion-contraction on a whole parallel class
    relabel = {v: i for i, v in enumerate(sorted(alive))}
    edges = [(relabel[a], relabel[b]) for a, b in edges]
    n = len(relabel)
    u, v = max(edges, key=lambda e: (sum(1 for f in edges if set(f) == set(e)), e))
    k = sum(1 for f in edges if set(f) == {u, v})
    rest = [f for f in edges if set(f) != {u, v}]
    deleted = _h(_graph_key(n, rest, 0))
    merged = [tuple(u if w == v else w for w in f) for f in rest]
    contracted = _h(_graph_key(n - 1, _drop_vertex(merged, v), 0))
    geo = sum(((Y + 1) ** j for j in range(k)), ZERO)
    return factor * (contracted * geo + deleted)


def _drop_vertex(edges, v):
    # vertex v no longer carries edges; shift labels above it down by one
    out = []
    for a, b in edges:
        out.append((a - (a > v), b - (b > v)))
    return out


def _sigma_power_cache():
    cache = {0: ONE}

    def get(k):
        if k not in cache:
            cache[k] = get(k - 1) * SIGMA
        return cache[k]

    return get


_sigma_pow = _sigma_power_cache()


def _substitute_sigma(h: LaurentPoly) -> LaurentPoly:
    out = ZERO
    for e, c in h.terms:
        out = out + _sigma_pow(e) * c
    return out


def yamada_state_sum(d: SpatialGraphDiagram, limit: int | None = None) -> LaurentPoly:
    """Yamada polynomial by the plain sum over all 3^c crossing resolutions.

    Exponential in the crossing number; kept as an independent check on :func:`yamada`.
    """
    if d.endpoints:
        raise InvariantError("Yamada polynomial needs a closed diagram")
    _check_budget(d, limit)
    xs = d.crossings
    graph_nodes = d.vertices
    by_key: dict = {}
    for choice in itertools.product((0, 1, 2), repeat=len(xs)):
        a = choice.count(0)
        b = choice.count(1)
        key = _state_graph(d, xs, graph_nodes, choice)
        mono = LaurentPoly.monomial(a - b)
        by_key[key] = by_key.get(key, ZERO) + mono
    total = ZERO
    for key, coef in by_key.items():
        h = _h(key)
        if h.is_zero():
            continue
        total = total + coef * _substitute_sigma(h)
    return total


def yamada(d: SpatialGraphDiagram, limit: int | None = None) -> LaurentPoly:
    """Yamada polynomial ``R(D) = sum_S A^(a-b) h(G_S)`` with ``y = -A - 2 - A^-1``.

    Computed by a frontier sweep over the nodes. Writing
    ``h(G) = sum_F (-1)^k y^beta`` over kept edge sets, every finished
    cluster of vertices contributes -1, every kept edge closing a cycle
    contributes y, and a vertexless circle contributes -(y + 1); so the
    sweep only has to remember, for each open half-edge, where its strand
    came from.
    """
    if d.endpoints:
        raise InvariantError("Yamada polynomial needs a closed diagram")
    _check_budget(d, limit)
    order = _crossing_order(d, d.nodes())
    circle = -(SIGMA + 1)
    # state: tuple of (open half-edge, label) with labels ("V", cluster) or ("P", other open end)
    states: dict[tuple, LaurentPoly] = {(): ONE}
    done: set[int] = set()
    for n in order:
        options = [("V", ONE)] if d.kinds[n] == "V" else [(A_SMOOTH, A), (B_SMOOTH, A ** -1), ("V", ONE)]
        new_states: dict[tuple, LaurentPoly] = {}
        for state, poly in states.items():
            for option, weight in options:
                for key, w in _sweep_node(d, n, dict(state), option, done):
                    val = poly * weight * w
                    new_states[key] = new_states.get(key, ZERO) + val
        states = {k: v for k, v in new_states.items() if not v.is_zero()}
        done.add(n)
    total = states.get((), ZERO)
    return total * circle**d.loops


def _sweep_node(d, n, labels: dict, option, done: set[int]):
    """Absorb node ``n``; yield (new state key, weight) pairs."""
    slots = [(n, i) for i in range(d.deg(n))]
    links: list = []
    terminal: dict = {}
    clusters = {lab[1] for lab in labels.values() if lab[0] == "V"}
    fresh = max(clusters, default=-1) + 1
    for h, lab in labels.items():
        if lab[0] == "P" and h < lab[1]:
            links.append((h, lab[1]))
        elif lab[0] == "V":
            terminal[h] = lab[1]
    for h in slots:
        p = d.pairs[h]
        if p[0] in done or (p[0] == n and h < p):
            links.append((h, p))
    if option == "V":
        for h in slots:
            terminal[h] = fresh
    else:
        links.extend(((n, i), (n, j)) for i, j in option)
    is_open = {h for h in labels if d.pairs[h][0] != n}
    is_open |= {h for h in slots if d.pairs[h][0] not in done and d.pairs[h][0] != n}
    inc: dict = {}
    for k, (a, b) in enumerate(links):
        inc.setdefault(a, []).append(k)
        inc.setdefault(b, []).append(k)
    used = [False] * len(links)

    def walk(start):
        cur = start
        while True:
            ks = [k for k in inc.get(cur, []) if not used[k]]
            if not ks:
                return cur
            used[ks[0]] = True
            a, b = links[ks[0]]
            cur = b if a == cur else a

    new_labels: dict = {}
    completed: list[tuple[int, int]] = []
    done_ends: set = set()
    for h in sorted(set(terminal) | is_open):
        if h in done_ends:
            continue
        other = walk(h)
        done_ends.update((h, other))
        if other == h:
            # one node carrying both path ends
            if h in terminal and h in is_open:
                new_labels[h] = ("V", terminal[h])
            else:
                completed.append((terminal[h], terminal[h]))
            continue
        if h in terminal and other in terminal:
            completed.append((terminal[h], terminal[other]))
        elif h in terminal:
            new_labels[other] = ("V", terminal[h])
        elif other in terminal:
            new_labels[h] = ("V", terminal[other])
        else:
            new_labels[h] = ("P", other)
            new_labels[other] = ("P", h)
    circles = 0
    for k in range(len(links)):
        if not used[k]:
            circles += 1
            walk(links[k][0])
    base = (-(SIGMA + 1)) ** circles
    # branch over kept/deleted for completed edges
    results = [(new_labels, {}, base)]
    for c1, c2 in completed:
        nxt = []
        for labs, parent, w in results:
            nxt.append((labs, parent, w))  # deleted
            r1, r2 = _find(parent, c1), _find(parent, c2)
            if r1 == r2:
                nxt.append((labs, parent, w * SIGMA))
            else:
                merged = dict(parent)
                merged[r2] = r1
                nxt.append((labs, merged, w))
        results = nxt
    live_before = clusters | ({fresh} if option == "V" else set())
    for labs, parent, w in results:
        out = {}
        for h, lab in labs.items():
            out[h] = ("V", _find(parent, lab[1])) if lab[0] == "V" else lab
        roots = {_find(parent, c) for c in live_before}
        alive = {lab[1] for lab in out.values() if lab[0] == "V"}
        finished = len(roots - alive)
        yield _normalize(out), w * (-1) ** finished


def _find(parent, c):
    while c in parent:
        c = parent[c]
    return c


def _normalize(labels: dict) -> tuple:
    rename: dict = {}
    out = []
    for h in sorted(labels):
        lab = labels[h]
        if lab[0] == "V":
            if lab[1] not in rename:
                rename[lab[1]] = len(rename)
            out.append((h, ("V", rename[lab[1]])))
        else:
            out.append((h, lab))
    return tuple(out)


def _state_graph(d, xs, graph_nodes, choice):
    vid = {v: i for i, v in enumerate(graph_nodes)}
    internal = {}
    for x, c in zip(xs, choice):
        if c == 2:
            vid[x] = len(vid)
        else:
            for i, j in (A_SMOOTH if c == 0 else B_SMOOTH):
                internal[(x, i)] = (x, j)
                internal[(x, j)] = (x, i)
    seen = set()
    edges = []
    for v in vid:
        for i in range(d.deg(v)):
            h = (v, i)
            if h in seen:
                continue
            seen.add(h)
            g = d.pairs[h]
            while g[0] not in vid:
                seen.add(g)
                t = internal[g]
                seen.add(t)
                g = d.pairs[t]
            seen.add(g)
            edges.append((vid[v], vid[g[0]]))
    circles = d.loops
    for h in internal:
        if h in seen:
            continue
        circles += 1
        g = h
        while g not in seen:
            seen.add(g)
            t = internal[g]
            seen.add(t)
            g = d.pairs[t]
    return _graph_key(len(vid), edges, circles)


def abstract_yamada(nv: int, edges: list[tuple[int, int]], circles: int = 0) -> LaurentPoly:
    """Yamada value of a crossingless planar diagram of the given abstract graph."""
    return _substitute_sigma(graph_polynomial(nv, edges, circles))


# ---------------------------------------------------------------- knot table

@dataclass(frozen=True)
class KnotRecord:
    name: str
    jones: LaurentPoly  # in t
    determinant: int


def parse_table(text: str) -> list[KnotRecord]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, poly, det = (part.strip() for part in line.split(";"))
        terms = []
        for tok in poly.split():
            e, c = tok.strip("()").split(",")
            terms.append((int(e), int(c)))
        out.append(KnotRecord(name, LaurentPoly(terms), int(det)))
    return out


def format_table_line(rec: KnotRecord) -> str:
    poly = " ".join(f"({e},{c})" for e, c in rec.jones.terms)
    return f"{rec.name}; {poly}; {rec.determinant}"


@lru_cache(maxsize=None)
def knot_table() -> tuple[KnotRecord, ...]:
    text = resources.files("thetatangle").joinpath("data/knots.txt").read_text(encoding="utf-8")
    return tuple(parse_table(text))


def load_table(path) -> list[KnotRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())


def jones_matches(v1: LaurentPoly, v2: LaurentPoly) -> bool:
    """Equality up to a unit and up to mirroring (t -> 1/t)."""
    return poly_equal_up_to_unit(v1, v2) or poly_equal_up_to_unit(v1, v2.mirror())


def identify_knot(d: SpatialGraphDiagram, table=None, limit: int | None = None) -> KnotRecord | None:
    if closed_strand_count(d) + d.loops != 1:
        return None
    v = jones(d, limit)
    det = determinant(v)
    for rec in table or knot_table():
        if rec.determinant == det and jones_matches(v, rec.jones):
            return rec
    return None


UNKNOT_JONES = ONE
