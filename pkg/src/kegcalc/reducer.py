"""Reduction of knot Eulerian graphs and their equivalence judgment.

Reduction removes empty vertices, unwinds capped twist regions (a loop on
one end of a vertex) and concatenates twist regions that face each other
across a bigon.  The result is keyed by a canonical string that is invariant
under renaming vertices, turning any vertex half way round, and reversing
the strand.
"""

from __future__ import annotations

import random
from typing import Optional

from .keg import Edge, End, KnotEulerianGraph, Vertex, faces

HALF_TURN = {("A", 1): ("B", 2), ("B", 2): ("A", 1), ("B", 1): ("A", 2), ("A", 2): ("B", 1)}
MIRROR = {("A", 1): ("B", 1), ("B", 1): ("A", 1), ("A", 2): ("B", 2), ("B", 2): ("A", 2)}


def _map_ends(g: KnotEulerianGraph, fn) -> tuple[Edge, ...]:
    return tuple(Edge(fn(e.tail), fn(e.head)) for e in g.edges)


def half_turn(g: KnotEulerianGraph, vid: str) -> KnotEulerianGraph:
    def fn(end: End) -> End:
        return (vid, HALF_TURN[end[1]]) if end[0] == vid else end
    return g.replace(g.vertices, _map_ends(g, fn))


def mirror(g: KnotEulerianGraph) -> KnotEulerianGraph:
    def fn(end: End) -> End:
        return (end[0], MIRROR.get(end[1], end[1]))
    return g.replace(g.vertices, _map_ends(g, fn))


# --- Step 1 ---------------------------------------------------------------


def remove_empty(g: KnotEulerianGraph) -> KnotEulerianGraph:
    while True:
        empty = next((v for v in g.vertices if not v.real), None)
        if empty is None:
            return g
        g = _splice_out(g, empty.id)


def _splice_out(g: KnotEulerianGraph, vid: str) -> KnotEulerianGraph:
    into = next(e for e in g.edges if e.head[0] == vid)
    out = next(e for e in g.edges if e.tail[0] == vid)
    rest = [e for e in g.edges if e is not into and e is not out]
    vertices = [v for v in g.vertices if v.id != vid]
    if into is out:
        # a bare circle through this marker
        return g.replace(vertices, rest)
    return g.replace(vertices, rest + [Edge(into.tail, out.head)])


# --- Step 2 ---------------------------------------------------------------


def ri_minus_sites(g: KnotEulerianGraph) -> list[tuple[str, int]]:
    """(vertex, end) pairs where a loop caps that end of a real vertex."""
    sites = []
    for e in g.edges:
        (u, s), (w, t) = e.tail, e.head
        if u == w and g.vertex(u).real and s[1] == t[1] and s[0] != t[0]:
            sites.append((u, s[1]))
    return sorted(sites)


def apply_ri_minus(g: KnotEulerianGraph, site: tuple[str, int]) -> KnotEulerianGraph:
    u, p = site
    q = 3 - p
    cap = {(u, ("A", p)), (u, ("B", p))}
    keep = [e for e in g.edges if {e.tail, e.head} != cap]
    into = next(e for e in keep if e.head[0] == u and e.head[1][1] == q)
    out = next(e for e in keep if e.tail[0] == u and e.tail[1][1] == q)
    rest = [e for e in keep if e is not into and e is not out]
    vertices = [v for v in g.vertices if v.id != u]
    if into is out:
        return g.replace(vertices, rest)
    return g.replace(vertices, rest + [Edge(into.tail, out.head)])


def ri_minus_step(g: KnotEulerianGraph, rng: Optional[random.Random] = None
                  ) -> Optional[KnotEulerianGraph]:
    sites = ri_minus_sites(g)
    if not sites:
        return None
    return apply_ri_minus(g, rng.choice(sites) if rng else sites[0])


# --- Step 3 ---------------------------------------------------------------


def unify_sites(g: KnotEulerianGraph) -> list[tuple[tuple[str, int], tuple[str, int]]]:
    """Bigons between an end of one real vertex and an end of another."""
    sites = []
    if not g.edges:
        return sites
    for f in faces(g):
        if len(f) != 2:
            continue
        c1, c2 = f.corners
        if c1.vertex == c2.vertex or c1.kind != "end" or c2.kind != "end":
            continue
        a = (c1.vertex, c1.first[1])
        b = (c2.vertex, c2.first[1])
        sites.append(tuple(sorted((a, b))))
    return sorted(set(sites))


def apply_unify(g: KnotEulerianGraph, site) -> KnotEulerianGraph:
    (u, p), (v, q) = site
    if p == 1:
        g = half_turn(g, u)
    if q == 2:
        g = half_turn(g, v)
    joints = {((u, (s, 2)), (v, (s, 1))) for s in "AB"}
    bigon = [e for e in g.edges
             if (e.tail, e.head) in joints or (e.head, e.tail) in joints]
    if len(bigon) != 2:
        raise AssertionError(f"no straight bigon between {u} and {v}")
    vu, vv = g.vertex(u), g.vertex(v)
    keep_id = min(u, v)
    odd = (vu.parity == "odd") != (vv.parity == "odd")
    crossings = None
    if vu.crossings is not None and vv.crossings is not None:
        crossings = vu.crossings + vv.crossings
    merged = Vertex(keep_id, True, "odd" if odd else "even", crossings)

    def fn(end: End) -> End:
        vid, slot = end
        if vid == u:
            return (keep_id, slot)
        if vid == v:
            return (keep_id, slot)
        return end

    edges = [Edge(fn(e.tail), fn(e.head)) for e in g.edges if e not in bigon]
    vertices = [w for w in g.vertices if w.id not in (u, v)] + [merged]
    return g.replace(vertices, edges)


def unify_step(g: KnotEulerianGraph, rng: Optional[random.Random] = None
               ) -> Optional[KnotEulerianGraph]:
    sites = unify_sites(g)
    if not sites:
        return None
    return apply_unify(g, rng.choice(sites) if rng else sites[0])


# --- reduce ---------------------------------------------------------------


def reduce(g: KnotEulerianGraph, rng: Optional[random.Random] = None) -> KnotEulerianGraph:
    """Fixpoint of Steps 1-3.  With ``rng`` the applicable step is drawn at random."""
    g = remove_empty(g)
    while True:
        moves = [("ri", s) for s in ri_minus_sites(g)] + [("un", s) for s in unify_sites(g)]
        if not moves:
            return g
        kind, site = rng.choice(moves) if rng else moves[0]
        g = apply_ri_minus(g, site) if kind == "ri" else apply_unify(g, site)


# --- canonical keys -------------------------------------------------------


def _traversal_key(g: KnotEulerianGraph, start: int) -> tuple:
    tails = {e.tail: e for e in g.edges}
    label: dict[str, int] = {}
    turned: dict[str, bool] = {}
    tokens = []

    def token(end: End) -> tuple:
        vid, slot = end
        if vid not in label:
            label[vid] = len(label)
            turned[vid] = slot[1] == 2
        if turned[vid]:
            slot = HALF_TURN[slot]
        return (label[vid], 0 if slot[0] == "A" else 1, slot[1])

    e = g.edges[start]
    for _ in range(len(g.edges)):
        tokens.append(token(e.tail) + token(e.head))
        vid, slot = e.head
        e = tails[(vid, g.vertex(vid).pair(slot))]
    parities = [None] * len(label)
    for vid, k in label.items():
        parities[k] = 1 if g.vertex(vid).parity == "odd" else 0
    return (len(label), tuple(parities), tuple(tokens))


def canonical_sort_key(g: KnotEulerianGraph, with_mirror: bool = False) -> tuple:
    """Orderable canonical form of an already reduced graph."""
    if not g.edges:
        return (0, (), ())
    variants = [g, g.reversed()]
    if with_mirror:
        variants += [mirror(x) for x in variants]
    return min(_traversal_key(x, i) for x in variants for i in range(len(x.edges)))


def canonical_key(g: KnotEulerianGraph, with_mirror: bool = False) -> str:
    n, parities, tokens = canonical_sort_key(reduce(g), with_mirror)
    par = "".join("o" if p else "e" for p in parities)
    body = " ".join("".join(f"{a}{'AB'[b]}{c}" for a, b, c in (t[:3], t[3:]))
                    for t in tokens)
    return f"{n}|{par}|{body}"


def equivalent(g1: KnotEulerianGraph, g2: KnotEulerianGraph, with_mirror: bool = False) -> bool:
    return canonical_key(g1, with_mirror) == canonical_key(g2, with_mirror)
