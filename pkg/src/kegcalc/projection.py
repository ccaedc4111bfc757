"""Knot projections and their passage to and from knot Eulerian graphs."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from . import diagram as dg
from .codec import GaussEntry, ParseError, emit_gauss_entries, parse_gauss_entries
from .keg import Edge, KnotEulerianGraph, Vertex, is_valid, validate

MAX_REALIZE_CROSSINGS = 16


class NonRealizable(ParseError):
    pass


class NotAlternating(ValueError):
    pass


@dataclass(frozen=True)
class Projection:
    """A one-component curve on the sphere with an orientation.

    ``nbr`` is the neighbour table of :mod:`kegcalc.diagram`; the strand is
    read starting with the arrival at leg 0 of crossing 0.  Over/under data is
    implied: a projection carries the alternating diagram on it.
    """

    nbr: dg.Nbr = ()

    @property
    def crossings(self) -> int:
        return dg.crossing_count(self.nbr)

    @property
    def start(self) -> int:
        return self.nbr[0] if self.nbr else 0

    @cached_property
    def signed(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return dg.signed_code(self.nbr, self.start)

    @property
    def code(self) -> tuple[int, ...]:
        return self.signed[0]

    @cached_property
    def canonical(self) -> tuple:
        return dg.canonical_form(self.nbr)

    def faces(self) -> list[list[int]]:
        return dg.faces(self.nbr)

    def components(self) -> int:
        return dg.component_count(self.nbr)

    def is_r1_trivial(self) -> bool:
        return not r1_reduce(self.nbr)[0]

    def __str__(self) -> str:
        return emit_gauss(self)


def from_code(code, signs) -> Projection:
    """Projection from a Gauss word and the flat sign of every label."""
    nbr = dg.from_signed_code(list(code), dict(signs))
    if nbr and not dg.is_spherical(nbr):
        raise NonRealizable("signed code does not embed in the sphere")
    return Projection(nbr)


def _even_interlacing(code: list[int]) -> bool:
    pos: dict[int, list[int]] = {}
    for i, lab in enumerate(code):
        pos.setdefault(lab, []).append(i)
    return all((b - a) % 2 == 1 for a, b in pos.values())


def realize(code: list[int]) -> Optional[dict[int, int]]:
    """Flat signs embedding the Gauss word in the sphere, or None.

    Exhaustive over sign assignments with the first label's sign fixed (the
    other choice is the mirror image).  The first embedding found in
    lexicographic order is returned.
    """
    labels = list(dict.fromkeys(code))
    if not labels:
        return {}
    if len(labels) > MAX_REALIZE_CROSSINGS:
        raise ValueError(f"realizability search is capped at {MAX_REALIZE_CROSSINGS} crossings")
    if not _even_interlacing(code):
        return None
    for rest in itertools.product((1, -1), repeat=len(labels) - 1):
        signs = dict(zip(labels, (1,) + rest))
        if dg.is_spherical(dg.from_signed_code(code, signs)):
            return signs
    return None


def parse_gauss(text: str, require_alternating: bool = False) -> Projection:
    entries = parse_gauss_entries(text)
    code = [e.label for e in entries]
    counts = Counter(code)
    bad = sorted(lab for lab, n in counts.items() if n != 2)
    if bad:
        raise ParseError(f"labels must occur exactly twice: {bad}")
    flagged = bool(entries) and entries[0].over is not None
    if require_alternating and flagged:
        for i, e in enumerate(entries):
            if e.over == entries[(i + 1) % len(entries)].over:
                raise NotAlternating(f"over/under flags do not alternate at entry {i + 1}")
    if flagged and all(e.sign is not None for e in entries):
        signs = {}
        seen: dict[int, GaussEntry] = {}
        for e in entries:
            if e.label not in seen:
                seen[e.label] = e
                continue
            first = seen[e.label]
            if first.sign != e.sign:
                raise ParseError(f"crossing {e.label} has two different signs")
            if first.over == e.over:
                raise ParseError(f"crossing {e.label} is over (or under) twice")
            signs[e.label] = first.sign if first.over else -first.sign
        nbr = dg.from_signed_code(code, signs)
        if nbr and not dg.is_spherical(nbr):
            raise NonRealizable("code with these crossing signs is not planar")
        return Projection(nbr)
    signs = realize(code)
    if signs is None:
        raise NonRealizable("Gauss code has no embedding in the sphere")
    return Projection(dg.from_signed_code(code, signs))


def emit_gauss(p: Projection, bare: bool = False) -> str:
    """Oriented Gauss code of the alternating diagram on ``p``.

    Passages at even positions go over; the trailing sign is the writhe.
    """
    code, flat = p.signed
    if bare:
        return ",".join(map(str, code))
    first_pos: dict[int, int] = {}
    entries = []
    for i, lab in enumerate(code):
        first_pos.setdefault(lab, i)
        s = flat[lab - 1]
        writhe = s if first_pos[lab] % 2 == 0 else -s
        entries.append(GaussEntry(lab, i % 2 == 0, writhe))
    return emit_gauss_entries(entries)


# --- first Reidemeister reduction -----------------------------------------


def r1_reduce(nbr: dg.Nbr) -> tuple[dg.Nbr, list[tuple[int, int]], list[int]]:
    """Remove monogons until none remain.

    Returns the reduced table, the (original crossing, monogon corner) pairs
    in removal order, and the original ids of the surviving crossings.
    """
    ids = list(range(dg.crossing_count(nbr)))
    removed = []
    while nbr:
        hit = next(dg.monogon_corners(nbr), None)
        if hit is None:
            break
        c, corner = hit
        removed.append((ids[c], corner))
        nbr = dg.splice(nbr, c)
        del ids[c]
    return nbr, removed, ids


# --- projection -> graph --------------------------------------------------


def _corner_faces(nbr: dg.Nbr):
    """Per crossing and corner: ("mono",), ("bigon", other, its corner) or None."""
    n = dg.crossing_count(nbr)
    table = [[None] * 4 for _ in range(n)]
    for face in dg.faces(nbr):
        corners = [(nbr[h] >> 2, nbr[h] & 3) for h in face]
        if len(corners) == 1:
            c, i = corners[0]
            table[c][i] = ("mono",)
        elif len(corners) == 2 and corners[0][0] != corners[1][0]:
            (c, i), (d, j) = corners
            table[c][i] = ("bigon", d, j)
            table[d][j] = ("bigon", c, i)
    return table


def _axis_options(nbr: dg.Nbr) -> list[list[int]]:
    """Admissible axis choices per crossing (axis ``a`` puts ends at corners a, a+2)."""
    table = _corner_faces(nbr)
    n = len(table)
    options: list[Optional[list[int]]] = [None] * n
    for c, row in enumerate(table):
        mono = {i % 2 for i, t in enumerate(row) if t and t[0] == "mono"}
        big = {i % 2 for i, t in enumerate(row) if t and t[0] == "bigon"}
        if mono:
            options[c] = sorted(mono)
        elif len(big) == 1:
            options[c] = sorted(big)
        elif len(big) == 2:
            options[c] = [0, 1]
    if all(o is not None for o in options):
        return options
    # crossings with no local clue: read the clue off the curl-free diagram
    reduced, removed, survivors = r1_reduce(nbr)
    for orig, corner in removed:
        if options[orig] is None:
            options[orig] = [corner % 2]
    if reduced:
        rtable = _corner_faces(reduced)
        for c, orig in enumerate(survivors):
            if options[orig] is None:
                big = {i % 2 for i, t in enumerate(rtable[c]) if t and t[0] == "bigon"}
                options[orig] = sorted(big) if len(big) == 1 else [0, 1]
    return [o if o is not None else [0, 1] for o in options]


def graph_for_axes(nbr: dg.Nbr, axes: list[int]) -> KnotEulerianGraph:
    """Collapse twist regions given the axis of every crossing."""
    n = dg.crossing_count(nbr)
    if n == 0:
        return KnotEulerianGraph.trivial()
    table = _corner_faces(nbr)
    link: list[dict[int, tuple[int, int]]] = [dict() for _ in range(n)]
    for c in range(n):
        for i in (axes[c], axes[c] + 2):
            t = table[c][i]
            if t and t[0] == "bigon":
                d, j = t[1], t[2]
                if j % 2 == axes[d]:
                    link[c][i] = (d, j)

    regions: list[tuple[list[int], int, int]] = []  # crossings, first corner, last corner
    placed = [False] * n
    for c in range(n):
        if placed[c] or len(link[c]) == 2:
            continue
        regions.append(_chain(c, axes, link, placed))
    for c in range(n):
        if not placed[c]:
            # a closed ring of bigons: cut it at the link leaving c's lower corner
            regions.append(_ring(c, axes, link, placed))

    slot_of: dict[int, tuple[str, tuple[str, int]]] = {}
    # vertex ids follow the strand
    visit = {}
    for h in dg.walk(nbr, nbr[0]):
        c = nbr[h] >> 2
        for k, (chain, _, _) in enumerate(regions):
            if c in chain and k not in visit:
                visit[k] = len(visit) + 1
    vertices = []
    for k, (chain, first, last) in enumerate(regions):
        vid = f"v{visit[k]}"
        size = len(chain)
        vertices.append(Vertex(vid, True, "odd" if size % 2 else "even", size))
        c0, ck = chain[0], chain[-1]
        slot_of[4 * c0 + first] = (vid, ("A", 1))
        slot_of[4 * c0 + (first + 1) % 4] = (vid, ("B", 1))
        slot_of[4 * ck + last] = (vid, ("B", 2))
        slot_of[4 * ck + (last + 1) % 4] = (vid, ("A", 2))
    edges = []
    for h in dg.walk(nbr, nbr[0]):
        if h in slot_of:
            edges.append(Edge(slot_of[h], slot_of[nbr[h]]))
    return KnotEulerianGraph(tuple(vertices), tuple(edges))


def _chain(c, axes, link, placed):
    chain = [c]
    placed[c] = True
    ends = [axes[c], axes[c] + 2]
    free = [i for i in ends if i not in link[c]]
    first = free[0]
    cur, corner = c, (first + 2) % 4
    while corner in link[cur]:
        d, j = link[cur][corner]
        chain.append(d)
        placed[d] = True
        cur, corner = d, (j + 2) % 4
    return chain, first, corner


def _ring(c, axes, link, placed):
    first = axes[c]
    chain = [c]
    placed[c] = True
    cur, corner = c, (first + 2) % 4
    while True:
        d, j = link[cur][corner]
        if d == c:
            break
        chain.append(d)
        placed[d] = True
        cur, corner = d, (j + 2) % 4
    return chain, first, corner


def axis_choices(p: Projection) -> list[list[int]]:
    return _axis_options(p.nbr)


def readings(p: Projection) -> Iterator[KnotEulerianGraph]:
    """Every valid graph obtained from some admissible axis assignment.

    A crossing outside any bigon chain can often be read along either axis,
    so one diagram may belong to several families.
    """
    if not p.nbr:
        yield KnotEulerianGraph.trivial()
        return
    for axes in itertools.product(*_axis_options(p.nbr)):
        g = graph_for_axes(p.nbr, list(axes))
        if is_valid(g):
            yield g


def from_projection(p: Projection) -> KnotEulerianGraph:
    """Knot Eulerian graph of the alternating diagram on ``p``.

    Maximal chains of bigons become real vertices.  The axis of a crossing is
    read from its bigons and monogons, or from the curl-free diagram; where it
    is still free, every choice is tried and the one whose reduced graph has
    the smallest canonical key wins.
    """
    from .reducer import canonical_sort_key, reduce

    best = None
    for g in readings(p):
        k = canonical_sort_key(reduce(g))
        if best is None or k < best[0]:
            best = (k, g)
    if best is None:
        raise ValueError("no axis assignment yields a valid graph")
    return best[1]


# --- graph -> projection --------------------------------------------------

DEFAULT_TWISTS = {"odd": 3, "even": 2}


def to_projection(g: KnotEulerianGraph) -> Projection:
    """Representative projection of the family of ``g``.

    Real vertices expand to their recorded crossing count, otherwise to three
    (odd) or two (even) crossings stacked along the axis.
    """
    problems = validate(g)
    if problems:
        raise ValueError("invalid graph: " + "; ".join(problems))
    reals = g.real_vertices
    if not reals:
        return Projection(dg.CIRCLE)
    base: dict[str, int] = {}
    size: dict[str, int] = {}
    total = 0
    for v in reals:
        k = v.crossings or DEFAULT_TWISTS[v.parity]
        base[v.id], size[v.id] = total, k
        total += k
    nbr = [0] * (4 * total)

    def join(a: int, b: int) -> None:
        nbr[a], nbr[b] = b, a

    for v in reals:
        b, k = base[v.id], size[v.id]
        for t in range(k - 1):
            join(4 * (b + t) + 2, 4 * (b + t + 1) + 1)
            join(4 * (b + t) + 3, 4 * (b + t + 1) + 0)

    def leg(end) -> int:
        vid, (side, e) = end
        b, k = base[vid], size[vid]
        if e == 1:
            return 4 * b + (0 if side == "A" else 1)
        return 4 * (b + k - 1) + (3 if side == "A" else 2)

    tails = {e.tail: e for e in g.edges}
    for e in g.edges:
        if not g.vertex(e.tail[0]).real:
            continue
        head = e.head
        while not g.vertex(head[0]).real:
            vid, slot = head
            head = tails[(vid, g.vertex(vid).pair(slot))].head
        join(leg(e.tail), leg(head))
    out = dg.relabel(nbr, range(total))
    return Projection(out)
