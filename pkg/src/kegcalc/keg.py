"""Knot Eulerian graphs: twist-region graphs with slotted, directed edges.

A real vertex stands for a twist region.  Its four slots are ``(side, end)``
with side ``"A"``/``"B"`` and end ``1``/``2``; around the box they occur in
the fixed cyclic order (A,1), (B,1), (B,2), (A,2).  An empty vertex is a
marker on an arc with the two anonymous slots ``(None, 1)`` and
``(None, 2)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

Slot = tuple[Optional[str], int]
End = tuple[str, Slot]

REAL_SLOTS: tuple[Slot, ...] = (("A", 1), ("B", 1), ("B", 2), ("A", 2))
EMPTY_SLOTS: tuple[Slot, ...] = ((None, 1), (None, 2))


class StructuralError(ValueError):
    """Slot data that does not describe strands through the vertices."""


class EmbeddingError(ValueError):
    """The rotation system does not embed in the sphere."""


@dataclass(frozen=True)
class Vertex:
    id: str
    real: bool = True
    parity: Optional[str] = None  # "odd" | "even" for real vertices
    crossings: Optional[int] = None

    @classmethod
    def odd(cls, id: str, crossings: Optional[int] = None) -> "Vertex":
        return cls(id, True, "odd", crossings)

    @classmethod
    def even(cls, id: str, crossings: Optional[int] = None) -> "Vertex":
        return cls(id, True, "even", crossings)

    @classmethod
    def empty(cls, id: str) -> "Vertex":
        return cls(id, False, None, None)

    @property
    def slots(self) -> tuple[Slot, ...]:
        return REAL_SLOTS if self.real else EMPTY_SLOTS

    def pair(self, slot: Slot) -> Slot:
        """Slot reached by the strand that enters at ``slot``."""
        side, end = slot
        if not self.real:
            return (None, 3 - end)
        if self.parity == "even":
            return (side, 3 - end)
        return ("B" if side == "A" else "A", 3 - end)

    def rotate(self, slot: Slot) -> Slot:
        """Next slot in the fixed cyclic order around the vertex."""
        s = self.slots
        return s[(s.index(slot) + 1) % len(s)]


@dataclass(frozen=True)
class Edge:
    tail: End
    head: End

    def reversed(self) -> "Edge":
        return Edge(self.head, self.tail)

    def as_tuple(self) -> tuple:
        """The (u, v, T_u, T_v) form that forgets end indices."""
        return (self.tail[0], self.head[0], self.tail[1][0], self.head[1][0])


def _end_sort(e: End) -> tuple:
    vid, (side, end) = e
    return (vid, side or "", end)


@dataclass(frozen=True)
class KnotEulerianGraph:
    vertices: tuple[Vertex, ...] = ()
    edges: tuple[Edge, ...] = ()
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        object.__setattr__(self, "edges", tuple(sorted(
            self.edges, key=lambda e: (_end_sort(e.tail), _end_sort(e.head)))))
        object.__setattr__(self, "_index", {v.id: v for v in self.vertices})

    @classmethod
    def trivial(cls) -> "KnotEulerianGraph":
        return cls()

    @property
    def is_trivial(self) -> bool:
        return not self.vertices and not self.edges

    def vertex(self, vid: str) -> Vertex:
        return self._index[vid]

    def __contains__(self, vid: str) -> bool:
        return vid in self._index

    @property
    def real_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v.real)

    def endpoint_map(self) -> dict[End, tuple[int, str]]:
        """(vertex, slot) -> (edge index, "tail" | "head"); assumes no conflicts."""
        out = {}
        for i, e in enumerate(self.edges):
            out[e.tail] = (i, "tail")
            out[e.head] = (i, "head")
        return out

    def other_end(self, end: End) -> End:
        i, role = self.endpoint_map()[end]
        e = self.edges[i]
        return e.head if role == "tail" else e.tail

    def reversed(self) -> "KnotEulerianGraph":
        return KnotEulerianGraph(self.vertices, tuple(e.reversed() for e in self.edges))

    def replace(self, vertices: Iterable[Vertex], edges: Iterable[Edge]) -> "KnotEulerianGraph":
        return KnotEulerianGraph(tuple(vertices), tuple(edges))

    def __str__(self) -> str:
        from .codec import emit_keg
        return emit_keg(self)


# --- strand structure -----------------------------------------------------


def circuits(g: KnotEulerianGraph) -> list[list[int]]:
    """Closed strands as lists of edge indices in travel order.

    Raises StructuralError when slots are missing, doubly used, or the edge
    directions disagree with the strand pairing inside some vertex.
    """
    problems = _slot_problems(g)
    if problems:
        raise StructuralError("; ".join(problems))
    tails = {e.tail: i for i, e in enumerate(g.edges)}
    seen = [False] * len(g.edges)
    out = []
    for start in range(len(g.edges)):
        if seen[start]:
            continue
        loop = []
        i = start
        while not seen[i]:
            seen[i] = True
            loop.append(i)
            vid, slot = g.edges[i].head
            nxt = (vid, g.vertex(vid).pair(slot))
            if nxt not in tails:
                raise StructuralError(
                    f"strand entering {vid}.{_fmt(slot)} cannot leave through "
                    f"{vid}.{_fmt(nxt[1])}")
            i = tails[nxt]
        if i != start:
            raise StructuralError("edge directions do not form closed strands")
        out.append(loop)
    return out


def orient(g: KnotEulerianGraph) -> KnotEulerianGraph:
    """Re-direct edges so that every closed strand is traversed coherently.

    Each strand keeps the direction of its first edge (in edge order).  Slot
    problems are left alone for ``validate`` to report.
    """
    if _slot_problems(g) or g.is_trivial:
        return g
    at: dict[End, int] = {}
    for i, e in enumerate(g.edges):
        at[e.tail] = i
        at[e.head] = i
    new: list[Optional[Edge]] = [None] * len(g.edges)
    for start, e0 in enumerate(g.edges):
        if new[start] is not None:
            continue
        i, src = start, e0.tail
        while new[i] is None:
            e = g.edges[i]
            dst = e.head if e.tail == src else e.tail
            new[i] = Edge(src, dst)
            vid, slot = dst
            src = (vid, g.vertex(vid).pair(slot))
            i = at[src]
    return g.replace(g.vertices, new)


def component_count(g: KnotEulerianGraph) -> int:
    if g.is_trivial:
        return 1
    return len(circuits(g))


def _fmt(slot: Slot) -> str:
    side, end = slot
    return f"{side or 'none'}.{end}"


def _slot_problems(g: KnotEulerianGraph) -> list[str]:
    out = []
    ids = Counter(v.id for v in g.vertices)
    out += [f"duplicate vertex id {vid}" for vid, n in ids.items() if n > 1]
    used: Counter = Counter()
    for e in g.edges:
        for vid, slot in (e.tail, e.head):
            if vid not in g:
                out.append(f"edge refers to undeclared vertex {vid}")
                continue
            if slot not in g.vertex(vid).slots:
                out.append(f"vertex {vid} has no slot {_fmt(slot)}")
                continue
            used[(vid, slot)] += 1
    for (vid, slot), n in sorted(used.items(), key=lambda kv: _end_sort(kv[0])):
        if n > 1:
            out.append(f"slot conflict at {vid}.{_fmt(slot)} (used {n} times)")
    for v in g.vertices:
        free = [s for s in v.slots if used[(v.id, s)] == 0]
        if free:
            out.append(f"vertex {v.id} valency {len(v.slots) - len(free)}, "
                       f"expected {len(v.slots)}")
    return out


# --- faces ----------------------------------------------------------------


@dataclass(frozen=True)
class Corner:
    vertex: str
    first: Slot
    second: Slot

    @property
    def kind(self) -> str:
        """"end" between (A,p) and (B,p); "side" between (X,1) and (X,2)."""
        if self.first[0] is None:
            return "pass"
        return "end" if self.first[1] == self.second[1] else "side"


@dataclass(frozen=True)
class Face:
    # departing endpoints in walk order; corners[i] is turned after edges[i]
    darts: tuple[End, ...]
    corners: tuple[Corner, ...]

    def __len__(self) -> int:
        return len(self.darts)


def faces(g: KnotEulerianGraph) -> list[Face]:
    """Face walks of the rotation system; checks the sphere Euler formula."""
    if g.is_trivial:
        return [Face((), ()), Face((), ())]
    ends = g.endpoint_map()
    if len(ends) != 2 * len(g.edges) or _slot_problems(g):
        raise StructuralError("; ".join(_slot_problems(g)) or "inconsistent slots")
    seen: set[End] = set()
    out = []
    for start in sorted(ends, key=_end_sort):
        if start in seen:
            continue
        darts, corners = [], []
        d = start
        while d not in seen:
            seen.add(d)
            darts.append(d)
            i, role = ends[d]
            e = g.edges[i]
            vid, slot = e.head if role == "tail" else e.tail
            nxt = g.vertex(vid).rotate(slot)
            corners.append(Corner(vid, slot, nxt))
            d = (vid, nxt)
        out.append(Face(tuple(darts), tuple(corners)))
    euler = len(g.vertices) - len(g.edges) + len(out)
    if euler != 2:
        raise EmbeddingError(f"V - E + F = {euler}, not a sphere")
    return out


# --- validation -----------------------------------------------------------


def validate(g: KnotEulerianGraph) -> list[str]:
    """Every violated invariant, as messages; an empty list means valid."""
    if g.is_trivial:
        return []
    report = []
    for v in g.vertices:
        if v.real and v.parity not in ("odd", "even"):
            report.append(f"vertex {v.id} has no parity")
        if v.real and v.crossings is not None:
            if v.crossings < 1:
                report.append(f"vertex {v.id} crossings must be positive")
            elif (v.crossings % 2 == 1) != (v.parity == "odd"):
                report.append(f"vertex {v.id} crossings={v.crossings} "
                              f"disagrees with parity {v.parity}")
        if not v.real and (v.parity or v.crossings):
            report.append(f"empty vertex {v.id} carries twist data")
    if not g.vertices:
        report.append("edges without vertices")
        return report
    problems = _slot_problems(g)
    report += problems
    if problems or report:
        return report
    try:
        n = len(circuits(g))
    except StructuralError as err:
        return report + [str(err)]
    if n != 1:
        report.append(f"{n} components, expected 1")
    if not _connected(g):
        report.append("graph is not connected")
    try:
        faces(g)
    except EmbeddingError as err:
        report.append(f"embedding: {err}")
    return report


def is_valid(g: KnotEulerianGraph) -> bool:
    return not validate(g)


def _connected(g: KnotEulerianGraph) -> bool:
    adj: dict[str, set[str]] = {v.id: set() for v in g.vertices}
    for e in g.edges:
        adj[e.tail[0]].add(e.head[0])
        adj[e.head[0]].add(e.tail[0])
    start = g.vertices[0].id
    stack, seen = [start], {start}
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


def strand_visits(g: KnotEulerianGraph) -> Counter:
    """How many times the single strand passes through each vertex."""
    visits: Counter = Counter()
    for loop in circuits(g):
        for i in loop:
            visits[g.edges[i].head[0]] += 1
    return visits


def iter_ends(g: KnotEulerianGraph) -> Iterator[End]:
    for v in g.vertices:
        for s in v.slots:
            yield (v.id, s)
