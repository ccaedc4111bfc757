"""Crosscap numbers, connected-sum detection and spanning-surface recipes."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from . import diagram as dg
from .engine import Caps, Engine, witness_moves
from .keg import Edge, KnotEulerianGraph
from .projection import Projection, to_projection
from .reducer import canonical_key, reduce
from .results import EXACT, UNKNOWN, UPPER_BOUND, CrosscapResult

__all__ = ["CrosscapResult", "CompositeInput", "CompositeReport", "detect_composite",
           "crosscap", "Band", "Plumb", "DeformedPlumb", "ConnectedSum", "SurfaceRecipe",
           "surface_recipe", "emit_recipe", "parse_recipe", "band_count"]


class CompositeInput(ValueError):
    def __init__(self, report: "CompositeReport"):
        self.report = report
        super().__init__("graph is a connected sum; compute each summand separately:\n"
                         + "\n".join(str(s) for s in report.summands))


# --- connected sums -------------------------------------------------------


@dataclass
class CompositeReport:
    cuts: list[tuple[Edge, Edge]] = field(default_factory=list)
    summands: list[KnotEulerianGraph] = field(default_factory=list)

    @property
    def prime(self) -> bool:
        return not self.cuts

    def __str__(self) -> str:
        if self.prime:
            return "prime"
        return f"composite: {len(self.cuts)} cut(s), summands " + ", ".join(
            canonical_key(s) for s in self.summands)


def _shore(g: KnotEulerianGraph, skip: set[int]) -> set[str]:
    """Vertices reachable from the first edge's tail without the edges in ``skip``."""
    adj: dict[str, set[str]] = {v.id: set() for v in g.vertices}
    for i, e in enumerate(g.edges):
        if i not in skip:
            adj[e.tail[0]].add(e.head[0])
            adj[e.head[0]].add(e.tail[0])
    start = g.vertices[0].id
    seen, todo = {start}, [start]
    while todo:
        for w in adj[todo.pop()] - seen:
            seen.add(w)
            todo.append(w)
    return seen


def _summand(g: KnotEulerianGraph, side: set[str], e1: Edge, e2: Edge) -> KnotEulerianGraph:
    inner = [e for e in g.edges if e.tail[0] in side and e.head[0] in side
             and e not in (e1, e2)]
    if e1.tail[0] in side:
        inner.append(Edge(e1.tail, e2.head))
    else:
        inner.append(Edge(e2.tail, e1.head))
    return KnotEulerianGraph(tuple(v for v in g.vertices if v.id in side), tuple(inner))


def detect_composite(g: KnotEulerianGraph) -> CompositeReport:
    """Two-edge cuts that split the reduced graph into two knotted halves.

    Reduction leaves no unknotted shore behind, so any cut with real vertices
    on both sides is a connected sum.  The cut edges need not meet one side
    of a vertex: a nugatory twist region between the summands is cut at its
    end.
    """
    g = reduce(g)
    report = CompositeReport()
    if len(g.vertices) < 2:
        return report
    for i, j in itertools.combinations(range(len(g.edges)), 2):
        e1, e2 = g.edges[i], g.edges[j]
        side = _shore(g, {i, j})
        if len(side) == len(g.vertices):
            continue
        other = {v.id for v in g.vertices} - side
        report.cuts.append((e1, e2))
        if not report.summands:
            report.summands = [reduce(_summand(g, side, e1, e2)),
                               reduce(_summand(g, other, e1, e2))]
    return report


# --- crosscap -------------------------------------------------------------

_ENGINES: dict[tuple, Engine] = {}


def shared_engine(caps: Caps, jobs: int = 1) -> Engine:
    """One engine per cap setting, reused across calls in this process."""
    key = tuple(sorted(caps.as_dict().items()))
    if key not in _ENGINES:
        _ENGINES[key] = Engine(caps, jobs)
    return _ENGINES[key]


def crosscap(g: KnotEulerianGraph, caps: Optional[Caps] = None, jobs: int = 1,
             engine: Optional[Engine] = None) -> CrosscapResult:
    """u^- of the alternating diagram described by ``g``.

    When every real vertex records its crossing count the graph names one
    projection, and the answer is the level at which the enumeration first
    meets that projection.  Each Move 1 adds one crossing, so a c-crossing
    diagram at level n grows from a seed of exactly c - n crossings; the
    answer is exact once the curl budget reaches c - 1 (or the level is 1).

    Without crossing counts the graph names a whole family and the answer is
    the least level of any family member.  It is exact relative to the caps
    only: members with many crossings may need larger seeds.
    """
    caps = caps or Caps()
    g = reduce(g)
    report = detect_composite(g)
    if not report.prime:
        raise CompositeInput(report)
    engine = engine or shared_engine(caps, jobs)
    if not g.real_vertices:
        engine.extend(0)
        return CrosscapResult(0, EXACT, (Projection(dg.CIRCLE), ()), caps.as_dict())
    if all(v.crossings is not None for v in g.real_vertices):
        return _diagram_crosscap(to_projection(g), caps, engine)
    key = canonical_key(g)
    for n in range(caps.max_level + 1):
        table = engine.extend(n)
        if key in table:
            rec = table[key]
            status = EXACT if table.complete_below(rec.level) else UPPER_BOUND
            return CrosscapResult(rec.level, status, rec.witness, caps.as_dict())
        if table.levels_done < n:
            break
    return CrosscapResult(None, UNKNOWN, None, caps.as_dict())


def _diagram_crosscap(p: Projection, caps: Caps, engine: Engine) -> CrosscapResult:
    c = p.crossings
    info = caps.as_dict()
    if c > caps.crossing_cap():
        return CrosscapResult(None, UNKNOWN, None, info)
    for n in range(caps.max_level + 1):
        engine.extend(n)
        level = engine.diagram_level(p)
        if level is not None:
            complete = (level <= 1 or caps.budget >= c - 1) and \
                (engine.truncated_at is None or engine.truncated_at >= level)
            return CrosscapResult(level, EXACT if complete else UPPER_BOUND,
                                  engine.witness(p.canonical), info)
        if engine.table.levels_done < n:
            break
    return CrosscapResult(None, UNKNOWN, None, info)


# --- surface recipes ------------------------------------------------------


@dataclass(frozen=True)
class Band:
    half_twists: int


@dataclass(frozen=True)
class Plumb:
    onto: int


@dataclass(frozen=True)
class DeformedPlumb:
    onto: int
    full_twists: int


@dataclass(frozen=True)
class ConnectedSum:
    left: "SurfaceRecipe"
    right: "SurfaceRecipe"


Step = Union[Band, Plumb, DeformedPlumb, ConnectedSum]


@dataclass(frozen=True)
class SurfaceRecipe:
    """Steps applied to a disk.  A plumbing step attaches the band just before it."""

    steps: tuple[Step, ...] = ()

    def __str__(self) -> str:
        return emit_recipe(self)


def band_count(r: SurfaceRecipe) -> int:
    total = 0
    for s in r.steps:
        if isinstance(s, Band):
            total += 1
        elif isinstance(s, ConnectedSum):
            total += band_count(s.left) + band_count(s.right)
    return total


def _new_crossing(before: Projection, after: Projection) -> int:
    """Crossing of ``after`` whose splice gives back ``before``."""
    target = before.canonical
    for c in range(after.crossings - 1, -1, -1):
        back = dg.splice(after.nbr, c)
        if back is not None and dg.canonical_form(back) == target:
            return c
    raise ValueError("consecutive witness diagrams are not one Move 1 apart")


def _writhe(p: Projection, c: int) -> int:
    flat = dg.signed_code(p.nbr, p.start)
    code, signs = flat
    # label of crossing c in the code read from p.start
    labels: dict[int, int] = {}
    for h in dg.walk(p.nbr, p.start):
        labels.setdefault(p.nbr[h] >> 2, len(labels) + 1)
    lab = labels[c]
    first = code.index(lab)
    return signs[lab - 1] if first % 2 == 0 else -signs[lab - 1]


def _bigon_partners(p: Projection, c: int) -> set[int]:
    out = set()
    for face in dg.faces(p.nbr):
        if len(face) == 2:
            xs = {p.nbr[h] >> 2 for h in face}
            if c in xs and len(xs) == 2:
                out |= xs - {c}
    return out


def surface_recipe(result: CrosscapResult) -> SurfaceRecipe:
    """One band per Move 1 of the witness, attached to the band it meets.

    The k-th move's crossing gets a band with one half twist of the sign of
    its writhe.  If it shares a bigon with the crossing of an earlier move the
    band is plumbed onto that band; otherwise it is a deformed plumbing onto
    the first band with one full twist of the same sign.  The first band sits
    on the seed disk.
    """
    if result.witness is None:
        raise ValueError("result has no witness")
    steps: list[Step] = []
    band_steps: list[int] = []
    seed = result.witness[0]
    owners: list[Optional[int]] = [None] * seed.crossings  # band step per crossing
    for before, after in witness_moves(result.witness):
        c = _new_crossing(before, after)
        owners = _carry_owners(before, after, c, owners)
        sign = _writhe(after, c)
        steps.append(Band(sign))
        this = len(steps) - 1
        if band_steps:
            partners = [owners[x] for x in _bigon_partners(after, c)
                        if owners[x] is not None]
            if partners:
                steps.append(Plumb(max(partners)))
            else:
                steps.append(DeformedPlumb(band_steps[0], sign))
        band_steps.append(this)
        owners[c] = this
    return SurfaceRecipe(tuple(steps))


def _carry_owners(before: Projection, after: Projection, c: int, owners):
    """Per-crossing band owners of ``before`` moved onto the crossings of ``after``."""
    back = dg.splice(after.nbr, c)
    m = _isomorphism(back, before.nbr)
    out = [owners[m[x]] for x in range(before.crossings)]
    out.insert(c, None)
    return out


def _isomorphism(a: dg.Nbr, b: dg.Nbr) -> list[int]:
    """Crossing map ``a -> b`` of a sphere isomorphism (reflections allowed)."""
    if not a:
        return []
    for flip in (False, True):
        turn = dg.ccw_prev if flip else dg.ccw_next
        for s in range(len(b)):
            m = {0: s}
            todo = [0]
            ok = True
            while todo and ok:
                x = todo.pop()
                for y, z in ((a[x], b[m[x]]), (dg.ccw_next(x), turn(m[x]))):
                    if y in m:
                        ok = m[y] == z
                        if not ok:
                            break
                    else:
                        m[y] = z
                        todo.append(y)
            if ok and len(set(m.values())) == len(a):
                return [m[4 * i] >> 2 for i in range(len(a) // 4)]
    raise ValueError("diagrams are not isomorphic")


# --- recipe text ----------------------------------------------------------


def emit_recipe(r: SurfaceRecipe, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for s in r.steps:
        if isinstance(s, Band):
            lines.append(f"{pad}band k={s.half_twists:+d}")
        elif isinstance(s, Plumb):
            lines.append(f"{pad}plumb onto={s.onto}")
        elif isinstance(s, DeformedPlumb):
            lines.append(f"{pad}dplumb onto={s.onto} t={s.full_twists:+d}")
        else:
            lines.append(f"{pad}sum {{")
            lines.append(emit_recipe(s.left, indent + 1).rstrip("\n"))
            lines.append(f"{pad}}} {{")
            lines.append(emit_recipe(s.right, indent + 1).rstrip("\n"))
            lines.append(f"{pad}}}")
    return "\n".join(x for x in lines if x) + "\n" if lines else ""


_STEP_RE = {
    "band": re.compile(r"^band k=([+-]?\d+)$"),
    "plumb": re.compile(r"^plumb onto=(\d+)$"),
    "dplumb": re.compile(r"^dplumb onto=(\d+) t=([+-]?\d+)$"),
}


def parse_recipe(text: str) -> SurfaceRecipe:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    pos = 0

    def block() -> SurfaceRecipe:
        nonlocal pos
        steps: list[Step] = []
        while pos < len(lines) and not lines[pos].startswith("}"):
            ln = lines[pos]
            pos += 1
            if ln == "sum {":
                left = block()
                if pos >= len(lines) or lines[pos] != "} {":
                    raise ValueError("expected '} {' in sum")
                pos += 1
                right = block()
                if pos >= len(lines) or lines[pos] != "}":
                    raise ValueError("expected '}' closing sum")
                pos += 1
                steps.append(ConnectedSum(left, right))
                continue
            for kind, rx in _STEP_RE.items():
                m = rx.match(ln)
                if m:
                    if kind == "band":
                        steps.append(Band(int(m.group(1))))
                    elif kind == "plumb":
                        steps.append(Plumb(int(m.group(1))))
                    else:
                        steps.append(DeformedPlumb(int(m.group(1)), int(m.group(2))))
                    break
            else:
                raise ValueError(f"cannot parse recipe line {ln!r}")
        return SurfaceRecipe(tuple(steps))

    r = block()
    if pos != len(lines):
        raise ValueError("unbalanced braces in recipe")
    return r
