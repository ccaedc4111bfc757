"""Plumbing trees to spanning-surface recipes and to knot Eulerian graphs.

A node of weight ``w`` is a band with ``w`` half twists; its children are
plumbed onto it.  On the diagram side a node is a horizontal twist of ``|w|``
crossings, each child subtree enters turned a quarter (as a vertical
column) and is added to the right, and the root is closed off by joining
its two top ends and its two bottom ends.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from . import diagram as dg
from .codec import PlumbTree
from .keg import KnotEulerianGraph
from .projection import Projection, graph_for_axes
from .solver import Band, DeformedPlumb, Plumb, SurfaceRecipe, band_count


class NotAKnot(ValueError):
    pass


def tree_to_recipe(t: PlumbTree) -> SurfaceRecipe:
    steps: list = []

    def visit(node: PlumbTree, parent: int | None) -> None:
        steps.append(Band(node.weight))
        me = len(steps) - 1
        if parent is not None:
            steps.append(Plumb(parent))
        for child in node.children:
            visit(child, me)

    visit(t, None)
    return SurfaceRecipe(tuple(steps))


def deform(r: SurfaceRecipe, index: int, full_twists: int) -> SurfaceRecipe:
    if not 0 <= index < len(r.steps):
        raise IndexError(f"no step {index} in a recipe of {len(r.steps)} steps")
    step = r.steps[index]
    if not isinstance(step, (Plumb, DeformedPlumb)):
        raise ValueError(f"step {index} is not a plumbing")
    new = Plumb(step.onto) if full_twists == 0 else DeformedPlumb(step.onto, full_twists)
    steps = list(r.steps)
    steps[index] = new
    out = replace(r, steps=tuple(steps))
    assert band_count(out) == band_count(r)
    return out


# --- tangles --------------------------------------------------------------


@dataclass(frozen=True)
class Tangle:
    """Partial neighbour table with four free legs and the axis of each crossing."""

    nbr: tuple[int, ...]
    ends: tuple[int, int, int, int]  # legs at NW, NE, SW, SE
    axes: tuple[int, ...]


def twist(n: int) -> Tangle:
    """``n`` crossings in a row along a horizontal axis."""
    if n < 1:
        raise ValueError("a twist needs at least one crossing")
    nbr = [-1] * (4 * n)
    # legs 0..3 sit at NW, SW, SE, NE; the strand passes NW-SE and SW-NE
    for k in range(n - 1):
        a, b = 4 * k, 4 * (k + 1)
        nbr[a + 3], nbr[b + 0] = b + 0, a + 3
        nbr[a + 2], nbr[b + 1] = b + 1, a + 2
    last = 4 * (n - 1)
    return Tangle(tuple(nbr), (0, last + 3, 1, last + 2), (0,) * n)


def add(s: Tangle, t: Tangle) -> Tangle:
    off = len(s.nbr)
    nbr = list(s.nbr) + [x + off if x >= 0 else -1 for x in t.nbr]
    nw, ne, sw, se = s.ends
    tnw, tne, tsw, tse = (x + off for x in t.ends)
    nbr[ne], nbr[tnw] = tnw, ne
    nbr[se], nbr[tsw] = tsw, se
    return Tangle(tuple(nbr), (nw, tne, sw, tse), s.axes + t.axes)


def turn(t: Tangle) -> Tangle:
    """Reflect in the NW-SE diagonal: NE and SW swap and every rotation reverses."""

    def leg(h: int) -> int:
        return (h & ~3) | (-h & 3) if h >= 0 else -1

    nbr = tuple(leg(t.nbr[(h & ~3) | (-h & 3)]) for h in range(len(t.nbr)))
    nw, ne, sw, se = (leg(x) for x in t.ends)
    return Tangle(nbr, (nw, sw, ne, se), tuple(1 - a for a in t.axes))


def close(t: Tangle) -> tuple[dg.Nbr, tuple[int, ...]]:
    """Join NW to NE and SW to SE."""
    nbr = list(t.nbr)
    nw, ne, sw, se = t.ends
    nbr[nw], nbr[ne] = ne, nw
    nbr[sw], nbr[se] = se, sw
    return tuple(nbr), t.axes


def node_tangle(t: PlumbTree) -> Tangle:
    out = twist(abs(t.weight))
    for child in t.children:
        out = add(out, turn(node_tangle(child)))
    return out


def pretzel_tangle(columns: Sequence[int]) -> Tangle:
    """Vertical columns of the given sizes set side by side."""
    out = None
    for k in columns:
        col = turn(twist(abs(k)))
        out = col if out is None else add(out, col)
    return out


def _graph(nbr: dg.Nbr, axes: tuple[int, ...]) -> KnotEulerianGraph:
    if not dg.is_spherical(nbr):
        raise AssertionError("tangle closure is not planar")
    comps = dg.component_count(nbr)
    if comps != 1:
        raise NotAKnot(f"boundary has {comps} components")
    return graph_for_axes(nbr, list(axes))


def tree_projection(t: PlumbTree) -> Projection:
    nbr, _ = close(node_tangle(t))
    if dg.component_count(nbr) != 1:
        raise NotAKnot(f"boundary has {dg.component_count(nbr)} components")
    return Projection(nbr)


def tree_to_graph(t: PlumbTree) -> KnotEulerianGraph:
    """Knot Eulerian graph of the boundary of the plumbed surface.

    Each node's twist becomes one real vertex, unless it sits in a bigon
    chain with a neighbour's twist along the same axis, in which case the
    two collapse into one region.
    """
    return _graph(*close(node_tangle(t)))


def pretzel_graph(columns: Sequence[int]) -> KnotEulerianGraph:
    return _graph(*close(pretzel_tangle(columns)))


def deformed_pair_graph(a: int, b: int, full_twists: int) -> KnotEulerianGraph:
    """Boundary after deforming the plumbing of ``(a (b))`` with even ``a``, ``b``.

    The square is replaced by a band with ``full_twists`` full twists; one
    half twist of each original band moves into that band, leaving the
    pretzel with columns ``2 * full_twists``, ``a - 1`` and ``b - 1``.
    """
    if a % 2 or b % 2:
        raise ValueError("the pretzel reading applies to even weights")
    if full_twists == 0:
        return tree_to_graph(PlumbTree(a, (PlumbTree(b),)))
    return pretzel_graph((2 * full_twists, abs(a) - 1, abs(b) - 1))
