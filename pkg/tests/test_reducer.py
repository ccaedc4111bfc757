import random

import pytest
from hypothesis import given, settings, strategies as st

from kegcalc.keg import Edge, KnotEulerianGraph, Vertex, component_count, validate
from kegcalc.reducer import (apply_ri_minus, canonical_key, equivalent, half_turn, mirror,
                             remove_empty, reduce, ri_minus_sites, ri_minus_step, unify_sites,
                             unify_step)

from conftest import figure_eight, keg, t3
from randgraphs import insert_empty, random_graph

T25_SPLIT = """
vertex u real parity=odd crossings=3
vertex v real parity=even crossings=2
edge u.A.2 -> v.A.1
edge u.B.2 -> v.B.1
edge v.A.2 -> u.A.1
edge v.B.2 -> u.B.1
"""

GRANNY = """
vertex u real parity=odd
vertex v real parity=odd
edge u.A.2 -> u.A.1
edge u.B.2 -> v.A.1
edge v.A.2 -> u.B.1
edge v.B.2 -> v.B.1
"""


def plat(parity="odd"):
    return keg(f"vertex v real parity={parity}\nedge v.A.1 -> v.B.1\nedge v.B.2 -> v.A.2\n")


def add_curl_vertex(g, index, vid, parity="odd"):
    """Put a one-crossing curl (cap loop on end 1) on edge ``index``."""
    e = g.edges[index]
    rest = [x for i, x in enumerate(g.edges) if i != index]
    loop = ("A", 1), ("B", 1)
    if parity == "odd":
        loop = loop[::-1]
    rest += [Edge(e.tail, (vid, ("A", 2))), Edge((vid, loop[0]), (vid, loop[1])),
             Edge((vid, ("B", 2)), e.head)]
    return g.replace(list(g.vertices) + [Vertex(vid, True, parity, 1 if parity == "odd" else 2)],
                     rest)


def test_remove_empty_examples():
    g = insert_empty(t3(), 0, "z")
    assert remove_empty(g) == t3()
    assert remove_empty(KnotEulerianGraph.trivial()).is_trivial
    loop = keg("vertex z empty\nedge z.none.2 -> z.none.1\n")
    assert remove_empty(loop).is_trivial


@pytest.mark.parametrize("parity", ["odd", "even"])
def test_plat_unwinds(parity):
    g = plat(parity)
    assert validate(g) == []
    assert reduce(g).is_trivial


def test_plat_with_three_curls():
    g = plat()
    for k in range(3):
        g = add_curl_vertex(g, k % len(g.edges), f"w{k}", ["odd", "even"][k % 2])
    assert validate(g) == []
    assert reduce(g).is_trivial


def test_t3_is_r1_irreducible():
    assert ri_minus_step(t3()) is None
    assert unify_step(t3()) is None


def test_t3_with_curl_reduces_to_t3():
    g = add_curl_vertex(t3(), 0, "w")
    assert validate(g) == []
    assert ri_minus_sites(g)
    assert canonical_key(apply_ri_minus(g, ri_minus_sites(g)[0])) == canonical_key(t3())


def test_t25_split_unifies():
    g = keg(T25_SPLIT)
    out = unify_step(g)
    assert out is not None and len(out.vertices) == 1
    v = out.vertices[0]
    assert v.parity == "odd" and v.crossings == 5
    assert canonical_key(out) == canonical_key(t3())


def test_three_part_split():
    g = keg("""
vertex a real parity=odd crossings=1
vertex b real parity=even crossings=2
vertex c real parity=even crossings=2
edge a.A.2 -> b.A.1
edge a.B.2 -> b.B.1
edge b.A.2 -> c.A.1
edge b.B.2 -> c.B.1
edge c.A.2 -> a.A.1
edge c.B.2 -> a.B.1
""")
    for seed in range(5):
        r = reduce(g, random.Random(seed))
        assert len(r.vertices) == 1 and r.vertices[0].crossings == 5


def test_granny_never_unifies():
    g = keg(GRANNY)
    assert validate(g) == []
    assert unify_sites(g) == []
    assert len(reduce(g).vertices) == 2


def test_figure_eight_is_reduced():
    g = figure_eight()
    assert reduce(g) == g


def test_key_examples():
    g = t3(crossings=3)
    assert canonical_key(half_turn(g, "v1")) == canonical_key(g)
    assert canonical_key(g) == canonical_key(t3(crossings=5))
    assert canonical_key(t3()) != canonical_key(figure_eight())


def test_equivalent_examples():
    assert equivalent(t3(), keg(T25_SPLIT))
    assert not equivalent(t3(), KnotEulerianGraph.trivial())
    assert equivalent(figure_eight(), figure_eight().reversed())


def test_mirror_flag():
    g = t3()
    assert canonical_key(mirror(g), True) == canonical_key(g, True)
    assert validate(mirror(g)) == []


@settings(max_examples=120, deadline=None)
@given(st.randoms(use_true_random=False))
def test_confluence(rng):
    g = random_graph(rng)
    keys = {canonical_key(reduce(g, random.Random(rng.random()))) for _ in range(5)}
    assert len(keys) == 1


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_every_step_keeps_one_component(rng):
    g = remove_empty(random_graph(rng))
    n = len(g.vertices)
    steps = 0
    while True:
        nxt = ri_minus_step(g, rng) or unify_step(g, rng)
        if nxt is None:
            break
        assert component_count(nxt) == 1 and validate(nxt) == []
        assert len(nxt.vertices) < len(g.vertices)
        g, steps = nxt, steps + 1
    assert steps <= n
