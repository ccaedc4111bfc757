import random

import pytest
from hypothesis import given, settings, strategies as st

from kegcalc import diagram as dg
from kegcalc.keg import KnotEulerianGraph, component_count, validate
from kegcalc.projection import (NonRealizable, NotAlternating, Projection, emit_gauss,
                                from_projection, parse_gauss, r1_reduce, readings,
                                to_projection)
from kegcalc.reducer import canonical_key, reduce

from conftest import t3
from randgraphs import random_graph, random_projection


def test_non_realizable_code():
    with pytest.raises(NonRealizable):
        parse_gauss("1,2,3,4,1,2,3,4")


def test_label_twice_rule():
    with pytest.raises(ValueError):
        parse_gauss("1,2,1")


def test_not_alternating_flagged():
    with pytest.raises(NotAlternating):
        parse_gauss("O1-,O2-,U1-,U2-", require_alternating=True)


def test_trefoil_graph_is_t3():
    g = from_projection(parse_gauss("1,2,3,1,2,3"))
    assert validate(g) == []
    assert canonical_key(reduce(g)) == canonical_key(reduce(t3()))
    assert g.real_vertices[0].crossings == 3


def test_emit_then_parse_same_projection():
    p = parse_gauss("1,2,3,1,4,3,2,4")
    q = parse_gauss(emit_gauss(p))
    assert q.canonical == p.canonical
    assert parse_gauss(emit_gauss(p, bare=True)).canonical == p.canonical


def test_r1_reduce_removes_curls():
    nbr = dg.add_curl(dg.add_curl(parse_gauss("1,2,3,1,2,3").nbr, 0, True), 5, False)
    core, _, _ = r1_reduce(nbr)
    assert dg.canonical_form(core) == parse_gauss("1,2,3,1,2,3").canonical
    assert Projection(dg.add_curl(dg.CIRCLE, 0, True)).is_r1_trivial()


def test_trivial_round_trip():
    assert to_projection(KnotEulerianGraph.trivial()).nbr == dg.CIRCLE
    assert from_projection(Projection()).is_trivial


def test_to_projection_default_twists():
    p = to_projection(t3())
    assert p.crossings == 3
    assert component_count(from_projection(p)) == 1


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_projection_round_trip(rng):
    g = random_graph(rng)
    back = from_projection(to_projection(g))
    assert validate(back) == []
    assert canonical_key(reduce(back)) == canonical_key(reduce(g))


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_curls_do_not_change_the_family(rng):
    p = random_projection(rng)
    core = Projection(r1_reduce(p.nbr)[0])
    assert canonical_key(reduce(from_projection(p))) == canonical_key(reduce(from_projection(core)))


def strip_crossings(g):
    return g.replace([v.__class__(v.id, v.real, v.parity, None) for v in g.vertices], g.edges)


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_graph_is_a_reading_of_its_diagram(rng):
    g = random_graph(rng)
    keys = {canonical_key(h) for h in readings(to_projection(g))}
    assert canonical_key(g) in keys


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_family_round_trip_without_crossings(rng):
    g = strip_crossings(random_graph(rng))
    assert canonical_key(from_projection(to_projection(g))) == canonical_key(g)


def test_one_diagram_two_families():
    # a lone odd crossing reads along either axis: two inequivalent graphs share a diagram
    g = random_graph(random.Random(1079))
    p = to_projection(g)
    h = from_projection(p)
    assert to_projection(h).canonical == p.canonical
    assert canonical_key(h) != canonical_key(g)
    assert {canonical_key(g), canonical_key(h)} <= {canonical_key(x) for x in readings(p)}
