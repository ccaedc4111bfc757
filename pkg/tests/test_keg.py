import pytest

from kegcalc.codec import parse_keg
from kegcalc.keg import (EmbeddingError, KnotEulerianGraph, StructuralError, component_count,
                         faces, orient, strand_visits, validate)

from conftest import T3_TEXT, figure_eight, keg, t3


def test_t3_valid_single_circuit():
    g = parse_keg(T3_TEXT)
    assert validate(g) == []
    assert component_count(g) == 1
    assert len(faces(g)) == 3


def test_trivial_graph_conventions():
    g = KnotEulerianGraph.trivial()
    assert validate(g) == []
    assert component_count(g) == 1
    assert len(faces(g)) == 2


def test_slot_conflict_reported():
    g = KnotEulerianGraph(
        t3().vertices,
        t3().edges[:1] + (t3().edges[0].__class__(("v1", ("A", 2)), ("v1", ("B", 1))),))
    problems = validate(g)
    assert any("A.2" in p for p in problems)


def test_even_trace_closure_is_two_components():
    g = t3("even")
    assert component_count(g) == 2
    assert any("component" in p for p in validate(g))


def test_figure_eight_euler_formula():
    g = figure_eight()
    assert validate(g) == []
    assert len(g.vertices) - len(g.edges) + len(faces(g)) == 2


def test_strand_visits_real_twice_empty_once():
    g = keg("""
vertex v real parity=odd
vertex z empty
edge v.A.2 -> z.none
edge z.none -> v.A.1
edge v.B.2 -> v.B.1
""")
    visits = strand_visits(g)
    assert visits["v"] == 2 and visits["z"] == 1


def test_orient_repairs_backward_arrows():
    g = t3()
    flipped = g.replace(g.vertices, [g.edges[0].reversed(), g.edges[1]])
    with pytest.raises(StructuralError):
        component_count(flipped)
    assert component_count(orient(flipped)) == 1


def test_nonplanar_rotation_rejected():
    # two odd vertices wired so the rotation system has genus one
    g = keg("""
vertex a real parity=odd
vertex b real parity=odd
edge a.A.2 -> b.A.1
edge b.B.2 -> a.A.1
edge a.B.2 -> b.B.1
edge b.A.2 -> a.B.1
""")
    assert component_count(g) == 1
    with pytest.raises(EmbeddingError):
        faces(g)
    assert any("sphere" in p for p in validate(g))
