import pytest
from hypothesis import given, settings, strategies as st

from kegcalc.engine import Caps, Engine
from kegcalc.keg import KnotEulerianGraph
from kegcalc.oracle import oracle_uminus
from kegcalc.plumbing import pretzel_graph
from kegcalc.projection import from_projection, parse_gauss
from kegcalc.reducer import canonical_key
from kegcalc.results import EXACT, UNKNOWN, UPPER_BOUND, CrosscapResult
from kegcalc.solver import (Band, CompositeInput, ConnectedSum, DeformedPlumb, Plumb,
                            SurfaceRecipe, band_count, crosscap, detect_composite, emit_recipe,
                            parse_recipe, surface_recipe)

from conftest import figure_eight, keg, t3
from test_reducer import GRANNY

CAPS = Caps(budget=4, max_level=3)


@pytest.mark.parametrize("graph, value", [
    (t3(), 1),
    (t3(crossings=3), 1),
    (figure_eight(), 2),
    (figure_eight(2), 2),
    (KnotEulerianGraph.trivial(), 0),
    (pretzel_graph((2, 1, 1)), 2),
])
def test_small_values(graph, value):
    r = crosscap(graph, CAPS)
    assert (r.value, r.status) == (value, EXACT)


def test_composite_rejected():
    with pytest.raises(CompositeInput) as err:
        crosscap(keg(GRANNY), CAPS)
    assert len(err.value.report.summands) == 2


def test_detect_composite_examples():
    rep = detect_composite(keg(GRANNY))
    assert not rep.prime
    assert {canonical_key(s) for s in rep.summands} == {canonical_key(t3())}
    assert detect_composite(t3()).prime
    assert detect_composite(KnotEulerianGraph.trivial()).prime


def test_engine_prime_classes_have_no_cut():
    table = Engine(Caps(budget=4, max_level=2)).extend(2)
    for rec in table.records.values():
        if not rec.composite:
            assert detect_composite(rec.representative).prime


def test_unknown_when_caps_too_small():
    r = crosscap(figure_eight(), Caps(budget=2, max_level=1))
    assert r.status == UNKNOWN and r.value is None


def test_upper_bound_when_budget_is_short():
    # 5_2 as a five crossing diagram needs a 3-crossing seed for exactness
    g = from_projection(parse_gauss("1,2,3,1,4,5,2,3,5,4"))
    r = crosscap(g, Caps(budget=2, max_level=3))
    assert r.status in (UPPER_BOUND, UNKNOWN)
    assert crosscap(g, Caps(budget=4, max_level=3)).status == EXACT


def test_family_invariance_without_crossings():
    a = crosscap(t3(), CAPS)
    b = crosscap(keg("""
vertex u real parity=odd
vertex v real parity=even
edge u.A.2 -> v.A.1
edge u.B.2 -> v.B.1
edge v.A.2 -> u.A.1
edge v.B.2 -> u.B.1
"""), CAPS)
    assert (a.value, a.status) == (b.value, b.status)


@pytest.mark.parametrize("code", ["1,2,3,1,2,3", "1,2,3,1,4,3,2,4", "1,2,3,4,5,1,2,3,4,5",
                                  "1,2,3,1,4,5,2,3,5,4"])
def test_agrees_with_oracle(code):
    p = parse_gauss(code)
    r = crosscap(from_projection(p), Caps(budget=p.crossings - 1, max_level=3))
    o = oracle_uminus(p.code)
    assert r.status == o.status == EXACT and r.value == o.value


def test_recipe_band_counts():
    for g, bands in [(t3(crossings=3), 1), (figure_eight(2), 2)]:
        r = crosscap(g, CAPS)
        recipe = surface_recipe(r)
        assert band_count(recipe) == bands == r.value
        assert isinstance(recipe.steps[0], Band)
    assert surface_recipe(crosscap(KnotEulerianGraph.trivial(), CAPS)).steps == ()


def test_figure_eight_recipe_text():
    r = crosscap(figure_eight(2), CAPS)
    assert emit_recipe(surface_recipe(r)) == "band k=+1\nband k=+1\ndplumb onto=0 t=+1\n"


def test_recipe_needs_witness():
    with pytest.raises(ValueError):
        surface_recipe(CrosscapResult(None, UNKNOWN))


def test_recipe_text_examples():
    text = "band k=+1\nband k=-3\nplumb onto=0\nsum {\n  band k=+2\n} {\n  band k=+1\n}\n"
    r = parse_recipe(text)
    assert isinstance(r.steps[-1], ConnectedSum)
    assert band_count(r) == 4
    assert emit_recipe(r) == text
    with pytest.raises(ValueError):
        parse_recipe("bend k=1")


steps = st.one_of(st.builds(Band, st.integers(-5, 5)), st.builds(Plumb, st.integers(0, 9)),
                  st.builds(DeformedPlumb, st.integers(0, 9), st.integers(-3, 3)))
recipes = st.recursive(
    st.lists(steps, max_size=4).map(lambda s: SurfaceRecipe(tuple(s))),
    lambda inner: st.tuples(st.lists(steps, max_size=3), inner, inner).map(
        lambda t: SurfaceRecipe(tuple(t[0]) + (ConnectedSum(t[1], t[2]),))),
    max_leaves=4)


@settings(max_examples=100)
@given(recipes)
def test_recipe_round_trip(r):
    assert parse_recipe(emit_recipe(r)) == r
