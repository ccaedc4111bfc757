from pathlib import Path

import pytest

from kegcalc.codec import parse_keg
from kegcalc.keg import Edge, KnotEulerianGraph, Vertex

DATA = Path(__file__).parent / "data"

T3_TEXT = "keg 1\nvertex v real parity=odd\nedge v.A.1 -> v.A.2\nedge v.B.2 -> v.B.1\n"


def keg(text: str) -> KnotEulerianGraph:
    return parse_keg("keg 1\n" + text)


def t3(parity: str = "odd", crossings=None) -> KnotEulerianGraph:
    return KnotEulerianGraph(
        (Vertex("v1", True, parity, crossings),),
        (Edge(("v1", ("A", 2)), ("v1", ("A", 1))), Edge(("v1", ("B", 2)), ("v1", ("B", 1)))))


def figure_eight(crossings=None) -> KnotEulerianGraph:
    c = crossings
    return keg(f"""
vertex a real parity=even{f' crossings={c}' if c else ''}
vertex b real parity=even{f' crossings={c}' if c else ''}
edge a.A.1 -> b.A.1
edge b.A.2 -> a.B.1
edge a.B.2 -> b.B.2
edge b.B.1 -> a.A.2
""")


def pretzel_233(crossings: bool = False) -> KnotEulerianGraph:
    from kegcalc.plumbing import pretzel_graph

    g = pretzel_graph((2, 3, 3))
    if crossings:
        return g
    return g.replace([v.__class__(v.id, v.real, v.parity, None) for v in g.vertices], g.edges)


@pytest.fixture
def corpus():
    from randgraphs import corpus_projections

    return corpus_projections(DATA / "alternating_knots.tsv")


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
