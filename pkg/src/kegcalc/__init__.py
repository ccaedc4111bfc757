"""Knot Eulerian graphs and Move-1 enumeration for crosscap numbers of alternating knots."""

from .codec import PlumbTree, emit_keg, parse_keg, parse_tree
from .engine import Caps, ClassTable, Engine, apply_move1, enumerate_seeds, generate, move1_sites
from .keg import Edge, KnotEulerianGraph, Vertex, validate
from .oracle import oracle_uminus
from .projection import Projection, emit_gauss, from_projection, parse_gauss, to_projection
from .reducer import canonical_key, equivalent, reduce
from .results import CrosscapResult
from .solver import crosscap, detect_composite, surface_recipe

__version__ = "0.1.0"
