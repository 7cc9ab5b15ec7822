"""Algebraic and dynamical analysis of homogeneous Kuramoto oscillator networks."""

from .graphs import Graph, canonical_key, enumerate_sct, is_sct, parse_graph6
from .dynamics import SearchParams, multistart_search, residual
from .stability import Classification

__all__ = [
    "Classification",
    "Graph",
    "SearchParams",
    "canonical_key",
    "enumerate_sct",
    "is_sct",
    "multistart_search",
    "parse_graph6",
    "residual",
]

__version__ = "0.1.0"
