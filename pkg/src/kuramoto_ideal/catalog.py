"""Named graphs used in the worked examples."""

from __future__ import annotations

from .graphs import Graph, complete_graph, cycle_graph, glue_c5

# vertices 0, 1 joined to each of 2, 3, 4 (K_{2,3}); {2, 3, 4} is a 3-let
EXAMPLE_K23 = Graph.from_edges([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])

# eight vertices, exotic twisted states, no induced cycle of length >= 5
EXCEPTIONAL_8 = Graph.from_edges([
    (0, 4), (1, 4), (1, 5), (3, 5), (2, 6), (3, 6),
    (0, 7), (2, 7), (4, 5), (5, 6), (6, 7), (4, 7),
])

# K5 on 0..4 sharing edge {0, 1} with the pentagon 0-5-6-7-1
K5C5 = Graph.from_edges([
    (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4),
    (2, 3), (2, 4), (3, 4), (0, 5), (5, 6), (6, 7), (1, 7),
])

PENT_PENT = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 1)])

HEX_PENT = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 8), (8, 1)])

# stable exotic state with some negative Jacobian weights
NEGATIVE_WEIGHT_8 = Graph.from_edges([
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 5), (0, 2), (5, 7), (2, 7),
])

# pentagon and triangle sharing an edge
PENT_TRIANGLE = glue_c5(1)

NAMED = {
    "k23": EXAMPLE_K23,
    "exceptional8": EXCEPTIONAL_8,
    "k5c5": K5C5,
    "pentpent": PENT_PENT,
    "hexpent": HEX_PENT,
    "negweight8": NEGATIVE_WEIGHT_8,
    "pent-triangle": PENT_TRIANGLE,
    "c5": cycle_graph(5),
    "c6": cycle_graph(6),
    "k4": complete_graph(4),
    "k5": complete_graph(5),
}
