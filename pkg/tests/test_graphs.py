from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuramoto_ideal.catalog import EXAMPLE_K23, EXCEPTIONAL_8, NEGATIVE_WEIGHT_8, PENT_TRIANGLE
from kuramoto_ideal.graphs import (
    Graph,
    Graph6Error,
    GraphError,
    UnsupportedSizeError,
    canonical_form,
    canonical_key,
    chordless_cycles,
    complete_graph,
    connectivity_mu,
    cycle_graph,
    disjoint_union,
    enumerate_sct,
    find_closed_klets,
    find_klets,
    format_graph6,
    glue_c5,
    is_sct,
    klet_codim_bound,
    parse_edge_json,
    parse_edge_list,
    parse_graph6,
    path_graph,
)


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return set(g.edges())


# --- construction -------------------------------------------------------------

def test_rejects_self_loop():
    with pytest.raises(GraphError):
        Graph.from_edges([(0, 0)])


def test_rejects_asymmetric_adjacency():
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))


def test_duplicate_edges_idempotent():
    g = parse_edge_list([(0, 1), (1, 0)])
    assert g.n == 2 and g.edges() == [(0, 1)]


def test_edge_list_five_cycle():
    g = parse_edge_list([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert g == cycle_graph(5)


def test_edge_list_exceptional_graph():
    g = parse_edge_list([(0, 4), (1, 4), (1, 5), (3, 5), (2, 6), (3, 6), (0, 7), (2, 7),
                         (4, 5), (5, 6), (6, 7), (4, 7)])
    assert g == EXCEPTIONAL_8 and g.edge_count == 12


def test_edge_json_forms():
    assert parse_edge_json('{"n": 4, "edges": [[0, 1]]}').n == 4
    assert parse_edge_json("[[0, 1], [1, 2]]") == path_graph(3)
    with pytest.raises(GraphError):
        parse_edge_json("{not json")


# --- graph6 -------------------------------------------------------------------

def test_graph6_k4():
    assert parse_graph6("C~") == complete_graph(4)


def test_graph6_two_vertices():
    # '?' (63) is the zero payload; '_' (95) sets the single bit
    assert parse_graph6("A?").edge_count == 0
    assert parse_graph6("A_").edges() == [(0, 1)]


def test_graph6_star_by_hand():
    # '?' '{' -> payload 000000 111100: pairs (0,4),(1,4),(2,4),(3,4)
    assert parse_graph6("D?{").edges() == [(0, 4), (1, 4), (2, 4), (3, 4)]


def test_graph6_matches_networkx(rng):
    nx = pytest.importorskip("networkx")
    for text in ["D?{", "C~", "DLo", "EBjG", "G?pXlS"]:
        h = nx.from_graph6_bytes(text.encode())
        assert edge_set(parse_graph6(text)) == {tuple(sorted(e)) for e in h.edges()}
    for _ in range(30):
        n = int(rng.integers(2, 12))
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        g = Graph.from_edges(edges, n=n)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(edges)
        assert format_graph6(g) == nx.to_graph6_bytes(h, header=False).decode().strip()


def test_graph6_header_and_round_trip():
    assert parse_graph6(">>graph6<<C~\n") == complete_graph(4)
    for g in [EXCEPTIONAL_8, NEGATIVE_WEIGHT_8, cycle_graph(9)]:
        assert parse_graph6(format_graph6(g)) == g


@pytest.mark.parametrize("text,offset", [("C~~", 2), ("C", 1), ("C\x20", 1), ("", 0)])
def test_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


# --- SCT and mu -----------------------------------------------------------------

def test_is_sct_examples():
    assert is_sct(cycle_graph(5))
    assert not is_sct(path_graph(3))
    assert not is_sct(disjoint_union(cycle_graph(3), cycle_graph(3)))
    assert is_sct(NEGATIVE_WEIGHT_8)


def test_connectivity_mu():
    assert connectivity_mu(complete_graph(6)) == 1
    assert connectivity_mu(cycle_graph(5)) == Fraction(1, 2)
    assert connectivity_mu(EXCEPTIONAL_8) == Fraction(2, 7)


# --- canonical keys -------------------------------------------------------------

def brute_key(g: Graph) -> bytes:
    best = None
    for perm in itertools.permutations(range(g.n)):
        code = format_graph6(g.relabel(perm)).encode()
        best = code if best is None or code < best else best
    return best


@pytest.mark.parametrize("g", [cycle_graph(5), PENT_TRIANGLE, EXAMPLE_K23, complete_graph(4), path_graph(6)])
def test_canonical_key_matches_brute_force(g):
    assert canonical_key(g) == brute_key(g)


def test_canonical_key_invariant_under_relabelling(rng):
    for g in [cycle_graph(5), EXCEPTIONAL_8, NEGATIVE_WEIGHT_8, PENT_TRIANGLE]:
        key = canonical_key(g)
        for _ in range(50):
            assert canonical_key(g.relabel(list(rng.permutation(g.n)))) == key


def test_canonical_key_distinguishes():
    chorded = Graph.from_edges(cycle_graph(5).edges() + [(0, 2)])
    assert canonical_key(cycle_graph(5)) != canonical_key(chorded)


def test_canonical_key_complete_graph():
    assert canonical_key(complete_graph(4)) == b"C~"


def test_canonical_key_size_limit():
    with pytest.raises(UnsupportedSizeError):
        canonical_key(cycle_graph(9))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=3, max_value=7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))),
                        st.permutations(list(range(n))))))
def test_canonical_key_property(data):
    n, pairs, perm = data
    g = Graph.from_edges([p for p in pairs if p[0] != p[1]], n=n)
    assert canonical_key(g) == canonical_key(g.relabel(perm))
    assert canonical_key(canonical_form(g)) == canonical_key(g)


# --- enumeration ----------------------------------------------------------------

@pytest.mark.parametrize("n,count", [(4, 3), (5, 11), (6, 61)])
def test_enumerate_sct_counts(n, count):
    graphs = enumerate_sct(n)
    assert len(graphs) == count
    keys = [canonical_key(g) for g in graphs]
    assert keys == sorted(keys) and len(set(keys)) == count
    assert all(is_sct(g) for g in graphs)


def test_enumerate_sct_matches_networkx_atlas():
    nx = pytest.importorskip("networkx")
    from networkx.generators.atlas import graph_atlas_g
    for n in (4, 5, 6):
        atlas = [h for h in graph_atlas_g() if h.number_of_nodes() == n
                 and nx.is_connected(h) and min(d for _, d in h.degree()) >= 2]
        assert len(atlas) == len(enumerate_sct(n))


def test_enumerate_sct_range():
    with pytest.raises(UnsupportedSizeError):
        enumerate_sct(7)


# --- k-lets ---------------------------------------------------------------------

def test_klets_example_k23():
    lets = find_klets(EXAMPLE_K23)
    assert [(s.vertices, s.shared_neighborhood) for s in lets] == [((2, 3, 4), (0, 1)), ((0, 1), (2, 3, 4))]
    assert klet_codim_bound(EXAMPLE_K23) == 3


def test_klets_empty_cases():
    assert find_klets(cycle_graph(5)) == []
    assert find_klets(complete_graph(5)) == []
    assert klet_codim_bound(cycle_graph(6)) is None


def test_klet_bound_complete_graph_uses_closed_neighbourhoods():
    for n in range(3, 8):
        assert klet_codim_bound(complete_graph(n)) == 1


def test_klets_exact_and_maximal(sct8):
    for g in sct8:
        for closed, lets in ((False, find_klets(g)), (True, find_closed_klets(g))):
            def nbhd(v):
                return set(g.neighbors(v)) | ({v} if closed else set())
            for s in lets:
                assert all(nbhd(v) == set(s.shared_neighborhood) for v in s.vertices)
                outside = [v for v in range(g.n) if v not in s.vertices]
                assert all(nbhd(v) != set(s.shared_neighborhood) for v in outside)


# --- chordless cycles -------------------------------------------------------------

def brute_chordless(g: Graph, min_len: int) -> list[list[int]]:
    """Induced subgraphs that are cycles, via subset enumeration."""
    out = []
    for k in range(max(min_len, 3), g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            s = set(sub)
            if any(len(set(g.neighbors(v)) & s) != 2 for v in sub):
                continue
            # connected 2-regular induced subgraph is a single cycle
            start = sub[0]
            order, prev, cur = [start], None, start
            while True:
                nxt = [w for w in g.neighbors(cur) if w in s and w != prev]
                nxt = nxt[0] if prev is not None else min(nxt)
                if nxt == start:
                    break
                order.append(nxt)
                prev, cur = cur, nxt
            if len(order) == k:
                if order[-1] < order[1]:
                    order = [order[0]] + order[1:][::-1]
                out.append(order)
    return sorted(out)


def test_chordless_examples():
    assert chordless_cycles(cycle_graph(5), 5) == [[0, 1, 2, 3, 4]]
    assert chordless_cycles(EXCEPTIONAL_8, 5) == []
    assert chordless_cycles(PENT_TRIANGLE, 5) == [[0, 1, 2, 3, 4]]


def test_chordless_matches_brute_force(sct8):
    for g in sct8[:40] + [EXCEPTIONAL_8, NEGATIVE_WEIGHT_8, PENT_TRIANGLE]:
        for m in (4, 5):
            assert chordless_cycles(g, m) == brute_chordless(g, m)


def test_chordless_matches_networkx(sct8):
    nx = pytest.importorskip("networkx")
    if not hasattr(nx, "chordless_cycles"):
        pytest.skip("networkx too old")
    for g in sct8[:30]:
        h = nx.Graph(g.edges())
        theirs = sorted(len(c) for c in nx.chordless_cycles(h) if len(c) >= 4)
        assert theirs == sorted(len(c) for c in chordless_cycles(g, 4))


# --- gluing -----------------------------------------------------------------------

def test_glue_c5_shapes():
    g1 = glue_c5(1)
    assert g1.n == 6 and set(g1.edges()) == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (4, 5)}
    g2 = glue_c5(2)
    assert g2.n == 7 and g2.edge_count == 9


def test_glue_c5_with_triangle_is_k5_pentagon():
    from kuramoto_ideal.catalog import K5C5
    assert canonical_key(glue_c5(3, complete_graph(3))) == canonical_key(K5C5)


@pytest.mark.parametrize("d", range(1, 9))
def test_glue_c5_degrees(d):
    g = glue_c5(d)
    assert g.degree(0) == g.degree(4) == d + 2
    assert all(g.degree(v) >= 2 for v in range(5, 5 + d))
    assert is_sct(g)
