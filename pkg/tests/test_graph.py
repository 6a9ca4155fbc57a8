import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gnnshatter.constructions import build_pl_graph, build_sine_graph
from gnnshatter.graph import (
    DegreeHistogram,
    Graph,
    GraphError,
    complete_graph,
    degree,
    degree_histogram,
    empty_graph,
    make_circulant_regular,
    star_graph,
    union_and_join,
)

from conftest import adjacency_sets, random_graph


def test_degree_basic():
    assert degree(empty_graph(1), 0) == 0
    k3 = complete_graph(3)
    assert [degree(k3, v) for v in range(3)] == [2, 2, 2]
    with pytest.raises(GraphError):
        degree(k3, 3)


def test_from_edges_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1)], labels=[0])


def test_graph_is_immutable():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        g.indices[0] = 2


@pytest.mark.parametrize("order,k", [(3, 0), (5, 2), (14, 12), (9, 4), (1, 0), (770, 768)])
def test_circulant_is_k_regular(order, k):
    g = make_circulant_regular(order, k)
    g.check()
    assert g.n == order
    # brute-force degree from edge list
    assert all(len(a) == k for a in adjacency_sets(g))


def test_circulant_errors():
    with pytest.raises(GraphError):
        make_circulant_regular(5, 3)
    with pytest.raises(GraphError):
        make_circulant_regular(4, 4)


def test_five_cycle():
    g = make_circulant_regular(5, 2)
    assert sorted(map(tuple, g.edge_list().tolist())) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


def test_histograms():
    assert degree_histogram(complete_graph(3)).entries == ((2, 3),)
    assert degree_histogram(star_graph(4)).entries == ((1, 4), (4, 1))
    with pytest.raises(GraphError):
        DegreeHistogram(((2, 1), (1, 1)))
    with pytest.raises(GraphError):
        DegreeHistogram(((3, 2),))


@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_pl_histogram_matches_explicit(b):
    for j in range(1, b + 1):
        explicit = build_pl_graph(b, j)
        implicit = build_pl_graph(b, j, explicit=False)
        assert degree_histogram(explicit.graph) == implicit.graph
        # one entry per hub plus the dummies
        assert len(implicit.graph.entries) == (1 << (b - 1)) + 1
        assert implicit.graph.entries[0][0] == 1


def test_union_and_join_small():
    g = union_and_join([empty_graph(1), empty_graph(1)], [(0, 1)])
    assert g.edge_list().tolist() == [[0, 1]]
    g = union_and_join([empty_graph(1), empty_graph(3)], [(0, 1)])
    assert degree(g, 0) == 3
    with pytest.raises(GraphError):
        union_and_join([empty_graph(1)], [(0, 1)])
    with pytest.raises(GraphError):
        union_and_join([empty_graph(1), empty_graph(1)], [(0, 1), (1, 0)])


def test_sine_assembly_degrees_b1():
    inst = build_sine_graph(1, 1, explicit=True)
    g = inst.graph
    adj = adjacency_sets(g)
    assert g.n == 18
    assert len(adj[0]) == 3
    assert {len(adj[v]) for v in range(1, 18)} == {15}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=4), st.data())
def test_join_degree_law(sizes, data):
    parts = [make_circulant_regular(s, 2) if s >= 3 else empty_graph(s) for s in sizes]
    pairs = [(a, b) for a in range(len(parts)) for b in range(a + 1, len(parts))]
    joins = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = union_and_join(parts, joins)
    g.check()
    offsets = np.cumsum([0] + sizes)
    for p, part in enumerate(parts):
        extra = sum(sizes[b] for a, b in joins if a == p) + sum(sizes[a] for a, b in joins if b == p)
        for v in range(part.n):
            assert degree(g, offsets[p] + v) == degree(part, v) + extra


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 25), st.floats(0, 1), st.integers(0, 10**6))
def test_random_graph_invariants(n, p, seed):
    g = random_graph(n, p, seed, labels=3)
    g.check()
    h = degree_histogram(g)
    assert h.order == n
    assert all(h.count(d) == int((g.degrees() == d).sum()) for d, _ in h.entries)
    perm = np.random.default_rng(seed).permutation(n)
    gp = g.permute(perm)
    gp.check()
    assert degree_histogram(gp) == h
