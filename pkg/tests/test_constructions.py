import pytest

from gnnshatter.bits import BitVector, all_bitvectors
from gnnshatter.constructions import (
    build_pl_gnn,
    build_pl_graph,
    build_sine_gnn,
    build_sine_graph,
    q_index,
    verify_q_bijection,
)
from gnnshatter.gnn import classify, forward, forward_by_degree
from gnnshatter.graph import SizeLimitError, degree_histogram
from gnnshatter.numerics import sin_bit_extract

from conftest import adjacency_sets


def test_q_index_examples():
    assert q_index(0, 1, 3) == 1
    assert q_index(2, 1, 3) == 5
    assert q_index(2, 2, 3) == 6
    assert q_index(3, 3, 3) == 7  # j = b: nothing above the inserted bit
    with pytest.raises(ValueError):
        q_index(4, 1, 3)
    with pytest.raises(ValueError):
        q_index(0, 4, 3)


def q_formula(i, j, b):
    iota = [(i >> (k - 1)) & 1 for k in range(1, b)]
    return (sum(iota[k - 1] * 2 ** (k - 1) for k in range(1, j))
            + 2 ** (j - 1)
            + sum(iota[k - 1] * 2**k for k in range(j, b)))


@pytest.mark.parametrize("b", range(1, 8))
def test_q_index_matches_sum_formula(b):
    for j in range(1, b + 1):
        for i in range(2 ** (b - 1)):
            assert q_index(i, j, b) == q_formula(i, j, b)


def test_q_bijection_small():
    assert verify_q_bijection(1, 1)
    assert sorted(q_index(i, 2, 3) for i in range(4)) == [2, 3, 6, 7]
    assert all(verify_q_bijection(b, j) for b in range(1, 9) for j in range(1, b + 1))


def test_pl_graph_examples():
    inst = build_pl_graph(1, 1)
    assert inst.order == 4
    assert degree_histogram(inst.graph).entries == ((1, 3), (3, 1))
    inst = build_pl_graph(2, 1)
    assert [inst.role(f"s_{i}").degree for i in range(2)] == [3, 5]
    adj = adjacency_sets(inst.graph)
    assert adj[1].isdisjoint({0}) and adj[0].isdisjoint({1})


@pytest.mark.parametrize("b", range(1, 6))
def test_pl_dummy_count(b):
    for j in range(1, b + 1):
        inst = build_pl_graph(b, j)
        inst.check_manifest()
        inst.graph.check()
        assert inst.role("dummy").stop - inst.role("dummy").start == sum(
            q_index(i, j, b) + 2 for i in range(2 ** (b - 1)))
        build_pl_graph(b, j, explicit=False).check_manifest()


def test_pl_gnn():
    spec = build_pl_gnn(BitVector((1,)))
    assert spec.layers[0].w_self == 1 and spec.layers[0].w_agg == -1
    assert spec.threshold == pytest.approx(0.5)
    spec = build_pl_gnn(BitVector((1, 0, 1)))
    assert spec.layers[0].w_self == 5


@pytest.mark.parametrize("b", range(1, 5))
def test_pl_family_explicit(b):
    graphs = [build_pl_graph(b, j).graph for j in range(1, b + 1)]
    for x in all_bitvectors(b):
        spec = build_pl_gnn(x)
        assert [forward(spec, g)[1] for g in graphs] == list(x.bits)


def test_pl_all_zero_never_fires():
    for b in range(1, 7):
        spec = build_pl_gnn(BitVector((0,) * b))
        assert all(classify(spec, build_pl_graph(b, j, explicit=False).graph) == 0 for j in range(1, b + 1))


def test_sine_graph_b1():
    inst = build_sine_graph(1, 1, explicit=True)
    assert inst.order == 18
    assert inst.role("r").degree == 3
    assert inst.role("s").degree == inst.role("t").degree == 15
    inst.check_manifest()
    inst.graph.check()


@pytest.mark.parametrize("b", range(1, 5))
def test_sine_manifests(b):
    for j in range(1, b + 1):
        imp = build_sine_graph(b, j)
        imp.check_manifest()
        assert imp.order == 4 ** (b + 1) + 2
        assert imp.role("s").degree == 4 ** (b + 1) - 1
        if b <= 3:
            exp = build_sine_graph(b, j, explicit=True)
            exp.check_manifest()
            assert degree_histogram(exp.graph) == imp.graph


def test_sine_size_cap():
    with pytest.raises(SizeLimitError):
        build_sine_graph(3, 1, explicit=True, max_vertices=100)


@pytest.mark.parametrize("b", range(1, 5))
def test_sine_readout_formula(b):
    for j in range(1, b + 1):
        hist = build_sine_graph(b, j).graph
        for x in all_bitvectors(b):
            expected = sin_bit_extract(x, j).scalar()
            got = forward_by_degree(build_sine_gnn(x), hist)
            assert got == expected and type(got) is type(expected)


def test_sine_gnn_examples():
    g = build_sine_graph(1, 1, explicit=True).graph
    final, out = forward(build_sine_gnn(BitVector((1,))), g)
    assert out == 1 and classify(build_sine_gnn(BitVector((1,))), g) == 1
    assert forward(build_sine_gnn(BitVector((0,))), g)[1] == 0
    spec = build_sine_gnn(BitVector((1, 0, 1)), depth=3)
    assert spec.depth == 3
    assert len(build_sine_gnn(BitVector((1, 1))).distinct_weights()) == 1
    with pytest.raises(ValueError):
        build_sine_gnn(BitVector((1,)), depth=0)
