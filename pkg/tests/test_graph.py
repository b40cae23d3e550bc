import pytest
from hypothesis import given, strategies as st

from lap2.errors import Disconnected, DuplicateEdge, IndexOutOfRange, LoopEdge, NotUnicyclic, UnsupportedBicyclic
from lap2.families import Sun, UnicyclicTrees, generate
from lap2.graph import (
    build_graph,
    classify,
    components,
    cycle_edges,
    is_broken_sun,
    laplacian,
    one_edge_connect,
    split_join,
    two_core,
    unicyclic_decompose,
)

from conftest import join, path


def test_build_graph_validation():
    with pytest.raises(LoopEdge):
        build_graph(3, [(1, 1)])
    with pytest.raises(DuplicateEdge):
        build_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(IndexOutOfRange):
        build_graph(3, [(0, 3)])
    with pytest.raises(IndexOutOfRange):
        build_graph(0, [])
    g = build_graph(3, [(2, 0), (1, 0)])
    assert g.edges == ((0, 1), (0, 2))


def test_laplacian_rows_sum_to_zero(sun3):
    L = laplacian(sun3)
    assert all(sum(r) == 0 for r in L)
    assert [L[i][i] for i in range(6)] == [3, 3, 3, 1, 1, 1]


def test_classify_kinds(c3, c4):
    assert classify(path(5)).kind == "Tree"
    cls = classify(c4)
    assert cls.kind == "Unicyclic" and cls.girths == (4,)
    assert cls.cycles[0][0] == 0
    b = join(c3, c4, 1, 2)
    cls = classify(b)
    assert cls.kind == "Bicyclic" and cls.girths == (3, 4)
    with pytest.raises(Disconnected):
        classify(build_graph(4, [(0, 1), (2, 3)]))


def test_theta_graph_is_unsupported():
    # two triangles sharing the edge 0-1
    theta = build_graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    with pytest.raises(UnsupportedBicyclic):
        classify(theta)
    # figure eight: two triangles sharing vertex 0
    eight = build_graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    with pytest.raises(UnsupportedBicyclic):
        classify(eight)


def test_bicyclic_with_long_bridge_path(c3):
    # cycles connected through a path of length 3
    g = build_graph(9, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7), (7, 8)])
    assert classify(g).girths == (3, 3)
    assert two_core(g) == set(range(8))


def test_join_roundtrip(sun3, c4):
    g = one_edge_connect(sun3, c4, 4, 2)
    assert g.n == 10 and g.has_edge(4, 8)
    assert g.meta["join"] == [4, 8]
    a, b, u, v = split_join(g)
    assert (a, b, u, v) == (sun3, c4, 4, 2)
    with pytest.raises(IndexOutOfRange):
        one_edge_connect(sun3, c4, 6, 0)


def test_unicyclic_decompose():
    g = generate(UnicyclicTrees(3, ((-1,), (-1, 0, 1), (-1, 0))))
    parts = unicyclic_decompose(g)
    assert [p.order for p in parts] == [1, 3, 2]
    p = parts[1]
    assert max(p.depth.values()) == 2
    with pytest.raises(NotUnicyclic):
        unicyclic_decompose(path(4))


def test_broken_sun_detection(sun4):
    assert is_broken_sun(sun4)
    g = generate(UnicyclicTrees(3, ((-1,), (-1, 0, 1), (-1,))))
    assert not is_broken_sun(g)
    assert not is_broken_sun(path(3))


def test_cycle_edges_wraps():
    assert cycle_edges((0, 1, 2, 3)) == [(0, 1), (1, 2), (2, 3), (0, 3)]


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=14), st.integers(3, 7))
def test_random_tree_on_cycle_classifies_unicyclic(parents_seed, g):
    # random recursive tree hung on cycle vertex 0
    n_extra = len(parents_seed)
    edges = [(i, (i + 1) % g) for i in range(g)]
    for k, s in enumerate(parents_seed):
        v = g + k
        edges.append((s % v, v))
    G = build_graph(g + n_extra, edges)
    cls = classify(G)
    assert cls.kind == "Unicyclic" and cls.girths == (g,)
    assert sum(p.order for p in unicyclic_decompose(G)) == G.n
    assert len(components(G)) == 1


def test_remove_and_add_edges(c4):
    t = c4.remove_edges((0, 3))
    assert classify(t).kind == "Tree"
    assert t.add_edges((0, 3)) == c4
    with pytest.raises(IndexOutOfRange):
        c4.remove_edges((0, 2))


def test_induced_relabels(sun3):
    h, back = sun3.induced([0, 1, 3])
    assert back == [0, 1, 3]
    assert h.edges == ((0, 1), (0, 2))


def test_sun_meta(sun3):
    assert sun3.meta["family"] == Sun(3).to_dict()
