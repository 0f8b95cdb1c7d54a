import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lbtree.families import sharpness_graph
from lbtree.graph import (
    DuplicateEdgeError,
    EdgeListFormatError,
    SelfLoopError,
    VertexOutOfRange,
    build_graph,
    degree,
    format_edge_list,
    is_connected,
    neighbor_union,
    parse_edge_list,
    read_edge_list,
    to_dot,
    write_edge_list,
)

from conftest import complete, path


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


def test_triangle():
    G = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert G.m == 3
    assert G.adjacency == ((1, 2), (0, 2), (0, 1))


def test_construction_errors():
    with pytest.raises(SelfLoopError):
        build_graph(2, [(0, 0)])
    with pytest.raises(VertexOutOfRange):
        build_graph(2, [(0, 2)])
    with pytest.raises(DuplicateEdgeError):
        build_graph(3, [(0, 1), (0, 1)])
    with pytest.raises(DuplicateEdgeError):
        build_graph(3, [(0, 1), (1, 0)])


def test_sharpness_m1_edge_count():
    assert sharpness_graph(1).m == 5


def test_degree():
    assert degree(complete(3), 0) == 2
    assert degree(path(3), 1) == 2
    assert degree(sharpness_graph(1), 4) == 3
    with pytest.raises(VertexOutOfRange):
        degree(path(3), 3)


def test_connectivity():
    assert is_connected(path(4))
    assert not is_connected(build_graph(4, [(0, 1), (2, 3)]))
    for m in (1, 2, 3, 5):
        assert is_connected(sharpness_graph(m))
    assert is_connected(build_graph(1, []))


def test_neighbor_union():
    assert neighbor_union(complete(3), {0}) == {1, 2}
    assert neighbor_union(path(4), {0, 3}) == {1, 2}
    assert neighbor_union(path(4), set()) == frozenset()
    with pytest.raises(VertexOutOfRange):
        neighbor_union(path(4), {7})


def test_immutable():
    G = path(3)
    with pytest.raises(AttributeError):
        G.n = 5
    with pytest.raises(ValueError):
        G.adjacency_masks()[0] = 1


@given(graphs())
def test_invariants(G):
    for v in range(G.n):
        assert v not in G.adjacency[v]
        for w in G.adjacency[v]:
            assert v in G.adjacency[w]
        assert neighbor_union(G, {v}) == frozenset(G.adjacency[v])
    assert sum(G.degree(v) for v in range(G.n)) == 2 * G.m
    assert parse_edge_list(format_edge_list(G)) == G


@given(graphs(max_n=10))
def test_connectivity_matches_networkx(G):
    nx = pytest.importorskip("networkx")
    if G.n == 0:
        assert not is_connected(G)
        return
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    assert is_connected(G) == nx.is_connected(H)


@settings(max_examples=30)
@given(graphs(max_n=64))
def test_masks_match_adjacency(G):
    masks = G.adjacency_masks()
    mat = G.adjacency_matrix()
    for v in range(G.n):
        bits = {w for w in range(G.n) if int(masks[v]) >> w & 1}
        assert bits == set(G.adjacency[v]) == set(np.flatnonzero(mat[v]).tolist())


@pytest.mark.parametrize("text", [
    "",
    "3\n",
    "3 1\n0 1\n1 2\n",
    "3 1\n1 0\n",
    "3 1\n0 3\n",
    "3 1\n0 -1\n",
    "3 1\n0  1\n",
    "3 1 # comment\n0 1\n",
    "x y\n",
])
def test_parse_rejects(text):
    with pytest.raises((EdgeListFormatError, VertexOutOfRange)):
        parse_edge_list(text)


def test_file_round_trip(tmp_path):
    G = sharpness_graph(2)
    target = tmp_path / "g.txt"
    write_edge_list(G, target)
    assert target.read_text().splitlines()[0] == "10 13"
    assert read_edge_list(target) == G


def test_dot_export():
    dot = to_dot(path(3))
    assert dot.startswith("graph G {")
    assert "0 -- 1;" in dot and "1 -- 2;" in dot
