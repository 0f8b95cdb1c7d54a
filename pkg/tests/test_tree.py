import pytest

from lbtree.families import sharpness_graph
from lbtree.graph import build_graph
from lbtree.tree import (
    Shape,
    SpanningSubtree,
    TooManyBranches,
    TreeError,
    decompose,
    metrics,
    score,
    tree_distance,
    tree_path,
    tree_to_dot,
)

from conftest import complete, cycle, path, prufer_tree_edges, star


def whole(G):
    return SpanningSubtree(G, G.edges())


def spider(legs):
    """Centre 0 with paths of the given lengths."""
    edges, nxt = [], 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return build_graph(nxt, edges)


def test_construction_checks():
    G = cycle(4)
    with pytest.raises(TreeError):
        SpanningSubtree(G, G.edges())  # cycle
    with pytest.raises(TreeError):
        SpanningSubtree(G, [(0, 2)])  # not a host edge
    with pytest.raises(TreeError):
        SpanningSubtree(G, [(0, 1)], vertices=[0, 1, 2])  # disconnected
    single = SpanningSubtree(G, [], vertices=[2])
    assert len(single) == 1 and not single.is_spanning()
    with pytest.raises(TreeError):
        metrics(single)


def test_metrics_examples():
    m = metrics(whole(path(5)))
    assert (len(m.leaves), len(m.branches), m.score) == (2, 0, 2)
    m = metrics(whole(star(6)))
    assert (len(m.leaves), len(m.branches), m.score) == (6, 1, 7)
    m = metrics(whole(sharpness_graph(1)))
    assert (len(m.leaves), len(m.branches), m.score) == (4, 2, 6)


def test_paths():
    T = whole(path(4))
    assert tree_path(T, 0, 3) == [0, 1, 2, 3] and tree_distance(T, 0, 3) == 3
    assert tree_path(T, 2, 2) == [2]
    S = whole(sharpness_graph(1))
    assert tree_path(S, 4, 5) == [4, 5]
    with pytest.raises(TreeError):
        tree_path(SpanningSubtree(path(4), [(0, 1)]), 0, 3)


def test_paths_reverse(rng):
    for _ in range(50):
        n = int(rng.integers(2, 30))
        G = build_graph(n, prufer_tree_edges(n, rng))
        T = whole(G)
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        assert tree_path(T, u, v) == tree_path(T, v, u)[::-1]


def test_decompose_examples():
    assert decompose(whole(path(6))).shape is Shape.PATH
    dec = decompose(whole(spider([1, 2, 3, 2, 1])))
    assert dec.shape is Shape.ONE_BRANCH and dec.r == 0 and len(dec.legs) == 5
    assert sorted(len(leg) for leg in dec.legs) == [1, 1, 2, 2, 3]
    dec = decompose(whole(sharpness_graph(1)))
    assert dec.shape is Shape.TWO_BRANCH and {dec.s, dec.t} == {4, 5}
    assert dec.s == 4  # equal degrees: smaller id
    assert dec.spine == () and dec.distance() == 1
    assert sorted(leg.vertices for leg in dec.legs) == [frozenset({i}) for i in range(4)]


def test_decompose_unequal_degrees():
    # s = 5 has degree 4, t = 0 has degree 3; spine 0-6-5
    G = build_graph(10, [(0, 1), (0, 2), (0, 6), (6, 5), (5, 7), (5, 8), (5, 3), (3, 4), (2, 9)])
    dec = decompose(whole(G))
    assert (dec.s, dec.t, dec.spine, dec.distance()) == (5, 0, (6,), 2)
    assert [leg.leaf for leg in dec.legs_at(5)] == [4, 7, 8]
    assert [leg.path for leg in dec.legs_at(0)] == [(1,), (2, 9)]


def test_decompose_rejects_three_branches():
    G = build_graph(10, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (3, 7), (7, 8), (7, 9)])
    with pytest.raises(TooManyBranches):
        decompose(whole(G))


def test_decomposition_partitions(rng):
    checked = 0
    while checked < 200:
        n = int(rng.integers(2, 25))
        T = whole(build_graph(n, prufer_tree_edges(n, rng)))
        try:
            dec = decompose(T)
        except TooManyBranches:
            continue
        checked += 1
        parts = [leg.vertices for leg in dec.legs] + [frozenset(dec.spine)]
        parts.append(frozenset(v for v in (dec.s, dec.t) if v is not None))
        if dec.shape is Shape.PATH:
            continue
        assert sum(len(p) for p in parts) == n
        assert frozenset().union(*parts) == T.vertices
        hubs = {dec.s, dec.t} - {None}
        for leg in dec.legs:
            assert T.degree(leg.leaf) == 1
            assert leg.side in hubs and leg.attach in T.neighbors(leg.side)
            touching = [v for v in leg.path if set(T.neighbors(v)) & hubs]
            assert touching == [leg.attach]


def test_tree_identities(rng):
    for _ in range(500):
        n = int(rng.integers(2, 51))
        T = whole(build_graph(n, prufer_tree_edges(n, rng)))
        m = metrics(T)
        assert sum(T.degree(v) - 2 for v in T.vertices) == -2
        assert len(m.leaves) == 2 + sum(T.degree(b) - 2 for b in m.branches)
        if len(m.branches) >= 2:
            assert len(m.leaves) >= 4
        if m.score <= 5:
            assert len(m.branches) <= 1


def test_replace_is_persistent():
    G = cycle(4)
    T = SpanningSubtree(G, [(0, 1), (1, 2), (2, 3)])
    T2 = T.replace(remove=[(0, 1)], add=[(0, 3)])
    assert T.edges == {(0, 1), (1, 2), (2, 3)}
    assert T2.edges == {(1, 2), (2, 3), (0, 3)}
    with pytest.raises(TreeError):
        T.replace(remove=[(0, 3)])


def test_dot():
    T = SpanningSubtree(complete(3), [(0, 1), (1, 2)])
    dot = tree_to_dot(T)
    assert "0 -- 1 [style=bold" in dot and "0 -- 2 [style=dashed" in dot
    assert score(T) == 2
