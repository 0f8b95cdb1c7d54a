"""Shared fixtures and brute-force reference implementations.

The brute-force helpers deliberately avoid the package's own search code so
that they can serve as independent oracles.
"""
from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from lbtree.graph import Graph, build_graph

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, name: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number} [{name}]: {'PASS' if passed else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


# -- small graph builders --------------------------------------------------


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def star(k: int) -> Graph:
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, pairs)


def random_connected(n: int, p: float, rng: np.random.Generator) -> Graph:
    while True:
        G = gnp(n, p, rng)
        if _bfs_connected(G):
            return G


def _bfs_connected(G: Graph) -> bool:
    seen, todo = {0}, [0]
    while todo:
        v = todo.pop()
        for w in G.adjacency[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == G.n


def prufer_tree_edges(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Uniform random labelled tree on ``n >= 2`` vertices."""
    if n == 2:
        return [(0, 1)]
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return edges


# -- brute-force oracles --------------------------------------------------


def bf_independent(G: Graph, X) -> bool:
    return all(not G.has_edge(a, b) for a, b in itertools.combinations(X, 2))


def bf_alpha(G: Graph) -> int:
    best = 0
    for mask in range(1 << G.n):
        X = [v for v in range(G.n) if mask >> v & 1]
        if len(X) > best and bf_independent(G, X):
            best = len(X)
    return best


def bf_sigma(G: Graph, k: int):
    best = math.inf
    for X in itertools.combinations(range(G.n), k):
        if bf_independent(G, X):
            best = min(best, sum(G.degree(v) for v in X))
    return best


def bf_k1r_free(G: Graph, r: int) -> bool:
    """Enumerate all (1+r)-vertex subsets and test for an induced star."""
    for S in itertools.combinations(range(G.n), r + 1):
        for c in S:
            rest = [v for v in S if v != c]
            if all(G.has_edge(c, v) for v in rest) and bf_independent(G, rest):
                return False
    return True


def bf_min_score(G: Graph) -> int:
    """Minimum leaves+branches over all (n-1)-edge subsets that form spanning trees."""
    edges = G.edges()
    best = None
    for sub in itertools.combinations(edges, G.n - 1):
        parent = list(range(G.n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for u, v in sub:
            a, b = find(u), find(v)
            if a == b:
                ok = False
                break
            parent[a] = b
        if not ok:
            continue
        deg = [0] * G.n
        for u, v in sub:
            deg[u] += 1
            deg[v] += 1
        s = sum(1 for d in deg if d == 1 or d >= 3)
        best = s if best is None else min(best, s)
    return best


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
