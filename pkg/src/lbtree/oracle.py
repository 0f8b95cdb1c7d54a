"""Exact ground truth at small scale.

Spanning trees are enumerated by contraction/deletion on a multigraph.  At
every node all bridges are contracted first (they lie in every spanning tree
of the current multigraph), then one non-bridge edge is branched on.  Since
deleting a non-bridge keeps the multigraph connected, every leaf of the
recursion is a spanning tree and each tree is produced exactly once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .graph import Edge, Graph, is_connected
from .tree import SpanningSubtree

DEFAULT_TREE_CAP = 10**7
COUNT_CHECK_MAX_N = 12


class OracleError(ValueError):
    pass


class TreeCountCapExceeded(OracleError):
    """The enumeration produced more trees than allowed; nothing partial is returned."""


class _Stop(Exception):
    pass


@dataclass(frozen=True)
class OracleResult:
    min_score: int
    witness: SpanningSubtree
    trees_enumerated: int
    exhaustive: bool

    @property
    def exact(self) -> bool:
        """Whether ``min_score`` is the true minimum (score 2 cannot be beaten)."""
        return self.exhaustive or self.min_score <= 2

    @property
    def feasible_le5(self) -> bool:
        return self.min_score <= 5

    def to_dict(self) -> dict:
        return {
            "min_score": self.min_score,
            "feasible_le5": self.feasible_le5,
            "trees_enumerated": self.trees_enumerated,
            "exhaustive": self.exhaustive,
            "exact": self.exact,
            "witness": [list(e) for e in self.witness.sorted_edges()],
        }


def _bridges(nv: int, edges: list[tuple[int, int, int]]) -> set[int]:
    """Positions in ``edges`` that are bridges of the loopless multigraph."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for pos, (a, b, _) in enumerate(edges):
        adj[a].append((b, pos))
        adj[b].append((a, pos))
    disc = [-1] * nv
    low = [0] * nv
    out = set()
    timer = 0
    for root in range(nv):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for w, pos in it:
                if pos == via:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, pos, iter(adj[w])))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.add(via)
    return out


def _contract(nv: int, edges, merge: list[int]):
    """Contract the edges at positions ``merge``; returns the relabelled multigraph."""
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pos in merge:
        a, b, _ = edges[pos]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    label = {}
    for v in range(nv):
        r = find(v)
        if r not in label:
            label[r] = len(label)
    merged = set(merge)
    out = []
    for pos, (a, b, eid) in enumerate(edges):
        if pos in merged:
            continue
        la, lb = label[find(a)], label[find(b)]
        if la != lb:
            out.append((la, lb, eid))
    return len(label), out


def enumerate_spanning_trees(G: Graph, visitor: Callable[[tuple[int, ...]], bool | None] | None = None,
                             cap: int = DEFAULT_TREE_CAP) -> int:
    """Visit every spanning tree of ``G`` once and return how many were visited.

    ``visitor`` receives the tree as a tuple of indices into ``G.edges()``;
    returning ``True`` stops the enumeration early.
    """
    if G.n == 0 or not is_connected(G):
        raise OracleError("enumeration needs a connected graph")
    base = [(u, v, i) for i, (u, v) in enumerate(G.edges())]
    count = 0

    def rec(nv, edges, chosen):
        nonlocal count
        forced = sorted(_bridges(nv, edges))
        if forced:
            chosen = chosen + tuple(edges[p][2] for p in forced)
            nv, edges = _contract(nv, edges, forced)
        if nv == 1:
            count += 1
            if count > cap:
                raise TreeCountCapExceeded(f"more than {cap} spanning trees")
            if visitor is not None and visitor(chosen):
                raise _Stop
            return
        # branch on the last edge: include (contract) first, then exclude (delete)
        pick = len(edges) - 1
        a, b, eid = edges[pick]
        rec(*_contract(nv, edges, [pick]), chosen + (eid,))
        rec(nv, edges[:pick], chosen)

    try:
        rec(G.n, base, ())
    except _Stop:
        pass
    return count


def count_spanning_trees(G: Graph, cap: int = DEFAULT_TREE_CAP) -> int:
    return enumerate_spanning_trees(G, None, cap)


def min_score(G: Graph, target: int | None = None, cap: int = DEFAULT_TREE_CAP) -> OracleResult:
    """Exact minimum of leaves plus branch vertices over all spanning trees.

    Stops at the first tree of score 2 (a Hamiltonian path), or at the first
    tree of score ``<= target`` when a target is given; ``exhaustive`` tells
    whether every tree was inspected.
    """
    if G.n == 0 or not is_connected(G):
        raise OracleError("min_score needs a connected graph")
    edges = G.edges()
    if G.n == 1:
        return OracleResult(0, SpanningSubtree(G, (), vertices=(0,)), 1, True)
    stop_at = 2 if target is None else max(2, target)
    best: list = [G.n + 1, None]
    n = G.n

    def visit(tree):
        deg = [0] * n
        for i in tree:
            u, v = edges[i]
            deg[u] += 1
            deg[v] += 1
        s = 0
        for d in deg:
            if d == 1 or d >= 3:
                s += 1
        if s < best[0]:
            best[0], best[1] = s, tree
            return s <= stop_at
        return False

    total = enumerate_spanning_trees(G, visit, cap)
    score, tree = best
    witness = SpanningSubtree(G, [edges[i] for i in tree])
    return OracleResult(score, witness, total, exhaustive=score > stop_at)


def _bareiss_det(mat: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [row[:] for row in mat]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def laplacian_cofactor(G: Graph, drop: int = 0) -> int:
    """Matrix-tree count: determinant of the Laplacian with row and column ``drop`` removed."""
    keep = [v for v in range(G.n) if v != drop]
    idx = {v: i for i, v in enumerate(keep)}
    mat = [[0] * len(keep) for _ in keep]
    for v in keep:
        mat[idx[v]][idx[v]] = G.degree(v)
        for w in G.adjacency[v]:
            if w != drop:
                mat[idx[v]][idx[w]] = -1
    return _bareiss_det(mat)


def spanning_tree_count_check(G: Graph) -> bool:
    if G.n > COUNT_CHECK_MAX_N:
        raise OracleError(f"count check is limited to n <= {COUNT_CHECK_MAX_N}")
    if G.n == 0 or not is_connected(G):
        raise OracleError("count check needs a connected graph")
    return count_spanning_trees(G) == laplacian_cofactor(G)


def has_hamiltonian_path(G: Graph) -> tuple[int, ...] | None:
    """Backtracking search; returns a Hamiltonian path or ``None``."""
    n = G.n
    if n == 0:
        return None
    path: list[int] = []
    used = [False] * n

    def grow(v):
        path.append(v)
        used[v] = True
        if len(path) == n:
            return True
        for w in G.adjacency[v]:
            if not used[w] and grow(w):
                return True
        path.pop()
        used[v] = False
        return False

    for start in range(n):
        if grow(start):
            return tuple(path)
    return None


def tree_edges(G: Graph, tree: tuple[int, ...]) -> list[Edge]:
    edges = G.edges()
    return sorted(edges[i] for i in tree)
