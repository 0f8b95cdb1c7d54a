"""Immutable simple undirected graphs on dense vertex ids ``0..n-1``."""
from __future__ import annotations

from collections import deque
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class GraphError(ValueError):
    """Base class for graph construction and parsing errors."""


class VertexOutOfRange(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class EdgeListFormatError(GraphError):
    """Malformed edge-list text."""


class Graph:
    """Simple undirected graph with per-vertex sorted neighbour tuples.

    Build instances with :func:`build_graph`; the constructor trusts its input.
    """

    __slots__ = ("n", "adjacency", "m", "_sets", "_edges", "_masks", "_matrix", "_intmasks")

    def __init__(self, n: int, adjacency: tuple[tuple[int, ...], ...]):
        self.n = n
        self.adjacency = adjacency
        self.m = sum(len(a) for a in adjacency) // 2
        self._sets = tuple(frozenset(a) for a in adjacency)
        self._edges: tuple[Edge, ...] | None = None
        self._masks = None
        self._matrix = None
        self._intmasks = None

    def __setattr__(self, name, value):
        if name in ("n", "adjacency", "m") and hasattr(self, name):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> tuple[Edge, ...]:
        """All edges ``(u, v)`` with ``u < v``, sorted."""
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)
        return self._edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def adjacency_masks(self) -> np.ndarray:
        """Neighbourhoods as ``uint64`` bitmasks; only defined for ``n <= 64``."""
        if self.n > 64:
            raise ValueError("bitmask adjacency needs n <= 64")
        if self._masks is None:
            masks = np.zeros(self.n, dtype=np.uint64)
            for v, nbrs in enumerate(self.adjacency):
                bits = 0
                for w in nbrs:
                    bits |= 1 << w
                masks[v] = np.uint64(bits)
            masks.flags.writeable = False
            self._masks = masks
        return self._masks

    def int_masks(self) -> tuple[int, ...]:
        """Neighbourhoods as Python-int bitmasks (any ``n``)."""
        if self._intmasks is None:
            out = []
            for nbrs in self.adjacency:
                bits = 0
                for w in nbrs:
                    bits |= 1 << w
                out.append(bits)
            self._intmasks = tuple(out)
        return self._intmasks

    def adjacency_matrix(self) -> np.ndarray:
        if self._matrix is None:
            mat = np.zeros((self.n, self.n), dtype=bool)
            for u, v in self.edges():
                mat[u, v] = mat[v, u] = True
            mat.flags.writeable = False
            self._matrix = mat
        return self._matrix


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise VertexOutOfRange(f"vertex {v} outside 0..{n - 1}")


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    ``(u, v)`` and ``(v, u)`` name the same edge, so listing both is a
    duplicate.
    """
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for pair in edges:
        u, v = (int(x) for x in pair)
        _check_vertex(n, u)
        _check_vertex(n, v)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise DuplicateEdgeError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def degree(G: Graph, v: int) -> int:
    _check_vertex(G.n, v)
    return G.degree(v)


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return False
    seen = bytearray(G.n)
    seen[0] = 1
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for w in G.adjacency[v]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                queue.append(w)
    return count == G.n


def neighbor_union(G: Graph, X: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for x in X:
        _check_vertex(G.n, x)
        out.update(G.adjacency[x])
    return frozenset(out)


# -- edge-list text format ------------------------------------------------


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the canonical ``n m`` header + ``u v`` lines format."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise EdgeListFormatError("empty input")

    def ints(lineno: int, line: str) -> tuple[int, int]:
        parts = line.split(" ")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise EdgeListFormatError(f"line {lineno}: expected two non-negative integers, got {line!r}")
        return int(parts[0]), int(parts[1])

    n, m = ints(1, lines[0])
    body = lines[1:]
    if len(body) != m:
        raise EdgeListFormatError(f"header announces {m} edges, found {len(body)} lines")
    edges = []
    for i, line in enumerate(body, start=2):
        u, v = ints(i, line)
        if not u < v:
            raise EdgeListFormatError(f"line {i}: expected u < v, got {u} {v}")
        edges.append((u, v))
    return build_graph(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="ascii"))


def write_edge_list(G: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(G), encoding="ascii")


def to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(G.n))
    lines.extend(f"  {u} -- {v};" for u, v in G.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
