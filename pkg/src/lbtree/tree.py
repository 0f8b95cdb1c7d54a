"""Trees embedded in a host graph: leaves, branch vertices, paths and legs."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Edge, Graph


class TreeError(ValueError):
    pass


class TooManyBranches(TreeError):
    """Raised when a tree has more than two branch vertices."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class SpanningSubtree:
    """An immutable tree whose edges all belong to ``host``.

    ``vertices`` defaults to the endpoints of ``edges``; pass it explicitly
    for the single-vertex tree.
    """

    __slots__ = ("host", "vertices", "edges", "root", "_adj")

    def __init__(self, host: Graph, edges: Iterable[Sequence[int]], vertices: Iterable[int] | None = None,
                 root: int | None = None):
        tedges = frozenset(norm_edge(int(u), int(v)) for u, v in edges)
        adj: dict[int, list[int]] = {}
        for u, v in tedges:
            if not host.has_edge(u, v):
                raise TreeError(f"edge ({u}, {v}) is not in the host graph")
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        if vertices is None:
            verts = frozenset(adj)
        else:
            verts = frozenset(int(v) for v in vertices)
            if not set(adj) <= verts:
                raise TreeError("edge endpoint outside the vertex set")
        if not verts:
            raise TreeError("a tree needs at least one vertex")
        for v in verts:
            if not 0 <= v < host.n:
                raise TreeError(f"vertex {v} not in host graph")
        if len(tedges) != len(verts) - 1:
            raise TreeError(f"{len(tedges)} edges on {len(verts)} vertices cannot form a tree")
        if root is None:
            root = min(verts)
        elif root not in verts:
            raise TreeError(f"root {root} not in tree")
        # connectivity (with |E| = |V| - 1 this rules out cycles too)
        seen = {root}
        queue = [root]
        while queue:
            x = queue.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(verts):
            raise TreeError("edge set is not connected on the vertex set")
        self.host = host
        self.vertices = verts
        self.edges = tedges
        self.root = root
        self._adj = {v: tuple(sorted(adj.get(v, ()))) for v in verts}

    def __repr__(self) -> str:
        return f"SpanningSubtree(|V|={len(self.vertices)}, host={self.host!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpanningSubtree):
            return NotImplemented
        return self.host == other.host and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def is_spanning(self) -> bool:
        return len(self.vertices) == self.host.n

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def replace(self, remove: Iterable[Sequence[int]] = (), add: Iterable[Sequence[int]] = (),
                new_vertices: Iterable[int] = ()) -> "SpanningSubtree":
        rem = {norm_edge(*e) for e in remove}
        missing = rem - self.edges
        if missing:
            raise TreeError(f"edges {sorted(missing)} are not tree edges")
        edges = (self.edges - rem) | {norm_edge(*e) for e in add}
        return SpanningSubtree(self.host, edges, self.vertices | frozenset(new_vertices), root=self.root)


@dataclass(frozen=True)
class TreeMetrics:
    leaves: frozenset[int]
    branches: frozenset[int]

    @property
    def score(self) -> int:
        return len(self.leaves) + len(self.branches)


def metrics(T: SpanningSubtree) -> TreeMetrics:
    if len(T.vertices) < 2:
        raise TreeError("leaf and branch sets are undefined for a single-vertex tree")
    leaves = frozenset(v for v in T.vertices if T.degree(v) == 1)
    branches = frozenset(v for v in T.vertices if T.degree(v) >= 3)
    return TreeMetrics(leaves, branches)


def score(T: SpanningSubtree) -> int:
    return metrics(T).score


def tree_path(T: SpanningSubtree, u: int, v: int) -> list[int]:
    """Vertices of the tree path oriented from ``u`` to ``v``."""
    if u not in T.vertices or v not in T.vertices:
        raise TreeError(f"vertex {u if u not in T.vertices else v} is not in the tree")
    if u == v:
        return [u]
    parent = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in T.neighbors(x):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def tree_distance(T: SpanningSubtree, u: int, v: int) -> int:
    return len(tree_path(T, u, v)) - 1


class Shape(enum.Enum):
    PATH = "Path"
    ONE_BRANCH = "OneBranch"
    TWO_BRANCH = "TwoBranch"


@dataclass(frozen=True)
class Leg:
    """One component of ``T - {s, t}`` that ends in a leaf.

    ``path`` runs from the attach vertex to the leaf, so ``path[i-1]`` is the
    predecessor of ``path[i]`` relative to the branch vertex ``side``.
    """
    leaf: int
    attach: int
    side: int
    path: tuple[int, ...]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.path)

    def __len__(self) -> int:
        return len(self.path)


@dataclass(frozen=True)
class BranchDecomposition:
    shape: Shape
    s: int | None
    t: int | None
    legs: tuple[Leg, ...]
    spine: tuple[int, ...]

    @property
    def r(self) -> int | None:
        return self.s if self.shape is Shape.ONE_BRANCH else None

    def side_of(self, leg: Leg) -> int:
        return leg.side

    def legs_at(self, v: int) -> tuple[Leg, ...]:
        return tuple(leg for leg in self.legs if leg.side == v)

    def distance(self) -> int:
        return len(self.spine) + 1 if self.shape is Shape.TWO_BRANCH else 0


def _walk_leg(T: SpanningSubtree, hub: int, start: int) -> tuple[int, ...]:
    path = [start]
    prev, cur = hub, start
    while T.degree(cur) == 2:
        a, b = T.neighbors(cur)
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        path.append(cur)
    return tuple(path)


def decompose(T: SpanningSubtree) -> BranchDecomposition:
    """Split ``T`` into branch vertices, legs and (for two branches) the spine."""
    m = metrics(T)
    branches = sorted(m.branches)
    if len(branches) > 2:
        raise TooManyBranches(f"tree has {len(branches)} branch vertices")
    if not branches:
        return BranchDecomposition(Shape.PATH, None, None, (), ())
    if len(branches) == 1:
        r = branches[0]
        legs = tuple(sorted((Leg(p[-1], p[0], r, p) for p in (_walk_leg(T, r, v) for v in T.neighbors(r))),
                            key=lambda leg: leg.leaf))
        return BranchDecomposition(Shape.ONE_BRANCH, r, None, legs, ())
    a, b = branches
    s, t = (a, b) if T.degree(a) >= T.degree(b) else (b, a)
    between = tree_path(T, s, t)
    spine = tuple(between[1:-1])
    on_spine = set(between)
    legs = []
    for hub in (s, t):
        side_legs = []
        for v in T.neighbors(hub):
            if v in on_spine:
                continue
            p = _walk_leg(T, hub, v)
            side_legs.append(Leg(p[-1], p[0], hub, p))
        legs.extend(sorted(side_legs, key=lambda leg: leg.leaf))
    return BranchDecomposition(Shape.TWO_BRANCH, s, t, tuple(legs), spine)


def tree_to_dot(T: SpanningSubtree, name: str = "T") -> str:
    """DOT of the host graph with tree edges drawn bold."""
    G = T.host
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(G.n))
    for u, v in G.edges():
        style = ' [style=bold, penwidth=3]' if (u, v) in T.edges else ' [style=dashed, color=gray]'
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
