"""Exchange local search for spanning trees with few leaves and branch vertices.

The solver grows a tree one vertex at a time and, when growth would push the
score past 7, rewires it with edge exchanges.  Every accepted step strictly
lowers the potential ``(-|V(T)|, score_class, d_st, -leg_mass)``:

* ``score_class`` is ``max(score - 5, 0)``;
* ``d_st`` is the tree distance between the two branch vertices (0 unless
  there are exactly two);
* ``leg_mass`` counts the leg vertices hanging off the higher-degree branch
  vertex when the two branch degrees differ (0 otherwise).

Exchange moves come in tiers.  Targeted generators (leaf re-attachment,
spine shortening, branch splitting, leaf-pair 2-swaps and bridging 3-swaps)
are tried first and the best improving move of a tier wins.  If none
improves, the generic k-swap neighbourhood is scanned for k = 1..max_swap
and the first improving move in canonical order is taken.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, NamedTuple

import numpy as np

from . import _swap
from ._accel import USE_NUMBA
from .graph import Edge, Graph, is_connected
from .tree import (
    Shape,
    SpanningSubtree,
    TooManyBranches,
    TreeError,
    decompose,
    norm_edge,
)

log = logging.getLogger(__name__)

#: Scores above this are never accepted once growth is under way.
SCORE_CEILING = 7


class DisconnectedGraph(ValueError):
    pass


class InvalidMove(TreeError):
    pass


class MoveKind(enum.IntEnum):
    EXTEND = 0
    LEAF_REATTACH = 1
    TWO_SWAP = 2
    THREE_SWAP = 3
    FOUR_SWAP = 4
    BRANCH_MERGE = 5

    @property
    def tag(self) -> str:
        return _KIND_TAGS[self]


_KIND_TAGS = {
    MoveKind.EXTEND: "Extend",
    MoveKind.LEAF_REATTACH: "LeafReattach",
    MoveKind.TWO_SWAP: "TwoSwap",
    MoveKind.THREE_SWAP: "ThreeSwap",
    MoveKind.FOUR_SWAP: "FourSwap",
    MoveKind.BRANCH_MERGE: "BranchMerge",
}
_SIZE_KIND = {2: MoveKind.TWO_SWAP, 3: MoveKind.THREE_SWAP, 4: MoveKind.FOUR_SWAP}


@dataclass(frozen=True)
class ExchangeMove:
    remove: tuple[Edge, ...]
    add: tuple[Edge, ...]
    kind: MoveKind
    new_vertex: int | None = None

    @classmethod
    def make(cls, remove, add, kind, new_vertex=None) -> "ExchangeMove":
        return cls(tuple(sorted(norm_edge(*e) for e in remove)), tuple(sorted(norm_edge(*e) for e in add)),
                   kind, new_vertex)

    def inverse(self) -> "ExchangeMove":
        if self.kind is MoveKind.EXTEND:
            raise InvalidMove("an extension has no same-vertex-set inverse")
        return ExchangeMove(self.add, self.remove, self.kind)

    def sort_key(self):
        return (int(self.kind), self.remove, self.add)

    def __str__(self) -> str:
        rem = ",".join(f"({u},{v})" for u, v in self.remove)
        add = ",".join(f"({u},{v})" for u, v in self.add)
        return f"{self.kind.tag} -[{rem}] +[{add}]"


class Potential(NamedTuple):
    neg_size: int
    score_class: int
    d_st: int
    neg_leg_mass: int

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self) + ")"


@dataclass(frozen=True)
class SolverConfig:
    max_swap_size: int = 4
    max_iterations: int | None = None
    seed: int = 0
    use_targeted_moves: bool = True
    record_trace: bool = False

    def __post_init__(self):
        if not 1 <= self.max_swap_size <= 4:
            raise ValueError("max_swap_size must be in 1..4")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def iteration_cap(self, n: int) -> int:
        return self.max_iterations if self.max_iterations is not None else 10 * n * n


class SolveStatus(str, enum.Enum):
    SOLVED = "Solved"
    STUCK_NOT_SPANNING = "StuckNotSpanning"
    STUCK_AT_SCORE = "StuckAtScore"
    ITERATION_CAP_HIT = "IterationCapHit"


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    move: ExchangeMove
    potential: Potential

    def __str__(self) -> str:
        return f"{self.iteration} {self.move} {self.potential}"


@dataclass
class SolveResult:
    status: SolveStatus
    tree: SpanningSubtree
    score: int
    iterations: int
    potential: Potential
    trace: list[TraceEntry] | None = field(default=None)

    def trace_text(self) -> str:
        return "".join(f"{entry}\n" for entry in self.trace or ())


# -- scores and potentials --------------------------------------------------


def _degree_classes(T: SpanningSubtree) -> tuple[int, int]:
    leaves = branches = 0
    for v in T.vertices:
        d = T.degree(v)
        if d == 1:
            leaves += 1
        elif d >= 3:
            branches += 1
    return leaves, branches


def tree_score(T: SpanningSubtree) -> int:
    """Leaves plus branch vertices; 0 for the single-vertex tree."""
    leaves, branches = _degree_classes(T)
    return leaves + branches


def potential_of(G: Graph, T: SpanningSubtree) -> Potential:
    if T.host is not G and T.host != G:
        raise TreeError("tree does not live in this graph")
    size = len(T.vertices)
    if size == 1:
        return Potential(-1, 0, 0, 0)
    dec = decompose(T)  # raises TooManyBranches
    cls = max(tree_score(T) - 5, 0)
    if dec.shape is not Shape.TWO_BRANCH:
        return Potential(-size, cls, 0, 0)
    mass = 0
    if T.degree(dec.s) != T.degree(dec.t):
        mass = sum(len(leg) for leg in dec.legs_at(dec.s))
    return Potential(-size, cls, dec.distance(), -mass)


# -- rooted index used for fast move evaluation ----------------------------


class _Rooted:
    """Arrays describing ``T`` rooted at ``T.root`` plus its non-tree host edges."""

    def __init__(self, T: SpanningSubtree):
        G = T.host
        n = G.n
        self.T = T
        self.n = n
        parent = np.full(n, -1, dtype=np.int64)
        depth = np.zeros(n, dtype=np.int64)
        order = [T.root]
        parent[T.root] = T.root
        stack = [T.root]
        seen = {T.root}
        order = []
        while stack:
            x = stack.pop()
            order.append(x)
            for y in reversed(T.neighbors(x)):
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    stack.append(y)
        self.parent = parent
        self.depth = depth
        self.preorder = np.array(order, dtype=np.int64)
        edges = T.sorted_edges()
        self.tree_edges = edges
        child = np.empty(len(edges), dtype=np.int64)
        par = np.empty(len(edges), dtype=np.int64)
        self.edge_of_child: dict[int, Edge] = {}
        for i, (u, v) in enumerate(edges):
            c, p = (u, v) if parent[u] == v and u != T.root else (v, u)
            child[i], par[i] = c, p
            self.edge_of_child[c] = (u, v)
        self.t_child = child
        self.t_par = par
        verts = T.vertices
        self.non_tree = [e for e in G.edges() if e[0] in verts and e[1] in verts and e not in T.edges]
        self.nu = np.array([e[0] for e in self.non_tree], dtype=np.int64)
        self.nv = np.array([e[1] for e in self.non_tree], dtype=np.int64)
        deg = np.zeros(n, dtype=np.int64)
        for v in verts:
            deg[v] = T.degree(v)
        self.deg = deg

    def path_children(self, a: int, b: int) -> list[int]:
        """Tree edges on ``P_T[a, b]``, each named by its child endpoint."""
        parent, depth = self.parent, self.depth
        left, right = [], []
        while depth[a] > depth[b]:
            left.append(a)
            a = int(parent[a])
        while depth[b] > depth[a]:
            right.append(b)
            b = int(parent[b])
        while a != b:
            left.append(a)
            right.append(b)
            a = int(parent[a])
            b = int(parent[b])
        return left + right[::-1]

    def path_edges(self, a: int, b: int) -> list[Edge]:
        return [self.edge_of_child[c] for c in self.path_children(a, b)]

    def is_tree_after(self, remove, add) -> bool:
        """Whether ``T - remove + add`` is a tree on ``V(T)``."""
        k = len(remove)
        if k != len(add):
            return False
        cut = set()
        for e in remove:
            u, v = e
            c = u if self.parent[u] == v and u != self.T.root else v
            if self.edge_of_child.get(c) != e:
                return False
            cut.add(c)
        label = {}
        nxt = 1
        for v in self.preorder:
            v = int(v)
            if v == self.T.root:
                label[v] = 0
            elif v in cut:
                label[v] = nxt
                nxt += 1
            else:
                label[v] = label[int(self.parent[v])]
        uf = list(range(k + 1))

        def find(x):
            while uf[x] != x:
                x = uf[x]
            return x

        for u, v in add:
            if u not in label or v not in label or norm_edge(u, v) in self.T.edges:
                return False
            a, b = find(label[u]), find(label[v])
            if a == b:
                return False
            uf[b] = a
        return True


_tail = _swap._tree_potential_tail if USE_NUMBA else _swap._tail_pure


class _Evaluator:
    """Potential of ``T - remove + add`` from degree deltas, without rebuilding the tree."""

    def __init__(self, rooted: _Rooted, current: Potential):
        self.r = rooted
        self.current = current
        self.size = len(rooted.T.vertices)
        deg = rooted.deg
        verts = rooted.preorder
        self.leaves = int(np.count_nonzero(deg[verts] == 1))
        self.branches = int(np.count_nonzero(deg[verts] >= 3))

    def counts(self, remove, add) -> tuple[int, int, dict[int, int]]:
        deg = self.r.deg
        delta: dict[int, int] = {}
        for u, v in remove:
            delta[u] = delta.get(u, 0) - 1
            delta[v] = delta.get(v, 0) - 1
        for u, v in add:
            delta[u] = delta.get(u, 0) + 1
            delta[v] = delta.get(v, 0) + 1
        nl, nb = self.leaves, self.branches
        for v, dv in delta.items():
            if dv:
                od = int(deg[v])
                nd = od + dv
                nl += (nd == 1) - (od == 1)
                nb += (nd >= 3) - (od >= 3)
        return nl, nb, delta

    def potential(self, remove, add, max_branches: int = 2) -> Potential | None:
        nl, nb, delta = self.counts(remove, add)
        if nb > max_branches:
            return None
        cls = max(nl + nb - 5, 0)
        if nb != 2:
            return Potential(-self.size, cls, 0, 0)
        r = self.r
        deg_new = r.deg.copy()
        for v, dv in delta.items():
            deg_new[v] += dv
        removed = np.zeros(r.n, dtype=bool)
        for u, v in remove:
            removed[u if r.parent[u] == v and u != r.T.root else v] = True
        add_u = np.array([a for a, _ in add], dtype=np.int64)
        add_v = np.array([b for _, b in add], dtype=np.int64)
        dst, negmass = _tail(r.n, deg_new, r.t_child, r.t_par, removed, add_u, add_v, r.preorder)
        return Potential(-self.size, cls, int(dst), int(negmass))


# -- move generators ---------------------------------------------------------


def _leaf_set(T: SpanningSubtree) -> list[int]:
    return sorted(v for v in T.vertices if T.degree(v) == 1)


def _leaf_reattach_moves(G: Graph, r: _Rooted, leaves: list[int]) -> Iterator[ExchangeMove]:
    """Attach a leaf ``u`` to a host neighbour ``x`` and cut one edge of the new cycle.

    Covers detaching a leg at its attach vertex (``T - v_i v_i^- + x u_j``),
    spine shortening (``x`` on the branch-to-branch path) and leg-mass
    transfers (``T - x x^- + x u_j``).
    """
    T = r.T
    for u in leaves:
        for x in G.adjacency[u]:
            if x not in T.vertices or norm_edge(u, x) in T.edges:
                continue
            for e in r.path_edges(u, x):
                yield ExchangeMove.make((e,), ((u, x),), MoveKind.LEAF_REATTACH)


def _branch_split_moves(G: Graph, T: SpanningSubtree) -> Iterator[ExchangeMove]:
    """``T - b a + a c`` for tree neighbours ``a, c`` of a branch vertex ``b`` with ``ac`` in G."""
    for b in sorted(v for v in T.vertices if T.degree(v) >= 3):
        for a, c in combinations(T.neighbors(b), 2):
            if G.has_edge(a, c):
                yield ExchangeMove.make(((b, a),), ((a, c),), MoveKind.BRANCH_MERGE)
                yield ExchangeMove.make(((b, c),), ((a, c),), MoveKind.BRANCH_MERGE)


def _leaf_pair_moves(G: Graph, r: _Rooted, leaves: list[int]) -> Iterator[ExchangeMove]:
    """2-swaps adding a leaf edge plus a leaf edge or a hub edge.

    Hub vertices are branch vertices and their tree neighbours.  Removed
    edges touch a branch vertex or an endpoint of an added edge.  Validity
    uses the cycle criterion: the removed pair must hit the two fundamental
    cycles with independent incidence vectors.
    """
    T = r.T
    branches = [v for v in T.vertices if T.degree(v) >= 3]
    hub = set(branches)
    for b in branches:
        hub.update(T.neighbors(b))
    leaf_set = set(leaves)
    cands = []
    for e in r.non_tree:
        if e[0] in leaf_set or e[1] in leaf_set:
            cands.append((e, True))
        elif e[0] in hub and e[1] in hub:
            cands.append((e, False))
    branch_children = set()
    for b in branches:
        for y in T.neighbors(b):
            branch_children.add(y if r.parent[y] == b and y != T.root else b)
    cyc = {e: set(r.path_children(*e)) for e, _ in cands}

    def incident_children(v):
        out = {y for y in T.neighbors(v) if r.parent[y] == v and y != T.root}
        if v != T.root:
            out.add(v)
        return out

    inc = {}
    for (e1, leafy1), (e2, leafy2) in combinations(cands, 2):
        if not (leafy1 or leafy2):
            continue
        c1, c2 = cyc[e1], cyc[e2]
        allowed = set(branch_children)
        for v in (*e1, *e2):
            if v not in inc:
                inc[v] = incident_children(v)
            allowed |= inc[v]
        pool = sorted((c, (c in c1, c in c2)) for c in (c1 | c2) & allowed)
        for (ca, va), (cb, vb) in combinations(pool, 2):
            if va != vb:
                yield ExchangeMove.make((r.edge_of_child[ca], r.edge_of_child[cb]), (e1, e2), MoveKind.TWO_SWAP)


def _bridging_moves(G: Graph, r: _Rooted, leaves: list[int]) -> Iterator[ExchangeMove]:
    """``T - {x x^-, x x^+, e} + {x^- x^+, x u_j, x u_k}``.

    A degree-2 vertex ``x`` is bypassed through the host edge ``x^- x^+`` and
    re-hung between two leaves it sees; ``e`` breaks the resulting cycle.
    """
    T = r.T
    for x in sorted(T.vertices):
        if T.degree(x) != 2:
            continue
        a, b = T.neighbors(x)
        if not G.has_edge(a, b):
            continue
        seen_leaves = [u for u in leaves if u not in (x, a, b) and G.has_edge(x, u)]
        if len(seen_leaves) < 2:
            continue
        cut = {norm_edge(x, a), norm_edge(x, b)}
        for uj, uk in combinations(seen_leaves, 2):
            for e in r.path_edges(uj, uk):
                if e in cut:
                    continue
                mv = ExchangeMove.make((*cut, e), ((a, b), (x, uj), (x, uk)), MoveKind.THREE_SWAP)
                if r.is_tree_after(mv.remove, mv.add):
                    yield mv


def _generic_moves(r: _Rooted, k: int, leaves: set[int]) -> Iterator[ExchangeMove]:
    """Every valid k-swap, in the same canonical order the scan kernel uses."""
    T = r.T
    n_t = len(r.tree_edges)
    for rem in combinations(range(n_t), k):
        cut = {int(r.t_child[i]) for i in rem}
        label = {}
        nxt = 1
        for v in r.preorder:
            v = int(v)
            if v == T.root:
                label[v] = 0
            elif v in cut:
                label[v] = nxt
                nxt += 1
            else:
                label[v] = label[int(r.parent[v])]
        cross = [e for e in r.non_tree if label[e[0]] != label[e[1]]]
        for adds in combinations(cross, k):
            uf = list(range(k + 1))
            ok = True
            for u, v in adds:
                a, b = label[u], label[v]
                while uf[a] != a:
                    a = uf[a]
                while uf[b] != b:
                    b = uf[b]
                if a == b:
                    ok = False
                    break
                uf[b] = a
            if not ok:
                continue
            removed = [r.tree_edges[i] for i in rem]
            if k == 1:
                kind = MoveKind.LEAF_REATTACH if (adds[0][0] in leaves or adds[0][1] in leaves) \
                    else MoveKind.BRANCH_MERGE
            else:
                kind = _SIZE_KIND[k]
            yield ExchangeMove.make(removed, adds, kind)


def _targeted_tiers(G: Graph, r: _Rooted):
    leaves = _leaf_set(r.T)
    yield lambda: _chain(_leaf_reattach_moves(G, r, leaves), _branch_split_moves(G, r.T))
    yield lambda: _leaf_pair_moves(G, r, leaves)
    yield lambda: _bridging_moves(G, r, leaves)


def _chain(*its):
    for it in its:
        yield from it


def enumerate_moves(G: Graph, T: SpanningSubtree, cfg: SolverConfig | None = None,
                    max_branches: int | None = 2) -> Iterator[ExchangeMove]:
    """Stream exchange moves on ``V(T)``: targeted generators first, then every k-swap.

    Moves whose result has more than ``max_branches`` branch vertices are
    dropped (pass ``None`` to keep them).  Each move is yielded once.
    """
    cfg = cfg or SolverConfig()
    r = _Rooted(T)
    ev = _Evaluator(r, Potential(0, 0, 0, 0))
    seen = set()

    def keep(mv):
        key = (mv.remove, mv.add)
        if key in seen:
            return False
        seen.add(key)
        if max_branches is None:
            return True
        _, nb, _ = ev.counts(mv.remove, mv.add)
        return nb <= max_branches

    if cfg.use_targeted_moves:
        for tier in _targeted_tiers(G, r):
            for mv in tier():
                if len(mv.remove) <= cfg.max_swap_size and keep(mv):
                    yield mv
    leaves = set(_leaf_set(T))
    for k in range(1, cfg.max_swap_size + 1):
        for mv in _generic_moves(r, k, leaves):
            if keep(mv):
                yield mv


def apply_move(T: SpanningSubtree, mv: ExchangeMove) -> SpanningSubtree:
    if mv.kind is MoveKind.EXTEND:
        if mv.new_vertex is None or mv.new_vertex in T.vertices:
            raise InvalidMove("an extension must introduce exactly one new vertex")
        if len(mv.add) != 1 or mv.remove or mv.new_vertex not in mv.add[0]:
            raise InvalidMove("an extension adds one edge to the new vertex and removes none")
        try:
            return T.replace(add=mv.add, new_vertices=(mv.new_vertex,))
        except TreeError as exc:
            raise InvalidMove(f"{mv}: {exc}") from exc
    if len(mv.remove) != len(mv.add):
        raise InvalidMove(f"{mv}: removes {len(mv.remove)} edges but adds {len(mv.add)}")
    for e in mv.add:
        if e in T.edges:
            raise InvalidMove(f"{mv}: edge {e} is already in the tree")
        if e[0] not in T.vertices or e[1] not in T.vertices:
            raise InvalidMove(f"{mv}: edge {e} leaves the vertex set")
    try:
        return T.replace(remove=mv.remove, add=mv.add)
    except TreeError as exc:
        raise InvalidMove(f"{mv}: result is not a tree ({exc})") from exc


# -- growth -----------------------------------------------------------------


def _extension_delta(T: SpanningSubtree, v: int) -> int:
    d = T.degree(v)
    if d == 0:
        return 2
    if d == 1:
        return 0
    if d == 2:
        return 2
    return 1


def extend(G: Graph, T: SpanningSubtree):
    """Grow ``T`` by one outside vertex, picking the attachment with the smallest score increase.

    Returns ``(new_tree, delta)`` or ``None`` when ``T`` is maximal.
    """
    best = None
    for v in sorted(T.vertices):
        delta = _extension_delta(T, v)
        if best is not None and delta >= best[0]:
            continue
        for w in G.adjacency[v]:
            if w not in T.vertices:
                best = (delta, v, w)
                break
        if best is not None and best[0] == 0:
            break
    if best is None:
        return None
    delta, v, w = best
    grown = T.replace(add=((v, w),), new_vertices=(w,))
    actual = tree_score(grown) - tree_score(T)
    assert actual == delta and actual in (0, 1, 2), (actual, delta)
    return grown, delta


def dfs_tree(G: Graph, root: int) -> tuple[SpanningSubtree, list[int]]:
    """Depth-first spanning tree from ``root`` (smallest neighbour first) and its preorder."""
    parent = {root: root}
    order = []
    stack = [(root, iter(G.adjacency[root]))]
    order.append(root)
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in parent:
                parent[w] = v
                order.append(w)
                stack.append((w, iter(G.adjacency[w])))
                break
        else:
            stack.pop()
    edges = [(parent[v], v) for v in order[1:]]
    return SpanningSubtree(G, edges, vertices=order, root=root), order


def _preorder(T: SpanningSubtree) -> list[int]:
    order, stack, seen = [], [T.root], {T.root}
    while stack:
        v = stack.pop()
        order.append(v)
        for w in reversed(T.neighbors(v)):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return order


def _trim(T: SpanningSubtree, order: list[int]) -> SpanningSubtree:
    """Longest prefix of ``order`` whose induced subtree stays within the score ceiling.

    Prefix scores never decrease, so the scan stops at the first overshoot.
    """
    if tree_score(T) <= SCORE_CEILING:
        return T
    deg = {order[0]: 0}
    leaves = branches = 0
    keep = 1
    for i, v in enumerate(order[1:], start=1):
        p = next(x for x in T.neighbors(v) if x in deg)
        dp = deg[p]
        nl = leaves + 1 - (dp == 1) + (dp == 0)
        nb = branches + (dp == 2)
        if nl + nb > SCORE_CEILING:
            break
        deg[p] = dp + 1
        deg[v] = 1
        leaves, branches = nl, nb
        keep = i + 1
    sub = [e for e in T.edges if e[0] in deg and e[1] in deg]
    return SpanningSubtree(T.host, sub, vertices=order[:keep], root=order[0])


# -- main loop ----------------------------------------------------------------


def _best_in_tier(moves, ev: _Evaluator) -> tuple[ExchangeMove, Potential] | None:
    cur = ev.current
    best = None
    best_key = None
    for mv in moves:
        nl, nb, _ = ev.counts(mv.remove, mv.add)
        if nb > 2:
            continue
        cls = max(nl + nb - 5, 0)
        if cls > cur.score_class:
            continue
        if best is not None and cls > best[1].score_class:
            continue
        pot = ev.potential(mv.remove, mv.add)
        if pot is None or not pot < cur:
            continue
        key = (pot, mv.sort_key())
        if best_key is None or key < best_key:
            best, best_key = (mv, pot), key
    return best


def _generic_step(r: _Rooted, cur: Potential, k: int, leaves: set[int]):
    tail = (cur.score_class, cur.d_st, cur.neg_leg_mass)
    hit = _swap.scan_swaps(r.n, k, r.t_child, r.t_par, r.preorder, r.parent, r.nu, r.nv, r.deg, tail)
    if hit is None:
        return None
    rem_idx, add_idx = hit
    removed = [r.tree_edges[i] for i in rem_idx]
    added = [r.non_tree[j] for j in add_idx]
    if k == 1:
        kind = MoveKind.LEAF_REATTACH if (added[0][0] in leaves or added[0][1] in leaves) else MoveKind.BRANCH_MERGE
    else:
        kind = _SIZE_KIND[k]
    return ExchangeMove.make(removed, added, kind)


def _exchange_step(G: Graph, T: SpanningSubtree, cur: Potential, cfg: SolverConfig):
    r = _Rooted(T)
    ev = _Evaluator(r, cur)
    if cfg.use_targeted_moves:
        for tier in _targeted_tiers(G, r):
            hit = _best_in_tier((mv for mv in tier() if len(mv.remove) <= cfg.max_swap_size), ev)
            if hit is not None:
                return hit
    leaves = set(_leaf_set(T))
    for k in range(1, cfg.max_swap_size + 1):
        mv = _generic_step(r, cur, k, leaves)
        if mv is not None:
            return mv, ev.potential(mv.remove, mv.add)
    return None


def solve(G: Graph, cfg: SolverConfig | None = None, initial_tree: SpanningSubtree | None = None) -> SolveResult:
    """Search for a spanning tree with at most 5 leaves and branch vertices in total.

    The search starts from the depth-first tree rooted at ``seed mod n``
    unless ``initial_tree`` is given.  Either way the start is cut back to
    its longest preorder prefix of score at most 7.
    """
    cfg = cfg or SolverConfig()
    if G.n == 0 or not is_connected(G):
        raise DisconnectedGraph("solve needs a connected graph")
    n = G.n
    cap = cfg.iteration_cap(n)
    if initial_tree is None:
        T, order = dfs_tree(G, cfg.seed % n)
    else:
        if initial_tree.host != G:
            raise TreeError("initial tree does not live in this graph")
        T, order = initial_tree, _preorder(initial_tree)
    T = _trim(T, order)
    pot = potential_of(G, T)
    trace: list[TraceEntry] | None = [] if cfg.record_trace else None
    iterations = 0
    status = None
    while True:
        score = tree_score(T)
        if T.is_spanning() and score <= 5:
            status = SolveStatus.SOLVED
            break
        if iterations >= cap:
            status = SolveStatus.ITERATION_CAP_HIT
            break
        step = None
        if not T.is_spanning():
            grown = extend(G, T)
            if grown is not None and score + grown[1] <= SCORE_CEILING:
                T2 = grown[0]
                w = next(iter(T2.vertices - T.vertices))
                (e,) = T2.edges - T.edges
                step = (ExchangeMove.make((), (e,), MoveKind.EXTEND, new_vertex=w), T2)
        if step is None:
            hit = _exchange_step(G, T, pot, cfg)
            if hit is not None:
                mv, _ = hit
                step = (mv, apply_move(T, mv))
        if step is None:
            status = SolveStatus.STUCK_AT_SCORE if T.is_spanning() else SolveStatus.STUCK_NOT_SPANNING
            break
        mv, T_next = step
        new_pot = potential_of(G, T_next)
        if not new_pot < pot:
            raise AssertionError(f"potential did not decrease: {pot} -> {new_pot} via {mv}")
        T, pot = T_next, new_pot
        iterations += 1
        if trace is not None:
            trace.append(TraceEntry(iterations, mv, pot))
        log.debug("step %d %s %s", iterations, mv, pot)
    return SolveResult(status, T, tree_score(T), iterations, pot, trace)
