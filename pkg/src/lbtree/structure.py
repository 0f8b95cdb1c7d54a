"""Exact structural predicates: independence, N_k classes, alpha, sigma_k, induced stars."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _indep
from .graph import Graph, VertexOutOfRange, is_connected

#: Default hard cap on instance size for the exponential searches.
MAX_EXACT_N = 64

INF = math.inf


class InstanceTooLarge(ValueError):
    pass


def _guard(G: Graph, limit: int | None) -> None:
    limit = MAX_EXACT_N if limit is None else limit
    if G.n > limit:
        raise InstanceTooLarge(f"n={G.n} exceeds the exact-search limit {limit}")


def _vertex_set(G: Graph, X: Iterable[int]) -> frozenset[int]:
    X = frozenset(X)
    for x in X:
        if not 0 <= x < G.n:
            raise VertexOutOfRange(f"vertex {x} outside 0..{G.n - 1}")
    return X


def is_independent(G: Graph, X: Iterable[int]) -> bool:
    X = _vertex_set(G, X)
    return all(not (G.neighbors(x) & X) for x in X)


def neighborhood_class(G: Graph, X: Iterable[int], k: int) -> frozenset[int]:
    """Vertices with exactly ``k`` neighbours inside ``X``."""
    if k < 1:
        raise ValueError("k must be positive")
    X = _vertex_set(G, X)
    return frozenset(v for v in range(G.n) if len(G.neighbors(v) & X) == k)


def independence_number(G: Graph, *, limit: int | None = None) -> int:
    _guard(G, limit)
    return _indep.max_independent(G)


def sigma_k(G: Graph, k: int, *, limit: int | None = None):
    """Minimum degree sum over independent k-sets.

    Returns ``(value, witness)``; ``value`` is ``math.inf`` and ``witness``
    is ``None`` when the graph has no independent set of size ``k``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    _guard(G, limit)
    total, witness = _indep.min_weight_independent(G, G.degrees(), k)
    if total is None:
        return INF, None
    return total, witness


def is_k1r_free(G: Graph, r: int, *, limit: int | None = None):
    """Check for an induced ``K_{1,r}``.

    Returns ``(True, None)`` or ``(False, (center, leaf_1, ..., leaf_r))``.
    The search looks for an independent r-set inside each neighbourhood.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    _guard(G, limit)
    zeros = np.zeros(G.n, dtype=np.int64)
    for c in range(G.n):
        if G.degree(c) < r:
            continue
        total, leaves = _indep.min_weight_independent(G, zeros, r, cand=G.adjacency[c], stop_at=0)
        if total is not None:
            return False, (c, *leaves)
    return True, None


@dataclass(frozen=True)
class HypothesisReport:
    n: int
    connected: bool
    k15_free: bool
    sigma4: float | int
    witness_star: tuple[int, ...] | None
    witness_set: tuple[int, ...] | None

    @property
    def sigma4_ok(self) -> bool:
        return self.sigma4 == INF or self.sigma4 >= self.n - 1

    @property
    def all_ok(self) -> bool:
        return self.connected and self.k15_free and self.sigma4_ok

    def to_dict(self) -> dict:
        return {
            "connected": self.connected,
            "k15_free": self.k15_free,
            "sigma4": "inf" if self.sigma4 == INF else int(self.sigma4),
            "sigma4_ok": self.sigma4_ok,
            "all_ok": self.all_ok,
            "witness_star": list(self.witness_star) if self.witness_star else None,
            "witness_set": list(self.witness_set) if self.witness_set else None,
        }


def check_hypotheses(G: Graph, *, limit: int | None = None) -> HypothesisReport:
    if G.n < 1:
        raise ValueError("graph must have at least one vertex")
    free, star = is_k1r_free(G, 5, limit=limit)
    s4, witness = sigma_k(G, 4, limit=limit)
    return HypothesisReport(
        n=G.n,
        connected=is_connected(G),
        k15_free=free,
        sigma4=s4,
        witness_star=star,
        witness_set=witness,
    )
