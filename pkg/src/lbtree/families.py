"""Instance generators: the sharpness construction plus random and structured families.

Every generated instance from the hypothesis-targeting families
(``RandomRejection``, ``LineGraph``, ``CliqueChain``) is re-checked with
:func:`lbtree.structure.check_hypotheses` before it is returned.

Parameters per family (all integers unless noted):

``Sharpness``        ``m >= 1``
``RandomRejection``  ``n`` in 5..64, ``p_num``/``p_den`` (default 1/2), optional ``tries``
``LineGraph``        ``base_n`` in 3..12, ``p_num``/``p_den`` (default 1/2), optional ``tries``
``CliqueChain``      ``cliques`` in 2..4, ``lo``/``hi`` clique sizes (2..16), ``hub`` 0/1,
                     ``extra`` random chords, optional ``tries``
``Classic``          ``kind`` (string: path, cycle, complete, complete_bipartite, star),
                     ``n`` (and ``n2`` for complete_bipartite)
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .graph import Edge, Graph, build_graph, is_connected
from .structure import check_hypotheses

DEFAULT_TRIES = 2000


class FamilyError(ValueError):
    pass


class RetryBudgetExhausted(FamilyError):
    """No hypothesis-satisfying sample within the retry budget."""


class Family(str, enum.Enum):
    SHARPNESS = "Sharpness"
    RANDOM_REJECTION = "RandomRejection"
    LINE_GRAPH = "LineGraph"
    CLIQUE_CHAIN = "CliqueChain"
    CLASSIC = "Classic"


CLASSIC_KINDS = ("path", "cycle", "complete", "complete_bipartite", "star")

_ALLOWED = {
    Family.SHARPNESS: {"m"},
    Family.RANDOM_REJECTION: {"n", "p_num", "p_den", "tries"},
    Family.LINE_GRAPH: {"base_n", "p_num", "p_den", "tries"},
    Family.CLIQUE_CHAIN: {"cliques", "lo", "hi", "hub", "extra", "tries"},
    Family.CLASSIC: {"kind", "n", "n2"},
}
_REQUIRED = {
    Family.SHARPNESS: {"m"},
    Family.RANDOM_REJECTION: {"n"},
    Family.LINE_GRAPH: {"base_n"},
    Family.CLIQUE_CHAIN: {"cliques"},
    Family.CLASSIC: {"kind", "n"},
}


def _check_range(name: str, value: Any, lo: int, hi: int | None = None) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FamilyError(f"parameter {name} must be an integer")
    if value < lo or (hi is not None and value > hi):
        raise FamilyError(f"parameter {name}={value} outside {lo}..{hi if hi is not None else 'inf'}")


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", dict(self.params))
        _check_range("seed", self.seed, 0, 2**64 - 1)
        fam, p = self.family, self.params
        unknown = set(p) - _ALLOWED[fam]
        if unknown:
            raise FamilyError(f"{fam.value} does not take {sorted(unknown)}")
        missing = _REQUIRED[fam] - set(p)
        if missing:
            raise FamilyError(f"{fam.value} needs {sorted(missing)}")
        if "p_num" in p or "p_den" in p:
            num, den = p.get("p_num", 1), p.get("p_den", 2)
            _check_range("p_den", den, 1)
            _check_range("p_num", num, 0, den)
        if "tries" in p:
            _check_range("tries", p["tries"], 1)
        if fam is Family.SHARPNESS:
            _check_range("m", p["m"], 1)
        elif fam is Family.RANDOM_REJECTION:
            _check_range("n", p["n"], 5, 64)
        elif fam is Family.LINE_GRAPH:
            _check_range("base_n", p["base_n"], 3, 12)
        elif fam is Family.CLIQUE_CHAIN:
            _check_range("cliques", p["cliques"], 2, 4)
            lo, hi = p.get("lo", 3), p.get("hi", 6)
            _check_range("lo", lo, 2, 16)
            _check_range("hi", hi, lo, 16)
            _check_range("hub", p.get("hub", 0), 0, 1)
            _check_range("extra", p.get("extra", 0), 0, 64)
        else:
            if p["kind"] not in CLASSIC_KINDS:
                raise FamilyError(f"unknown classic kind {p['kind']!r}")
            _check_range("n", p["n"], 1, 1024)
            if p["kind"] == "complete_bipartite":
                _check_range("n2", p.get("n2", p["n"]), 1, 1024)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "params": dict(sorted(self.params.items())), "seed": self.seed}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FamilySpec":
        try:
            return cls(Family(data["family"]), data.get("params", {}), int(data.get("seed", 0)))
        except (KeyError, TypeError) as exc:
            raise FamilyError(f"bad family spec {data!r}: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, FamilyError):
                raise
            raise FamilyError(str(exc)) from exc

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family.value}({inner})#{self.seed}"


# -- constructions -------------------------------------------------------------


def sharpness_graph(m: int) -> Graph:
    """Four disjoint ``K_m`` joined through two adjacent hubs.

    Layout: ``D_i = (i-1)m .. im-1`` for i = 1..4, ``x = 4m``, ``y = 4m+1``;
    ``x`` sees ``D_1 ∪ D_2``, ``y`` sees ``D_3 ∪ D_4``.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise FamilyError("m must be a positive integer")
    x, y = 4 * m, 4 * m + 1
    edges: list[Edge] = []
    for i in range(4):
        block = range(i * m, (i + 1) * m)
        edges.extend(itertools.combinations(block, 2))
        hub = x if i < 2 else y
        edges.extend((d, hub) for d in block)
    edges.append((x, y))
    return build_graph(4 * m + 2, edges)


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise FamilyError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def line_graph(G: Graph) -> Graph:
    """Vertices are the edges of ``G`` in sorted order; adjacent iff they share an endpoint."""
    edges = G.edges()
    at: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(edges):
        at.setdefault(u, []).append(i)
        at.setdefault(v, []).append(i)
    pairs = {p for group in at.values() for p in itertools.combinations(group, 2)}
    return build_graph(len(edges), pairs)


def _gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1)
    us, vs = np.nonzero(upper)
    return build_graph(n, zip(us.tolist(), vs.tolist()))


def _prob(params) -> float:
    return params.get("p_num", 1) / params.get("p_den", 2)


def _relabel(G: Graph, rng) -> Graph:
    perm = rng.permutation(G.n).tolist()
    return build_graph(G.n, ((perm[u], perm[v]) for u, v in G.edges()))


def _random_rejection(spec: FamilySpec, rng) -> Graph:
    n, p = spec.params["n"], _prob(spec.params)
    for _ in range(spec.params.get("tries", DEFAULT_TRIES)):
        G = _gnp(n, p, rng)
        if is_connected(G) and check_hypotheses(G).all_ok:
            return G
    raise RetryBudgetExhausted(f"{spec.label()}: no hypothesis-satisfying G(n,p) sample")


def _line_family(spec: FamilySpec, rng) -> Graph:
    base_n, p = spec.params["base_n"], _prob(spec.params)
    for _ in range(spec.params.get("tries", DEFAULT_TRIES)):
        base = _gnp(base_n, p, rng)
        if not is_connected(base) or base.m < 2:
            continue
        L = line_graph(base)
        if check_hypotheses(L).all_ok:
            return _relabel(L, rng)
    raise RetryBudgetExhausted(f"{spec.label()}: no hypothesis-satisfying line graph")


def _clique_chain(spec: FamilySpec, rng) -> Graph:
    """Cliques glued at cut vertices.

    ``hub=0`` strings them in a path (consecutive cliques share one vertex);
    ``hub=1`` glues all of them at a single vertex.  With four cliques either
    layout sits exactly at ``sigma_4 = n - 1``.  ``extra`` random chords are
    then added, and samples breaking the hypotheses are redrawn.
    """
    p = spec.params
    count, lo, hi = p["cliques"], p.get("lo", 3), p.get("hi", 6)
    hub, extra = p.get("hub", 0), p.get("extra", 0)
    for _ in range(p.get("tries", DEFAULT_TRIES)):
        sizes = rng.integers(lo, hi + 1, size=count).tolist()
        edges: set[Edge] = set()
        nxt = 1
        glue = 0  # vertex shared with the previous clique
        for size in sizes:
            block = [glue] + list(range(nxt, nxt + size - 1))
            nxt += size - 1
            if not hub:
                glue = block[-1]
            edges.update(itertools.combinations(block, 2))
        n = nxt
        if extra:
            missing = [e for e in itertools.combinations(range(n), 2) if e not in edges]
            if missing:
                pick = rng.choice(len(missing), size=min(extra, len(missing)), replace=False)
                edges.update(missing[i] for i in sorted(pick.tolist()))
        G = build_graph(n, edges)
        if check_hypotheses(G).all_ok:
            return _relabel(G, rng)
    raise RetryBudgetExhausted(f"{spec.label()}: no hypothesis-satisfying clique chain")


def _classic(spec: FamilySpec) -> Graph:
    kind, n = spec.params["kind"], spec.params["n"]
    if kind == "path":
        return path_graph(n)
    if kind == "cycle":
        return cycle_graph(n)
    if kind == "complete":
        return complete_graph(n)
    if kind == "complete_bipartite":
        return complete_bipartite_graph(n, spec.params.get("n2", n))
    return star_graph(n)


def generate(spec: FamilySpec) -> Graph:
    """Build the instance described by ``spec``; deterministic in ``(family, params, seed)``."""
    rng = np.random.default_rng(spec.seed)
    fam = spec.family
    if fam is Family.SHARPNESS:
        return sharpness_graph(spec.params["m"])
    if fam is Family.CLASSIC:
        return _classic(spec)
    if fam is Family.RANDOM_REJECTION:
        G = _random_rejection(spec, rng)
    elif fam is Family.LINE_GRAPH:
        G = _line_family(spec, rng)
    else:
        G = _clique_chain(spec, rng)
    if not check_hypotheses(G).all_ok:  # pragma: no cover - guarded above
        raise FamilyError(f"{spec.label()}: generator produced a graph failing the hypotheses")
    return G
