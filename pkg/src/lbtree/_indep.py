"""Independent-set search kernels.

Two searches back the structural predicates:

* ``min_weight_independent``: minimum total weight of an independent set of
  exactly ``k`` vertices drawn from a candidate mask.  With zero weights and
  ``stop_at=0`` it doubles as an existence test (used for induced stars).
* ``max_independent``: the independence number.

The numba variants work on ``uint64`` adjacency masks (``n <= 64``).  The
fallbacks are a level-wise numpy enumeration (weighted k-sets) and a
Python-int bitmask branch-and-bound (independence number).
"""
from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, jit

_BIG = np.int64(2**62)


@jit
def _popcount(x):
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@jit
def _lex_less(a, b):
    for i in range(a.shape[0]):
        if a[i] != b[i]:
            return a[i] < b[i]
    return False


@jit
def _min_weight_independent_nb(adj, weights, order, cand, k, stop_at):
    # order: vertices sorted by ascending weight; positions chosen increase.
    # Ties are explored so the witness is the lexicographically smallest
    # sorted set, matching the fallback.
    n = order.shape[0]
    one = np.uint64(1)
    best = _BIG
    best_set = np.full(k, -1, np.int64)
    cur = np.zeros(k, np.int64)
    pos = np.zeros(k + 1, np.int64)
    allowed = np.zeros(k + 1, np.uint64)
    sums = np.zeros(k + 1, np.int64)
    allowed[0] = cand
    d = 0
    while d >= 0:
        if d == k:
            srt = np.sort(cur)
            if sums[k] < best or (sums[k] == best and _lex_less(srt, best_set)):
                best = sums[k]
                best_set[:] = srt
                if best <= stop_at:
                    break
            d -= 1
            continue
        need = k - d - 1
        p = pos[d]
        chosen = -1
        while p < n:
            v = order[p]
            if (allowed[d] >> np.uint64(v)) & one:
                # weights ascend along order, so this bound only grows with p
                lb = sums[d] + weights[v]
                got = 0
                q = p + 1
                while got < need and q < n:
                    w = order[q]
                    if (allowed[d] >> np.uint64(w)) & one:
                        lb += weights[w]
                        got += 1
                    q += 1
                if got < need or lb > best:
                    p = n
                    break
                chosen = p
                break
            p += 1
        if chosen < 0:
            d -= 1
            continue
        v = order[chosen]
        pos[d] = chosen + 1
        cur[d] = v
        allowed[d + 1] = allowed[d] & ~adj[v] & ~(one << np.uint64(v))
        sums[d + 1] = sums[d] + weights[v]
        pos[d + 1] = chosen + 1
        d += 1
    return best, best_set


@jit
def _max_independent_nb(adj, full):
    n = adj.shape[0]
    one = np.uint64(1)
    size = 2 * n + 4
    st_mask = np.zeros(size, np.uint64)
    st_cnt = np.zeros(size, np.int64)
    st_mask[0] = full
    top = 1
    best = 0
    while top > 0:
        top -= 1
        a = st_mask[top]
        c = st_cnt[top]
        if a == 0:
            if c > best:
                best = c
            continue
        if c + _popcount(a) <= best:
            continue
        min_d = n + 1
        min_v = -1
        max_d = -1
        max_v = -1
        rest = a
        while rest:
            low = rest & (~rest + one)
            v = _popcount(low - one)
            rest ^= low
            dv = _popcount(adj[v] & a)
            if dv < min_d:
                min_d = dv
                min_v = v
            if dv > max_d:
                max_d = dv
                max_v = v
        if min_d <= 1:
            # a vertex of degree <= 1 always lies in some maximum independent set
            st_mask[top] = a & ~adj[min_v] & ~(one << np.uint64(min_v))
            st_cnt[top] = c + 1
            top += 1
            continue
        bit = one << np.uint64(max_v)
        st_mask[top] = a & ~bit
        st_cnt[top] = c
        top += 1
        st_mask[top] = a & ~adj[max_v] & ~bit
        st_cnt[top] = c + 1
        top += 1
    return best


# -- fallbacks ------------------------------------------------------------


def _min_weight_independent_np(matrix: np.ndarray, weights: np.ndarray, cand: np.ndarray, k: int,
                               stop_at: int = -1):
    """Level-wise enumeration of independent k-sets inside ``cand``."""
    n = matrix.shape[0]
    verts = np.flatnonzero(cand)
    if k <= 0 or verts.size < k:
        return int(_BIG), None
    ids = np.arange(n)
    sets = verts[:, None]
    blocked = matrix[verts] | ~cand[None, :]
    for _ in range(k - 1):
        last = sets[:, -1]
        free = ~blocked & (ids[None, :] > last[:, None])
        rows, cols = np.nonzero(free)
        if rows.size == 0:
            return int(_BIG), None
        sets = np.concatenate([sets[rows], cols[:, None]], axis=1)
        blocked = blocked[rows] | matrix[cols]
    totals = weights[sets].sum(axis=1)
    best = int(totals.min())
    idx = int(np.flatnonzero(totals == best)[0])
    return best, sets[idx].copy()


def _max_independent_py(masks: tuple[int, ...], full: int) -> int:
    best = 0
    stack = [(full, 0)]
    while stack:
        a, c = stack.pop()
        if a == 0:
            best = max(best, c)
            continue
        if c + a.bit_count() <= best:
            continue
        min_d, min_v, max_d, max_v = None, -1, -1, -1
        rest = a
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            dv = (masks[v] & a).bit_count()
            if min_d is None or dv < min_d:
                min_d, min_v = dv, v
            if dv > max_d:
                max_d, max_v = dv, v
        if min_d <= 1:
            stack.append((a & ~masks[min_v] & ~(1 << min_v), c + 1))
            continue
        bit = 1 << max_v
        stack.append((a & ~bit, c))
        stack.append((a & ~masks[max_v] & ~bit, c + 1))
    return best


# -- dispatch -------------------------------------------------------------


def min_weight_independent(G, weights, k: int, cand=None, stop_at: int = -1, use_numba: bool | None = None):
    """Return ``(total, vertices)`` for a minimum-weight independent k-set.

    ``total`` is ``None`` when no independent k-set exists inside ``cand``
    (an iterable of vertices; default all).  ``stop_at`` lets the search end
    as soon as a set of total ``<= stop_at`` is found.  The witness is the
    lexicographically smallest sorted minimum-weight set on both backends;
    combined with ``stop_at`` that only holds for uniform weights.
    """
    use_numba = USE_NUMBA if use_numba is None else use_numba
    n = G.n
    weights = np.asarray(weights, dtype=np.int64)
    cand_list = range(n) if cand is None else sorted(set(cand))
    if k <= 0:
        return 0, ()
    if use_numba and n <= 64:
        cmask = 0
        for v in cand_list:
            cmask |= 1 << v
        order = np.array(sorted(range(n), key=lambda v: (weights[v], v)), dtype=np.int64)
        best, found = _min_weight_independent_nb(G.adjacency_masks(), weights, order,
                                                 np.uint64(cmask), np.int64(k), np.int64(stop_at))
        if best >= _BIG:
            return None, None
        return int(best), tuple(sorted(int(v) for v in found))
    cmask_arr = np.zeros(n, dtype=bool)
    cmask_arr[list(cand_list)] = True
    best, found = _min_weight_independent_np(G.adjacency_matrix(), weights, cmask_arr, k, stop_at)
    if found is None:
        return None, None
    return int(best), tuple(sorted(int(v) for v in found))


def max_independent(G, use_numba: bool | None = None) -> int:
    use_numba = USE_NUMBA if use_numba is None else use_numba
    if G.n == 0:
        return 0
    if use_numba and G.n <= 64:
        full = np.uint64((1 << G.n) - 1) if G.n < 64 else np.uint64(2**64 - 1)
        return int(_max_independent_nb(G.adjacency_masks(), full))
    return _max_independent_py(G.int_masks(), (1 << G.n) - 1)
