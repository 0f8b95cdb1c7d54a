"""Generic k-swap neighbourhood scan.

A k-swap removes ``k`` tree edges and adds ``k`` non-tree host edges so the
result is again a tree on the same vertex set.  The scan walks removal sets
in lexicographic order of tree-edge index, and for each one the add sets in
lexicographic order of non-tree-edge index, and stops at the first move whose
potential ``(score_class, d_st, -leg_mass)`` is strictly below the current
one.  Both backends visit moves in the same order and return the same move.

Tree edges are described by ``(child, parent)`` in a rooted view so that the
components of ``T - R`` can be labelled in one preorder pass.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from ._accel import USE_NUMBA, jit


@jit
def _tree_potential_tail(n, deg_new, t_child, t_par, removed, add_u, add_v, verts):
    # (d_st, -leg_mass) of the tree after the move; assumes exactly two branch vertices
    s = -1
    t = -1
    for v in verts:
        if deg_new[v] >= 3:
            if s < 0:
                s = v
            else:
                t = v
    if deg_new[t] > deg_new[s]:
        s, t = t, s
    start = np.zeros(n + 1, np.int64)
    for v in verts:
        start[v + 1] = deg_new[v]
    for v in range(n):
        start[v + 1] += start[v]
    fill = start[:n].copy()
    nbr = np.empty(start[n], np.int64)
    for e in range(t_child.shape[0]):
        a = t_child[e]
        if removed[a]:
            continue
        b = t_par[e]
        nbr[fill[a]] = b
        fill[a] += 1
        nbr[fill[b]] = a
        fill[b] += 1
    for j in range(add_u.shape[0]):
        a = add_u[j]
        b = add_v[j]
        nbr[fill[a]] = b
        fill[a] += 1
        nbr[fill[b]] = a
        fill[b] += 1
    dist = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    dist[s] = 0
    queue[0] = s
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for q in range(start[x], start[x + 1]):
            y = nbr[q]
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue[tail] = y
                tail += 1
    dst = dist[t]
    if deg_new[s] == deg_new[t]:
        return dst, 0
    seen = np.zeros(n, np.bool_)
    seen[s] = True
    seen[t] = True
    queue[0] = s
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for q in range(start[x], start[x + 1]):
            y = nbr[q]
            if not seen[y]:
                seen[y] = True
                queue[tail] = y
                tail += 1
    return dst, -(tail - dst)


@jit
def _scan_swaps_nb(n, k, t_child, t_par, preorder, parent, nu, nv, deg, cur_cls, cur_dst, cur_negmass,
                   max_branches):
    n_t = t_child.shape[0]
    n_e = nu.shape[0]
    rem_out = np.full(k, -1, np.int64)
    add_out = np.full(k, -1, np.int64)
    if k > n_t or k > n_e:
        return False, rem_out, add_out
    base_l = 0
    base_b = 0
    for v in preorder:
        if deg[v] == 1:
            base_l += 1
        elif deg[v] >= 3:
            base_b += 1
    removed = np.zeros(n, np.bool_)
    comp = np.zeros(n, np.int64)
    dl = np.zeros(n, np.int64)
    ri = np.arange(k)
    cand = np.empty(n_e, np.int64)
    uf = np.zeros((k + 1, k + 1), np.int64)
    pos = np.zeros(k + 1, np.int64)
    pick = np.zeros(k, np.int64)
    touched = np.empty(4 * k, np.int64)
    add_u = np.empty(k, np.int64)
    add_v = np.empty(k, np.int64)
    deg_new = deg.copy()
    while True:
        for j in range(k):
            removed[t_child[ri[j]]] = True
        nxt = 1
        comp[preorder[0]] = 0
        for i in range(1, preorder.shape[0]):
            v = preorder[i]
            if removed[v]:
                comp[v] = nxt
                nxt += 1
            else:
                comp[v] = comp[parent[v]]
        nc = 0
        for j in range(n_e):
            if comp[nu[j]] != comp[nv[j]]:
                cand[nc] = j
                nc += 1
        if nc >= k:
            for c in range(k + 1):
                uf[0, c] = c
            d = 0
            pos[0] = 0
            while d >= 0:
                if d == k:
                    # evaluate the complete move
                    nt = 0
                    for j in range(k):
                        e = ri[j]
                        a = t_child[e]
                        b = t_par[e]
                        dl[a] -= 1
                        dl[b] -= 1
                        touched[nt] = a
                        touched[nt + 1] = b
                        nt += 2
                    for j in range(k):
                        e = cand[pick[j]]
                        a = nu[e]
                        b = nv[e]
                        dl[a] += 1
                        dl[b] += 1
                        touched[nt] = a
                        touched[nt + 1] = b
                        nt += 2
                    nl = base_l
                    nb = base_b
                    for q in range(nt):
                        v = touched[q]
                        if dl[v] != 0:
                            od = deg[v]
                            ndg = od + dl[v]
                            if od == 1:
                                nl -= 1
                            elif od >= 3:
                                nb -= 1
                            if ndg == 1:
                                nl += 1
                            elif ndg >= 3:
                                nb += 1
                            deg_new[v] = ndg
                            dl[v] = 0
                    improving = False
                    if nb <= max_branches:
                        cls = nl + nb - 5
                        if cls < 0:
                            cls = 0
                        if cls < cur_cls:
                            improving = True
                        elif cls == cur_cls:
                            dst = 0
                            negmass = 0
                            if nb == 2:
                                for j in range(k):
                                    e = cand[pick[j]]
                                    add_u[j] = nu[e]
                                    add_v[j] = nv[e]
                                dst, negmass = _tree_potential_tail(n, deg_new, t_child, t_par, removed, add_u,
                                                                    add_v, preorder)
                            if dst < cur_dst or (dst == cur_dst and negmass < cur_negmass):
                                improving = True
                    for q in range(nt):
                        v = touched[q]
                        deg_new[v] = deg[v]
                    if improving:
                        for j in range(k):
                            rem_out[j] = ri[j]
                            add_out[j] = cand[pick[j]]
                        return True, rem_out, add_out
                    d -= 1
                    continue
                p = pos[d]
                chosen = -1
                while p <= nc - (k - d):
                    e = cand[p]
                    ca = comp[nu[e]]
                    cb = comp[nv[e]]
                    # find roots
                    while uf[d, ca] != ca:
                        ca = uf[d, ca]
                    while uf[d, cb] != cb:
                        cb = uf[d, cb]
                    if ca != cb:
                        chosen = p
                        for c in range(k + 1):
                            uf[d + 1, c] = uf[d, c]
                        uf[d + 1, cb] = ca
                        break
                    p += 1
                if chosen < 0:
                    d -= 1
                    continue
                pick[d] = chosen
                pos[d] = chosen + 1
                pos[d + 1] = chosen + 1
                d += 1
        for j in range(k):
            removed[t_child[ri[j]]] = False
        # next removal combination
        i = k - 1
        while i >= 0 and ri[i] == n_t - k + i:
            i -= 1
        if i < 0:
            break
        ri[i] += 1
        for j in range(i + 1, k):
            ri[j] = ri[j - 1] + 1
    return False, rem_out, add_out


# -- numpy fallback ---------------------------------------------------------

_BATCH = 4096


_tail_pure = getattr(_tree_potential_tail, "py_func", _tree_potential_tail)


def _tail_py(n, deg_new, t_child, t_par, removed_children, adds, verts):
    removed = np.zeros(n, dtype=bool)
    removed[list(removed_children)] = True
    add_u = np.array([a for a, _ in adds], dtype=np.int64)
    add_v = np.array([b for _, b in adds], dtype=np.int64)
    return _tail_pure(n, np.asarray(deg_new), t_child, t_par, removed, add_u, add_v, verts)


def _scan_swaps_np(n, k, t_child, t_par, preorder, parent, nu, nv, deg, cur_cls, cur_dst, cur_negmass,
                   max_branches):
    n_t = t_child.shape[0]
    n_e = nu.shape[0]
    none = (False, np.full(k, -1, np.int64), np.full(k, -1, np.int64))
    if k > n_t or k > n_e:
        return none
    base_l = int(np.count_nonzero(deg[preorder] == 1))
    base_b = int(np.count_nonzero(deg[preorder] >= 3))
    order_idx = np.arange(1, preorder.shape[0])
    rest = preorder[1:]
    for rem in combinations(range(n_t), k):
        rem = np.array(rem, dtype=np.int64)
        removed = np.zeros(n, dtype=bool)
        removed[t_child[rem]] = True
        # component label = preorder rank of the nearest cut ancestor (0 = root side)
        comp = np.zeros(n, dtype=np.int64)
        cut_rank = np.zeros(preorder.shape[0], dtype=np.int64)
        cut_rank[1:] = np.where(removed[rest], order_idx, 0)
        # propagate along preorder: parents precede children
        lab = np.zeros(n, dtype=np.int64)
        for i, v in enumerate(rest, start=1):
            lab[v] = cut_rank[i] if cut_rank[i] else lab[parent[v]]
        uniq = np.unique(lab[preorder])
        comp[preorder] = np.searchsorted(uniq, lab[preorder])
        cross = np.flatnonzero(comp[nu] != comp[nv])
        if cross.size < k:
            continue
        rem_u = t_child[rem]
        rem_v = t_par[rem]
        for batch in _combo_batches(cross.size, k):
            sel = cross[batch]                       # (B, k) non-tree edge ids
            ca = comp[nu[sel]]
            cb = comp[nv[sel]]
            labels = np.broadcast_to(np.arange(k + 1), (sel.shape[0], k + 1)).copy()
            rows = np.arange(sel.shape[0])
            ok = np.ones(sel.shape[0], dtype=bool)
            for j in range(k):
                la = labels[rows, ca[:, j]]
                lb = labels[rows, cb[:, j]]
                ok &= la != lb
                labels = np.where(labels == lb[:, None], la[:, None], labels)
            if not ok.any():
                continue
            sel = sel[ok]
            ends = np.concatenate([np.broadcast_to(np.concatenate([rem_u, rem_v]), (sel.shape[0], 2 * k)),
                                   nu[sel], nv[sel]], axis=1)
            sign = np.concatenate([-np.ones(2 * k, dtype=np.int64), np.ones(2 * k, dtype=np.int64)])
            delta = np.zeros((sel.shape[0], n), dtype=np.int64)
            r_idx = np.repeat(np.arange(sel.shape[0]), 4 * k)
            np.add.at(delta, (r_idx, ends.ravel()), np.tile(sign, sel.shape[0]))
            new_deg = deg[None, :] + delta
            changed = delta != 0
            nl = base_l + ((new_deg == 1) & changed).sum(axis=1) - ((deg[None, :] == 1) & changed).sum(axis=1)
            nb = base_b + ((new_deg >= 3) & changed).sum(axis=1) - ((deg[None, :] >= 3) & changed).sum(axis=1)
            cls = np.maximum(nl + nb - 5, 0)
            live = np.flatnonzero((nb <= max_branches) & (cls <= cur_cls))
            for r in live:
                if cls[r] < cur_cls:
                    return True, rem.copy(), sel[r].copy()
                if nb[r] == 2:
                    adds = [(int(nu[e]), int(nv[e])) for e in sel[r]]
                    dst, negmass = _tail_py(n, new_deg[r], t_child, t_par, t_child[rem], adds, preorder)
                else:
                    dst, negmass = 0, 0
                if (dst, negmass) < (cur_dst, cur_negmass):
                    return True, rem.copy(), sel[r].copy()
    return none


def _combo_batches(m: int, k: int):
    it = combinations(range(m), k)
    while True:
        chunk = np.fromiter((x for c in _take(it, _BATCH) for x in c), dtype=np.int64)
        if chunk.size == 0:
            return
        yield chunk.reshape(-1, k)


def _take(it, count):
    for _, item in zip(range(count), it):
        yield item


def scan_swaps(n, k, t_child, t_par, preorder, parent, nu, nv, deg, potential_tail, max_branches=2,
               use_numba: bool | None = None):
    """First improving k-swap, as ``(removed tree-edge ids, added edge ids)`` or ``None``.

    ``potential_tail`` is ``(score_class, d_st, -leg_mass)`` of the current tree.
    """
    use_numba = USE_NUMBA if use_numba is None else use_numba
    cur_cls, cur_dst, cur_negmass = (int(x) for x in potential_tail)
    fn = _scan_swaps_nb if use_numba else _scan_swaps_np
    found, rem, add = fn(n, k, t_child, t_par, preorder, parent, nu, nv, deg, cur_cls, cur_dst, cur_negmass,
                         max_branches)
    if not found:
        return None
    return [int(x) for x in rem], [int(x) for x in add]
