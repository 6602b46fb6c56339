"""Compiled slot-cover kernel (numba) for the larger exact searches.

Same search as exact._SlotCover - canonical choice order, minimum-options
item selection - plus one extra (completeness-preserving) rule: an item whose
constraint is already implied by some slot's digraph is assigned there
without branching, since adding its arcs changes nothing.

The module degrades gracefully: if numba is unavailable the caller falls
back to the pure-Python search.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised implicitly by which path the tests take
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _solve_kernel(
    n,
    k,
    before_mask,  # (P, 2) int64
    after_mask,  # (P, 2) int64
    before_verts,  # (P, 2, A) int8, -1 padded
    after_verts,  # (P, 2, A) int8, -1 padded
    n_opts,  # (P,) int8
    base_reach,  # (k, n) int64
    fresh_single,  # bool: restrict a fresh slot to option 0 (orientation symmetry)
    all_open,  # bool: slots are distinguishable and all open from the start
):
    P = before_mask.shape[0]
    A = before_verts.shape[2]
    out_slot = np.full(P, -1, np.int32)
    out_opt = np.full(P, -1, np.int32)
    if P == 0:
        return 1, out_slot, out_opt

    reach = np.empty((k, n), np.int64)
    for s in range(k):
        for v in range(n):
            reach[s, v] = base_reach[s, v]
    feas = np.zeros(P, np.int64)
    impl = np.zeros(P, np.int64)
    cnt = np.zeros(P, np.int32)
    used = 0
    n_assigned = 0
    if all_open:
        used = k
        for j in range(P):
            fj = np.int64(0)
            mj = np.int64(0)
            c = 0
            for s in range(k):
                for oj in range(n_opts[j]):
                    accj = np.int64(0)
                    for t in range(A):
                        w = after_verts[j, oj, t]
                        if w < 0:
                            break
                        accj |= reach[s, w]
                    if (accj & before_mask[j, oj]) == 0:
                        fj |= np.int64(1) << (2 * s + oj)
                        c += 1
                        implied = True
                        am = after_mask[j, oj]
                        for t in range(A):
                            u = before_verts[j, oj, t]
                            if u < 0:
                                break
                            if am & ~reach[s, u]:
                                implied = False
                                break
                        if implied:
                            mj |= np.int64(1) << (2 * s + oj)
            feas[j] = fj
            impl[j] = mj
            cnt[j] = c

    maxc = 2 * k + 2
    d_item = np.full(P + 1, -1, np.int32)
    d_ch_s = np.zeros((P + 1, maxc), np.int32)
    d_ch_o = np.zeros((P + 1, maxc), np.int32)
    d_len = np.zeros(P + 1, np.int32)
    d_ptr = np.zeros(P + 1, np.int32)
    d_free_mark = np.zeros(P + 1, np.int32)
    d_saved_used = np.zeros(P + 1, np.int32)
    d_saved_slot = np.zeros(P + 1, np.int32)
    d_saved_reach = np.zeros((P + 1, n), np.int64)
    d_saved_feas = np.zeros((P + 1, P), np.int64)
    d_saved_impl = np.zeros((P + 1, P), np.int64)
    d_saved_cnt = np.zeros((P + 1, P), np.int32)
    d_applied = np.zeros(P + 1, np.uint8)
    free_stack = np.zeros(P + 1, np.int32)
    free_top = 0

    depth = 0
    entering = True
    while True:
        if entering:
            # free moves: implied items are assigned without branching
            mark = free_top
            for j in range(P):
                if out_slot[j] < 0 and impl[j] != 0:
                    b = 0
                    ij = impl[j]
                    while (ij & 1) == 0:
                        ij >>= 1
                        b += 1
                    out_slot[j] = b >> 1
                    out_opt[j] = b & 1
                    free_stack[free_top] = j
                    free_top += 1
                    n_assigned += 1
            d_free_mark[depth] = mark
            if n_assigned == P:
                return 1, out_slot, out_opt
            # minimum-options item (ties to the smallest index)
            best = -1
            bestc = 1 << 30
            failed = False
            for j in range(P):
                if out_slot[j] >= 0:
                    continue
                c = cnt[j]
                if used < k:
                    if fresh_single:
                        c += 1
                    else:
                        c += n_opts[j]
                if c == 0:
                    failed = True
                    break
                if c < bestc:
                    best = j
                    bestc = c
                    if c == 1:
                        break
            if failed:
                # undo this depth's free moves, then backtrack
                while free_top > d_free_mark[depth]:
                    free_top -= 1
                    jj = free_stack[free_top]
                    out_slot[jj] = -1
                    out_opt[jj] = -1
                    n_assigned -= 1
                depth -= 1
                if depth < 0:
                    return 0, out_slot, out_opt
                entering = False
                d_ptr[depth] += 1
                continue
            # canonical choice list: slots ascending, options ascending
            length = 0
            for s in range(used):
                for o in range(n_opts[best]):
                    if feas[best] >> (2 * s + o) & 1:
                        d_ch_s[depth, length] = s
                        d_ch_o[depth, length] = o
                        length += 1
            if used < k:
                if fresh_single:
                    d_ch_s[depth, length] = used
                    d_ch_o[depth, length] = 0
                    length += 1
                else:
                    for o in range(n_opts[best]):
                        d_ch_s[depth, length] = used
                        d_ch_o[depth, length] = o
                        length += 1
            d_item[depth] = best
            d_len[depth] = length
            d_ptr[depth] = 0
            d_applied[depth] = 0
            entering = False
            continue

        # trying the next choice at this depth: first undo the previous one
        if d_applied[depth]:
            item = d_item[depth]
            s = d_saved_slot[depth]
            used = d_saved_used[depth]
            for v in range(n):
                reach[s, v] = d_saved_reach[depth, v]
            for j in range(P):
                feas[j] = d_saved_feas[depth, j]
                impl[j] = d_saved_impl[depth, j]
                cnt[j] = d_saved_cnt[depth, j]
            out_slot[item] = -1
            out_opt[item] = -1
            n_assigned -= 1
            d_applied[depth] = 0
        if d_ptr[depth] >= d_len[depth]:
            while free_top > d_free_mark[depth]:
                free_top -= 1
                jj = free_stack[free_top]
                out_slot[jj] = -1
                out_opt[jj] = -1
                n_assigned -= 1
            depth -= 1
            if depth < 0:
                return 0, out_slot, out_opt
            d_ptr[depth] += 1
            continue

        item = d_item[depth]
        s = d_ch_s[depth, d_ptr[depth]]
        o = d_ch_o[depth, d_ptr[depth]]

        # save state touched by this choice
        d_saved_used[depth] = used
        d_saved_slot[depth] = s
        for v in range(n):
            d_saved_reach[depth, v] = reach[s, v]
        for j in range(P):
            d_saved_feas[depth, j] = feas[j]
            d_saved_impl[depth, j] = impl[j]
            d_saved_cnt[depth, j] = cnt[j]

        if s == used:
            used += 1
        out_slot[item] = s
        out_opt[item] = o
        n_assigned += 1
        d_applied[depth] = 1

        # add arcs before x after into slot s
        acc = np.int64(0)
        for t in range(A):
            w = after_verts[item, o, t]
            if w < 0:
                break
            acc |= reach[s, w]
        bm = before_mask[item, o]
        for v in range(n):
            if reach[s, v] & bm:
                reach[s, v] |= acc

        # refresh slot-s feasibility/implication bits for unassigned items
        for j in range(P):
            if out_slot[j] >= 0:
                continue
            fj = feas[j]
            mj = impl[j]
            clear = ~(np.int64(3) << (2 * s))
            fj &= clear
            mj &= clear
            for oj in range(n_opts[j]):
                accj = np.int64(0)
                for t in range(A):
                    w = after_verts[j, oj, t]
                    if w < 0:
                        break
                    accj |= reach[s, w]
                if (accj & before_mask[j, oj]) == 0:
                    fj |= np.int64(1) << (2 * s + oj)
                    implied = True
                    am = after_mask[j, oj]
                    for t in range(A):
                        u = before_verts[j, oj, t]
                        if u < 0:
                            break
                        if am & ~reach[s, u]:
                            implied = False
                            break
                    if implied:
                        mj |= np.int64(1) << (2 * s + oj)
            feas[j] = fj
            impl[j] = mj
            cnt[j] = np.int32(_popcount(fj))

        depth += 1
        entering = True
        continue


def solve_fast(
    n, k, items, base_arcs=None, fresh_first_option_only=True, per_slot_bases=None
):
    """Numba-backed equivalent of exact._SlotCover.solve (None if numba absent).

    `per_slot_bases` (a list of k arc lists) makes the slots distinguishable:
    all of them start open with their own base relation, and the
    fresh-slot/orientation symmetry reductions are disabled.
    """
    if not HAVE_NUMBA or n > 62:
        return "unavailable"
    P = len(items)
    max_side = 1
    for it in items:
        for _, _, before, after in it:
            max_side = max(max_side, len(before), len(after))
    before_mask = np.zeros((P, 2), np.int64)
    after_mask = np.zeros((P, 2), np.int64)
    before_verts = np.full((P, 2, max_side), -1, np.int8)
    after_verts = np.full((P, 2, max_side), -1, np.int8)
    n_opts = np.zeros(P, np.int8)
    for i, it in enumerate(items):
        n_opts[i] = len(it)
        for o, (bm, am, before, after) in enumerate(it):
            before_mask[i, o] = bm
            after_mask[i, o] = am
            for t, u in enumerate(before):
                before_verts[i, o, t] = u
            for t, w in enumerate(after):
                after_verts[i, o, t] = w
    def closed_reach(arcs):
        reach = [1 << v for v in range(n)]
        if arcs:
            succ = [0] * n
            for u, w in arcs:
                succ[u] |= 1 << w
            changed = True
            while changed:
                changed = False
                for v in range(n):
                    acc = reach[v]
                    m = reach[v]
                    while m:
                        low = m & -m
                        acc |= succ[low.bit_length() - 1] | reach[low.bit_length() - 1]
                        m ^= low
                    if acc != reach[v]:
                        reach[v] = acc
                        changed = True
        return reach

    base_reach = np.zeros((k, n), np.int64)
    all_open = per_slot_bases is not None
    if per_slot_bases is not None:
        if len(per_slot_bases) != k:
            raise ValueError("per_slot_bases must have one arc list per slot")
        for s in range(k):
            row = closed_reach(per_slot_bases[s])
            for v in range(n):
                if any(row[u] & (1 << v) and row[v] & (1 << u) for u in range(n) if u != v):
                    return None  # a base relation is cyclic: no solution
                base_reach[s, v] = row[v]
        fresh_first_option_only = False
    else:
        row = closed_reach(base_arcs)
        for s in range(k):
            for v in range(n):
                base_reach[s, v] = row[v]
    status, out_slot, out_opt = _solve_kernel(
        n,
        k,
        before_mask,
        after_mask,
        before_verts,
        after_verts,
        n_opts,
        base_reach,
        fresh_first_option_only,
        all_open,
    )
    if status == 0:
        return None
    return [(int(s), int(o)) for s, o in zip(out_slot, out_opt)]
