"""Branch-and-bound kernel over the candidate triples of K_n^(3).

Written in the numba-compatible subset; ``_accel.jit`` decides whether it is
compiled. All arrays are int64 unless noted.

Conflicts are the forbidden sub-systems of the complete system, each a set of
3 or 4 candidate indices (``conf_members`` padded with -1). A candidate is
blocked while all other members of one of its conflicts are selected.
"""

from __future__ import annotations

import numpy as np

from ._accel import jit

STATUS_DONE = 0
STATUS_NODE_LIMIT = 1


@jit
def branch_and_bound(
    n,
    tri,  # (M, 3) vertices of each candidate
    conf_ptr,  # (M + 1,) CSR offsets into conf_ids
    conf_ids,  # conflict ids containing each candidate
    conf_members,  # (C, 4) candidate indices, -1 padded
    conf_size,  # (C,)
    ex_minus,  # upper bound on systems with one vertex deleted
    global_ub,  # upper bound on the answer
    init_best,  # size already achieved (by a known construction)
    enum_mode,  # True: keep every solution of size >= best
    forced,  # (M,) -1 free, 0 excluded, 1 included (work splitting)
    node_limit,  # <= 0 means unlimited
    capacity,  # rows in the solution store
):
    M = tri.shape[0]
    C = conf_size.shape[0]
    in_x = np.zeros(M, dtype=np.uint8)
    blocked = np.zeros(M, dtype=np.int64)
    cnt = np.zeros(C, dtype=np.int64)
    xdeg = np.zeros(n, dtype=np.int64)
    adeg = np.zeros(n, dtype=np.int64)
    state = np.zeros(M + 1, dtype=np.int64)
    best_sol = np.zeros(M, dtype=np.uint8)
    store = np.zeros((max(capacity, 1), M), dtype=np.uint8)
    stored = 0
    needed = 0
    best = init_best
    found = False
    size = 0
    nodes = 0
    status = STATUS_DONE
    i = 0
    state[0] = 0
    while i >= 0:
        st = state[i]
        if st == 0:
            nodes += 1
            if node_limit > 0 and nodes > node_limit:
                status = STATUS_NODE_LIMIT
                break
            # bounds
            avail = 0
            for v in range(n):
                adeg[v] = 0
            for j in range(i, M):
                if blocked[j] == 0 and forced[j] != 0:
                    avail += 1
                    adeg[tri[j, 0]] += 1
                    adeg[tri[j, 1]] += 1
                    adeg[tri[j, 2]] += 1
            ub = size + avail
            if global_ub < ub:
                ub = global_ub
            hmin = xdeg[0] + adeg[0]
            feasible = True
            for v in range(n):
                hi = xdeg[v] + adeg[v]
                if hi < hmin:
                    hmin = hi
                # final degrees must be non-increasing in the vertex index
                if xdeg[v] > hmin:
                    feasible = False
                    break
                b = ex_minus + hi
                if b < ub:
                    ub = b
            if not feasible:
                i -= 1
                continue
            if enum_mode:
                if ub < best:
                    i -= 1
                    continue
            elif ub <= best:
                i -= 1
                continue
            if i == M:
                if size > best:
                    best = size
                    found = True
                    for j in range(M):
                        best_sol[j] = in_x[j]
                    stored = 0
                    if enum_mode:
                        needed = 1
                        for j in range(M):
                            store[0, j] = in_x[j]
                        stored = 1
                elif enum_mode and size == best:
                    if stored < capacity:
                        for j in range(M):
                            store[stored, j] = in_x[j]
                    stored += 1
                    if stored > needed:
                        needed = stored
                    if not found:
                        found = True
                        for j in range(M):
                            best_sol[j] = in_x[j]
                i -= 1
                continue
            if forced[i] == 0 or (forced[i] == -1 and blocked[i] > 0):
                state[i] = 2
                i += 1
                state[i] = 0
                continue
            if blocked[i] > 0:  # forced include of a blocked candidate
                i -= 1
                continue
            # include candidate i
            in_x[i] = 1
            size += 1
            xdeg[tri[i, 0]] += 1
            xdeg[tri[i, 1]] += 1
            xdeg[tri[i, 2]] += 1
            for p in range(conf_ptr[i], conf_ptr[i + 1]):
                c = conf_ids[p]
                cnt[c] += 1
                if cnt[c] == conf_size[c] - 1:
                    for q in range(conf_size[c]):
                        m = conf_members[c, q]
                        if in_x[m] == 0:
                            blocked[m] += 1
            state[i] = 1
            i += 1
            state[i] = 0
        elif st == 1:
            # undo the include, then try excluding
            for p in range(conf_ptr[i], conf_ptr[i + 1]):
                c = conf_ids[p]
                if cnt[c] == conf_size[c] - 1:
                    for q in range(conf_size[c]):
                        m = conf_members[c, q]
                        if m != i and in_x[m] == 0:
                            blocked[m] -= 1
                cnt[c] -= 1
            in_x[i] = 0
            size -= 1
            xdeg[tri[i, 0]] -= 1
            xdeg[tri[i, 1]] -= 1
            xdeg[tri[i, 2]] -= 1
            if forced[i] == -1:
                state[i] = 2
                i += 1
                state[i] = 0
            else:
                i -= 1
        else:
            i -= 1
    return best, found, best_sol, store, min(stored, capacity), needed, nodes, status
