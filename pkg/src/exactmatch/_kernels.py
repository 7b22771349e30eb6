"""Hot loops: subset landscape table, PM enumeration, even-cycle chord scan,
the BCPM edge-set sweep and the landscape-targeted colouring DFS.

Every kernel has a numba path and a numpy path with identical results. The
public names at the bottom of the module dispatch on ``options.USE_NUMBA``;
the ``*_numba`` / ``*_numpy`` variants stay importable for benchmarking.
Kernels taking an edge-weight matrix use ``w[i, j] = -1`` for a non-edge,
``0`` for blue and ``1`` for red.
"""

import numpy as np

from . import options

# ---------------------------------------------------------------- landscape


def _subset_landscape_loop(n, w):
    size = 1 << n
    table = np.zeros(size, dtype=np.uint64)
    table[0] = np.uint64(1)
    for mask in range(1, size):
        i = 0
        while not (mask >> i) & 1:
            i += 1
        rest = mask ^ (1 << i)
        acc = np.uint64(0)
        r = rest
        while r:
            j = 0
            while not (r >> j) & 1:
                j += 1
            r ^= 1 << j
            wij = w[i, j]
            if wij >= 0:
                sub = table[rest ^ (1 << j)]
                if sub:
                    acc |= sub << np.uint64(wij)
        table[mask] = acc
    return table


def _popcount(a):
    a = a.astype(np.int64, copy=True)
    out = np.zeros(a.shape, dtype=np.int64)
    while np.any(a):
        out += a & 1
        a >>= 1
    return out


def subset_landscape_numpy(n, w):
    size = 1 << n
    table = np.zeros(size, dtype=np.uint64)
    table[0] = 1
    masks = np.arange(size, dtype=np.int64)
    pop = _popcount(masks)
    for k in range(2, n + 1, 2):
        layer = masks[pop == k]
        low = layer & -layer
        i = np.log2(low).astype(np.int64)
        rest = layer ^ low
        acc = np.zeros(layer.shape[0], dtype=np.uint64)
        for j in range(n):
            wij = w[i, j]
            ok = (((rest >> j) & 1) == 1) & (wij >= 0)
            if not ok.any():
                continue
            sub = table[rest[ok] ^ (1 << j)]
            acc[ok] |= sub << wij[ok].astype(np.uint64)
        table[layer] = acc
    return table


# ------------------------------------------------------------- enumeration


def _enumerate_pms_loop(n, w, indptr, nbrs, limit):
    half = n // 2
    counts = np.zeros(half + 1, dtype=np.int64)
    reps = np.full((half + 1, n), -1, dtype=np.int64)
    if n % 2:
        return counts, 0, False, reps
    if n == 0:
        counts[0] = 1
        return counts, 1, False, reps
    mate = np.full(n, -1, dtype=np.int64)
    stack_v = np.zeros(half, dtype=np.int64)
    stack_p = np.zeros(half, dtype=np.int64)
    stack_r = np.zeros(half + 1, dtype=np.int64)
    total = 0
    depth = 0
    stack_v[0] = 0
    stack_p[0] = indptr[0]
    stack_r[0] = 0
    while depth >= 0:
        i = stack_v[depth]
        p = stack_p[depth]
        if mate[i] >= 0:  # undo the previous choice at this level
            j = mate[i]
            mate[i] = -1
            mate[j] = -1
        end = indptr[i + 1]
        while p < end and mate[nbrs[p]] >= 0:
            p += 1
        if p == end:
            depth -= 1
            continue
        j = nbrs[p]
        stack_p[depth] = p + 1
        mate[i] = j
        mate[j] = i
        red = stack_r[depth] + w[i, j]
        nxt = i + 1
        while nxt < n and mate[nxt] >= 0:
            nxt += 1
        if nxt == n:
            if total >= limit:
                return counts, total, True, reps
            if reps[red, 0] < 0:
                for v in range(n):
                    reps[red, v] = mate[v]
            counts[red] += 1
            total += 1
            continue
        depth += 1
        stack_v[depth] = nxt
        stack_p[depth] = indptr[nxt]
        stack_r[depth] = red
    return counts, total, False, reps


def enumerate_pms_numpy(n, w, indptr, nbrs, limit):
    half = n // 2
    counts = np.zeros(half + 1, dtype=np.int64)
    reps = np.full((half + 1, n), -1, dtype=np.int64)
    if n % 2:
        return counts, 0, False, reps
    covered = np.zeros(1, dtype=np.int64)
    red = np.zeros(1, dtype=np.int64)
    mates = np.full((1, n), -1, dtype=np.int64)
    if half == 0:
        counts[0] = 1
        return counts, 1, False, reps
    full = (1 << n) - 1
    for _ in range(half):
        if covered.shape[0] == 0:
            break
        free = ~covered & full
        low = free & -free
        i = np.log2(low).astype(np.int64)
        parent, partner = [], []
        for j in range(n):
            ok = (((covered >> j) & 1) == 0) & (w[i, j] >= 0)
            idx = np.nonzero(ok)[0]
            parent.append(idx)
            partner.append(np.full(idx.shape[0], j, dtype=np.int64))
        parent = np.concatenate(parent)
        partner = np.concatenate(partner)
        order = np.lexsort((partner, parent))
        parent, partner = parent[order], partner[order]
        pi = i[parent]
        covered = covered[parent] | (1 << pi) | (1 << partner)
        red = red[parent] + w[pi, partner]
        mates = mates[parent]
        rows = np.arange(parent.shape[0])
        mates[rows, pi] = partner
        mates[rows, partner] = pi
    total = int(covered.shape[0])
    truncated = total > limit
    if truncated:
        total = limit
        red, mates = red[:limit], mates[:limit]
    np.add.at(counts, red, 1)
    for k in range(half + 1):
        hit = np.nonzero(red == k)[0]
        if hit.shape[0]:
            reps[k] = mates[hit[0]]
    return counts, total, truncated, reps


# ------------------------------------------------------------ chord scan
# status codes: 0 holds, 1 violated (condition 1), 2 violated (condition 2),
# 3 inconclusive (cycle budget exhausted)


def _cycle_verdict(cyc, L, adj):
    half = L // 2
    has_odd = False
    for a in range(L):
        for d in range(3, half + 1, 2):
            if adj[cyc[a], cyc[(a + d) % L]]:
                has_odd = True
                break
        if has_odd:
            break
    if not has_odd:
        for a in range(L):
            for d in range(2, half + 1, 2):
                if not adj[cyc[a], cyc[(a + d) % L]]:
                    return 1
    if L >= 8:
        for q in range(L):
            for s in range(3, L - 4, 2):
                if adj[cyc[q], cyc[(q + s) % L]] and adj[cyc[(q + s + 1) % L], cyc[(q - 1 + L) % L]]:
                    return 0
        for a in range(L):
            for d in range(4, half + 1, 2):
                if not adj[cyc[a], cyc[(a + d) % L]]:
                    return 2
    return 0


def _make_chord_scan(verdict):
    def chord_scan(n, adj, indptr, nbrs, min_len, max_len, budget):
        path = np.zeros(max(n, 1), dtype=np.int64)
        ptr = np.zeros(max(n, 1), dtype=np.int64)
        onpath = np.zeros(max(n, 1), dtype=np.bool_)
        checked = 0
        for s in range(n):
            path[0] = s
            onpath[s] = True
            ptr[0] = indptr[s]
            depth = 0
            while depth >= 0:
                v = path[depth]
                p = ptr[depth]
                end = indptr[v + 1]
                advanced = False
                if depth + 1 < max_len:
                    while p < end:
                        u = nbrs[p]
                        p += 1
                        if u > s and not onpath[u]:
                            ptr[depth] = p
                            depth += 1
                            path[depth] = u
                            onpath[u] = True
                            ptr[depth] = indptr[u]
                            advanced = True
                            L = depth + 1
                            if L >= min_len and L % 2 == 0 and adj[u, s] and path[1] < u:
                                checked += 1
                                code = verdict(path, L, adj)
                                if code:
                                    return code, path[:L].copy(), checked
                                if checked >= budget:
                                    return 3, path[:0].copy(), checked
                            break
                if not advanced:
                    onpath[v] = False
                    depth -= 1
        return 0, path[:0].copy(), checked

    return chord_scan


# ------------------------------------------------------------- bcpm sweep


def _lowest_bit(x):
    if x == 0:
        return -1
    k = 0
    while not (x >> np.uint64(k)) & np.uint64(1):
        k += 1
    return k


def _make_bcpm_sweep(lowest_bit):
    def bcpm_sweep(n, eu, ev, er, table, k, max_size):
        """First vertex-disjoint edge set F (|F| <= max_size, canonical order)
        such that F plus a min-red PM of the remaining vertices has
        r <= k and r = k (mod 2).

        Returns ``(found, edge indices of F padded with -1, red count)``.
        """
        m = eu.shape[0]
        full = (1 << n) - 1
        chosen = np.full(4, -1, dtype=np.int64)
        kmin = lowest_bit(table[full])
        if kmin < 0:
            return False, chosen, -1
        if kmin <= k and (kmin - k) % 2 == 0:
            return True, chosen, kmin
        for size in range(1, max_size + 1):
            idx = np.zeros(size, dtype=np.int64)
            masks = np.zeros(size + 1, dtype=np.int64)
            reds = np.zeros(size + 1, dtype=np.int64)
            level = 0
            while level >= 0:
                if idx[level] >= m:
                    level -= 1
                    if level >= 0:
                        idx[level] += 1
                    continue
                e = idx[level]
                bits = (1 << eu[e]) | (1 << ev[e])
                if masks[level] & bits:
                    idx[level] += 1
                    continue
                masks[level + 1] = masks[level] | bits
                reds[level + 1] = reds[level] + er[e]
                if level + 1 == size:
                    rest_min = lowest_bit(table[full ^ masks[size]])
                    if rest_min >= 0:
                        tot = rest_min + reds[size]
                        if tot <= k and (tot - k) % 2 == 0:
                            for q in range(size):
                                chosen[q] = idx[q]
                            return True, chosen, tot
                    idx[level] += 1
                else:
                    level += 1
                    idx[level] = idx[level - 1] + 1
        return False, chosen, -1

    return bcpm_sweep


def _lowest_bit_py(x):
    x = int(x)
    return (x & -x).bit_length() - 1 if x else -1


def bcpm_sweep_numpy(n, eu, ev, er, table, k, max_size):
    m = eu.shape[0]
    full = (1 << n) - 1
    chosen = np.full(4, -1, dtype=np.int64)
    kmin = _lowest_bit_py(table[full])
    if kmin < 0:
        return False, chosen, -1
    if kmin <= k and (kmin - k) % 2 == 0:
        return True, chosen, kmin
    bits = [(1 << int(eu[e])) | (1 << int(ev[e])) for e in range(m)]
    er = [int(x) for x in er]
    for size in range(1, max_size + 1):
        # depth-first over increasing index tuples, pruned on overlap
        stack = [((), 0, 0, 0)]
        while stack:
            combo, start, mask, red = stack.pop()
            if len(combo) == size:
                rest_min = _lowest_bit_py(table[full ^ mask])
                if rest_min >= 0:
                    tot = rest_min + red
                    if tot <= k and (tot - k) % 2 == 0:
                        chosen[:size] = combo
                        return True, chosen, tot
                continue
            for e in range(m - 1, start - 1, -1):
                if not mask & bits[e]:
                    stack.append((combo + (e,), e + 1, mask | bits[e], red + er[e]))
    return False, chosen, -1


# -------------------------------------------------------- colouring search


def _coloring_dfs_loop(nfree, eptr, epm, r, rem, forbid, target):
    """Depth-first colouring of ``nfree`` free edges (blue before red) so
    that every PM ends on a red count outside its ``forbid`` bitmask and the
    counts cover ``target`` exactly.

    ``r`` / ``rem`` are each PM's red count and number of unassigned free
    edges (updated in place); free edge ``i`` lies on PMs
    ``epm[eptr[i]:eptr[i + 1]]``. A branch is cut once some PM can no longer
    reach an allowed count. Returns the first hit as a code (bit ``i`` =
    free edge ``i`` red) or -1.
    """
    npm = r.shape[0]
    for j in range(npm):
        if ((((1 << (rem[j] + 1)) - 1) << r[j]) & ~forbid[j]) == 0:
            return -1
    val = np.full(nfree + 1, -1, dtype=np.int64)
    pos = 0
    while pos >= 0:
        if pos == nfree:
            pres = 0
            for j in range(npm):
                pres |= 1 << r[j]
            if pres == target:
                code = 0
                for i in range(nfree):
                    if val[i] == 1:
                        code |= 1 << i
                return code
            pos -= 1
            continue
        v = val[pos]
        if v >= 0:
            for q in range(eptr[pos], eptr[pos + 1]):
                j = epm[q]
                rem[j] += 1
                r[j] -= v
        v += 1
        val[pos] = v
        if v > 1:
            val[pos] = -1
            pos -= 1
            continue
        ok = True
        for q in range(eptr[pos], eptr[pos + 1]):
            j = epm[q]
            rem[j] -= 1
            r[j] += v
            if ((((1 << (rem[j] + 1)) - 1) << r[j]) & ~forbid[j]) == 0:
                ok = False
        if ok:
            pos += 1
    return -1


coloring_dfs_numpy = _coloring_dfs_loop


# --------------------------------------------------------------- dispatch

chord_scan_numpy = _make_chord_scan(_cycle_verdict)

if options.HAVE_NUMBA:
    from numba import njit

    _jit = njit(**options.NUMBA_OPTS)
    subset_landscape_numba = _jit(_subset_landscape_loop)
    enumerate_pms_numba = _jit(_enumerate_pms_loop)
    chord_scan_numba = _jit(_make_chord_scan(_jit(_cycle_verdict)))
    bcpm_sweep_numba = _jit(_make_bcpm_sweep(_jit(_lowest_bit)))
    coloring_dfs_numba = _jit(_coloring_dfs_loop)
else:  # pragma: no cover
    subset_landscape_numba = enumerate_pms_numba = chord_scan_numba = bcpm_sweep_numba = None
    coloring_dfs_numba = None

if options.USE_NUMBA:
    subset_landscape = subset_landscape_numba
    enumerate_pms = enumerate_pms_numba
    chord_scan = chord_scan_numba
    bcpm_sweep = bcpm_sweep_numba
    coloring_dfs = coloring_dfs_numba
else:
    subset_landscape = subset_landscape_numpy
    enumerate_pms = enumerate_pms_numpy
    chord_scan = chord_scan_numpy
    bcpm_sweep = bcpm_sweep_numpy
    coloring_dfs = coloring_dfs_numpy
