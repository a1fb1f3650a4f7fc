"""Compiled cores shared by the certificate search, the matching engine and
the spectral enclosures.

Everything here is deliberately allocation-light and branch-cheap: the
acceptance workloads run hundreds of millions of split evaluations and tens
of thousands of matchings, so the hot loops work on int64 bitmasks (vertex
counts <= 16) with 16-bit lookup tables for popcount and bit position.
"""
from __future__ import annotations

import numpy as np
from numba import njit

SCAN_LIMIT = 16  # hard bitmask-width limit of the subset scans

# -- lookup tables --------------------------------------------------------


def _build_pop16() -> np.ndarray:
    t = np.zeros(1 << 16, dtype=np.int64)
    for i in range(1, 1 << 16):
        t[i] = t[i >> 1] + (i & 1)
    return t


def _build_log2() -> np.ndarray:
    t = np.zeros(1 << 16, dtype=np.int64)
    for i in range(16):
        t[1 << i] = i
    return t


POP16 = _build_pop16()
LOG2_16 = _build_log2()


# -- deterministic tie-breaking -------------------------------------------


@njit(cache=True, nogil=True)
def _set_lex_less(a, b, log2t):
    """True when bitmask set ``a`` precedes ``b`` as a sorted vertex tuple.

    The smallest element of the symmetric difference decides: if it belongs
    to ``a``, then ``a`` wins unless ``b`` is a strict prefix of ``a``.
    """
    d = a ^ b
    if d == 0:
        return False
    lsb = d & (-d)
    mpos = log2t[lsb]
    if a & lsb:
        return (b >> (mpos + 1)) != 0
    return (a >> (mpos + 1)) == 0


@njit(cache=True, nogil=True)
def _better(val, W, T, bval, bW, bT, prefer_large, full, pop16, log2t):
    """Candidate ordering: larger objective, then smaller (or larger, per
    flag) support |S u T|, then lexicographically smaller S, then T."""
    if val != bval:
        return val > bval
    szw = pop16[W]
    bszw = pop16[bW]
    if szw != bszw:
        if prefer_large:
            return szw < bszw
        return szw > bszw
    S = (full ^ W) ^ T
    bS = (full ^ bW) ^ bT
    if S != bS:
        return _set_lex_less(S, bS, log2t)
    if T != bT:
        return _set_lex_less(T, bT, log2t)
    return False


# -- subset scans ----------------------------------------------------------
#
# Every (S, T) split of the vertex set is visited by enumerating the rest
# set W = V - (S u T) in the outer loop, computing the components of G[W]
# once, and then Gray-code walking T across U = V - W.  The odd-component
# count tau is maintained as a popcount of XORed per-vertex parity vectors,
# and the degree sum over T is updated incrementally per flip.


@njit(cache=True, nogil=True)
def scan_full(adj, n, k, mode, prefer_large, pop16, log2t):
    """Exhaustive split scan.

    mode 0: maximize the deficiency delta(S, T); a candidate needs delta > 0.
    mode 1: maximize the degree-sum slack k|T| - k|S| - 2 + q - sum(deg);
            a candidate needs slack >= 0.

    Returns ``(found, best_value, best_W, best_T, parity_violations)`` where
    the parity counter tallies mode-0 evaluations with delta != kn (mod 2).
    """
    full = (1 << n) - 1
    comps = np.empty(n + 1, np.int64)
    ulist = np.empty(n + 1, np.int64)
    ew = np.empty(n + 1, np.int64)
    pvl = np.empty(n + 1, np.int64)
    kn = k * n
    pv = 0
    found = False
    best_val = np.int64(-(1 << 60))
    bW = np.int64(0)
    bT = np.int64(0)
    for W in range(full, -1, -1):
        q = 0
        kpar = 0
        rem = W
        while rem:
            comp = rem & (-rem)
            frontier = comp
            while True:
                nxt = 0
                f = frontier
                while f:
                    b = f & (-f)
                    nxt |= adj[log2t[b]]
                    f ^= b
                nxt &= W & ~comp
                if nxt == 0:
                    break
                comp |= nxt
                frontier = nxt
            comps[q] = comp
            if (k * pop16[comp]) & 1:
                kpar |= 1 << q
            q += 1
            rem &= ~comp
        umask = full ^ W
        usz = 0
        f = umask
        while f:
            b = f & (-f)
            v = log2t[b]
            ulist[usz] = v
            ew[usz] = pop16[adj[v] & W]
            if mode == 0:
                pp = 0
                for i in range(q):
                    if pop16[adj[v] & comps[i]] & 1:
                        pp |= 1 << i
                pvl[usz] = pp
            usz += 1
            f ^= b
        if mode == 0:
            val = pop16[kpar] - k * usz
            pv += (val ^ kn) & 1
            ok = val > 0
        else:
            val = q - k * usz - 2
            ok = val >= 0
        if ok and ((not found) or _better(val, W, 0, best_val, bW, bT,
                                          prefer_large, full, pop16, log2t)):
            found = True
            best_val = val
            bW = W
            bT = 0
        T = 0
        tb = 0
        E = 0
        xorp = 0
        for idx in range(1, 1 << usz):
            pos = log2t[idx & (-idx)]
            v = ulist[pos]
            b = 1 << v
            if T & b:
                T ^= b
                tb -= 1
                E -= ew[pos] + 2 * pop16[adj[v] & T]
            else:
                E += ew[pos] + 2 * pop16[adj[v] & T]
                T |= b
                tb += 1
            if mode == 0:
                xorp ^= pvl[pos]
                val = pop16[xorp ^ kpar] + k * (2 * tb - usz) - E
                pv += (val ^ kn) & 1
                ok = val > 0
            else:
                val = k * (2 * tb - usz) - 2 + q - E
                ok = val >= 0
            if ok and ((not found) or _better(val, W, T, best_val, bW, bT,
                                              prefer_large, full, pop16, log2t)):
                found = True
                best_val = val
                bW = W
                bT = T
    return found, best_val, bW, bT, pv


@njit(cache=True, nogil=True)
def scan_exists(adj, n, k, pop16, log2t):
    """Early-exit variant of mode-0 :func:`scan_full`: stops at the first
    positive-deficiency split (scan order fixed, so the hit is deterministic,
    but it is not the tie-broken optimum)."""
    full = (1 << n) - 1
    comps = np.empty(n + 1, np.int64)
    ulist = np.empty(n + 1, np.int64)
    ew = np.empty(n + 1, np.int64)
    pvl = np.empty(n + 1, np.int64)
    kn = k * n
    pv = 0
    for W in range(full, -1, -1):
        q = 0
        kpar = 0
        rem = W
        while rem:
            comp = rem & (-rem)
            frontier = comp
            while True:
                nxt = 0
                f = frontier
                while f:
                    b = f & (-f)
                    nxt |= adj[log2t[b]]
                    f ^= b
                nxt &= W & ~comp
                if nxt == 0:
                    break
                comp |= nxt
                frontier = nxt
            comps[q] = comp
            if (k * pop16[comp]) & 1:
                kpar |= 1 << q
            q += 1
            rem &= ~comp
        umask = full ^ W
        usz = 0
        f = umask
        while f:
            b = f & (-f)
            v = log2t[b]
            ulist[usz] = v
            ew[usz] = pop16[adj[v] & W]
            pp = 0
            for i in range(q):
                if pop16[adj[v] & comps[i]] & 1:
                    pp |= 1 << i
            pvl[usz] = pp
            usz += 1
            f ^= b
        val = pop16[kpar] - k * usz
        pv += (val ^ kn) & 1
        if val > 0:
            return True, W, np.int64(0), pv
        T = 0
        tb = 0
        E = 0
        xorp = 0
        for idx in range(1, 1 << usz):
            pos = log2t[idx & (-idx)]
            v = ulist[pos]
            b = 1 << v
            if T & b:
                T ^= b
                tb -= 1
                E -= ew[pos] + 2 * pop16[adj[v] & T]
            else:
                E += ew[pos] + 2 * pop16[adj[v] & T]
                T |= b
                tb += 1
            xorp ^= pvl[pos]
            val = pop16[xorp ^ kpar] + k * (2 * tb - usz) - E
            pv += (val ^ kn) & 1
            if val > 0:
                return True, np.int64(W), T, pv
    return False, np.int64(0), np.int64(0), pv


# -- blossom matching ------------------------------------------------------


@njit(cache=True, nogil=True)
def _find_path(indptr, indices, match, p, base, q, used, blossom, used2, root):
    """Grow an alternating tree from ``root``; contract blossoms via the
    base[] array; augment and return True when an exposed vertex is reached."""
    n = match.shape[0]
    for i in range(n):
        p[i] = -1
        base[i] = i
        used[i] = 0
    used[root] = 1
    qh = 0
    qt = 0
    q[qt] = root
    qt += 1
    while qh < qt:
        v = q[qh]
        qh += 1
        for ei in range(indptr[v], indptr[v + 1]):
            to = indices[ei]
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and p[match[to]] != -1):
                # odd cycle: find the lowest common ancestor of the two tips
                for i in range(n):
                    used2[i] = 0
                a = v
                while True:
                    a = base[a]
                    used2[a] = 1
                    if match[a] == -1:
                        break
                    a = p[match[a]]
                b = to
                while True:
                    b = base[b]
                    if used2[b]:
                        break
                    b = p[match[b]]
                curbase = b
                for i in range(n):
                    blossom[i] = 0
                x = v
                child = to
                while base[x] != curbase:
                    blossom[base[x]] = 1
                    blossom[base[match[x]]] = 1
                    p[x] = child
                    child = match[x]
                    x = p[match[x]]
                x = to
                child = v
                while base[x] != curbase:
                    blossom[base[x]] = 1
                    blossom[base[match[x]]] = 1
                    p[x] = child
                    child = match[x]
                    x = p[match[x]]
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = curbase
                        if not used[i]:
                            used[i] = 1
                            q[qt] = i
                            qt += 1
            elif p[to] == -1:
                p[to] = v
                if match[to] == -1:
                    u2 = to
                    while u2 != -1:
                        pv2 = p[u2]
                        ppv = match[pv2]
                        match[u2] = pv2
                        match[pv2] = u2
                        u2 = ppv
                    return True
                used[match[to]] = 1
                q[qt] = match[to]
                qt += 1
    return False


@njit(cache=True, nogil=True)
def augment_to_maximum(indptr, indices, match, stop_on_fail):
    """Repeated augmentation from the exposed vertices.

    Returns ``(size, perfect)``.  With ``stop_on_fail`` the loop aborts at
    the first vertex that admits no augmenting path (enough to refute a
    perfect matching: such a vertex stays exposed in some maximum matching),
    so ``size`` is then a lower bound only.
    """
    n = match.shape[0]
    p = np.empty(n, np.int64)
    base = np.empty(n, np.int64)
    q = np.empty(n, np.int64)
    used = np.zeros(n, np.uint8)
    blossom = np.zeros(n, np.uint8)
    used2 = np.zeros(n, np.uint8)
    perfect = True
    for v in range(n):
        if match[v] == -1:
            if not _find_path(indptr, indices, match, p, base, q,
                              used, blossom, used2, v):
                perfect = False
                if stop_on_fail:
                    break
    size = 0
    for v in range(n):
        if match[v] != -1:
            size += 1
    return size // 2, perfect


@njit(cache=True, nogil=True)
def greedy_matching(indptr, indices, match):
    """Seed ``match`` with a maximal matching in adjacency order."""
    n = match.shape[0]
    for v in range(n):
        if match[v] == -1:
            for ei in range(indptr[v], indptr[v + 1]):
                to = indices[ei]
                if match[to] == -1:
                    match[v] = to
                    match[to] = v
                    break


# -- factor gadget ---------------------------------------------------------
#
# Per vertex v: one external node per incident edge end plus deg(v)-k
# internal nodes, internals joined to all of v's externals; one cross edge
# per original edge between its two external nodes.  Perfect matchings of
# the gadget correspond to k-factors, a factor using exactly the edges whose
# cross edge is matched.


@njit(cache=True, nogil=True)
def gadget_pm_mask(adj, n, k, pop16):
    """k-factor existence for a bitmask graph (n <= 16) via the gadget.

    Degree-sum prechecks (odd k*n, min degree < k) refute without building
    anything; otherwise the gadget CSR is assembled, seeded with a greedy
    degree-bounded subgraph, and finished with blossom augmentation.
    """
    if (k * n) & 1:
        return np.uint8(0)
    if n == 0:
        return np.uint8(1)
    deg = np.empty(n, np.int64)
    m = 0
    for v in range(n):
        d = pop16[adj[v]]
        if d < k:
            return np.uint8(0)
        deg[v] = d
        m += d
    m //= 2
    ext_off = np.empty(n + 1, np.int64)
    int_off = np.empty(n + 1, np.int64)
    ext_off[0] = 0
    for v in range(n):
        ext_off[v + 1] = ext_off[v] + deg[v]
    int_off[0] = 2 * m
    for v in range(n):
        int_off[v + 1] = int_off[v] + (deg[v] - k)
    naux = int_off[n]
    match = np.full(naux, -1, np.int64)
    partner = np.empty(2 * m, np.int64)
    slot = np.zeros(n, np.int64)
    cnt = np.zeros(n, np.int64)
    for u in range(n):
        rest = adj[u] >> (u + 1)
        v = u + 1
        while rest:
            if rest & 1:
                eu = ext_off[u] + slot[u]
                slot[u] += 1
                ev = ext_off[v] + slot[v]
                slot[v] += 1
                partner[eu] = ev
                partner[ev] = eu
                if cnt[u] < k and cnt[v] < k:
                    match[eu] = ev
                    match[ev] = eu
                    cnt[u] += 1
                    cnt[v] += 1
            rest >>= 1
            v += 1
    nnz = 2 * m
    for v in range(n):
        nnz += 2 * deg[v] * (deg[v] - k)
    indptr = np.empty(naux + 1, np.int64)
    indptr[0] = 0
    for v in range(n):
        ni = deg[v] - k
        for s in range(deg[v]):
            node = ext_off[v] + s
            indptr[node + 1] = ni + 1
    for v in range(n):
        for j in range(deg[v] - k):
            node = int_off[v] + j
            indptr[node + 1] = deg[v]
    for i in range(naux):
        indptr[i + 1] += indptr[i]
    indices = np.empty(nnz, np.int64)
    for v in range(n):
        ni = deg[v] - k
        for s in range(deg[v]):
            node = ext_off[v] + s
            pp = indptr[node]
            for j in range(ni):
                indices[pp + j] = int_off[v] + j
            indices[pp + ni] = partner[node]
        for j in range(ni):
            node = int_off[v] + j
            pp = indptr[node]
            for s in range(deg[v]):
                indices[pp + s] = ext_off[v] + s
    for v in range(n):
        ni = deg[v] - k
        ii = 0
        for s in range(deg[v]):
            x = ext_off[v] + s
            if match[x] == -1 and ii < ni:
                y = int_off[v] + ii
                match[x] = y
                match[y] = x
                ii += 1
    _, perfect = augment_to_maximum(indptr, indices, match, True)
    return np.uint8(1) if perfect else np.uint8(0)


# -- batched drivers -------------------------------------------------------


@njit(cache=True, nogil=True)
def bulk_factor_check(flat, k, pop16, log2t):
    """Both routes over a batch of same-order bitmask graphs.

    Returns ``(certificate_found, factor_exists, parity_violations)`` with
    one uint8 per graph per route; the routes never consult each other.
    """
    ng = flat.shape[0]
    n = flat.shape[1]
    cert = np.zeros(ng, np.uint8)
    pm = np.zeros(ng, np.uint8)
    pv = 0
    for i in range(ng):
        fnd, _, _, p = scan_exists(flat[i], n, k, pop16, log2t)
        if fnd:
            cert[i] = 1
        pv += p
        pm[i] = gadget_pm_mask(flat[i], n, k, pop16)
    return cert, pm, pv


# -- spectral --------------------------------------------------------------


@njit(cache=True, nogil=True)
def power_iteration(A, tol, max_iter, cap_hi, guard):
    """Shifted power iteration with a certified enclosure per step.

    Lower bound: the Rayleigh quotient mu.  Upper bound: the minimum of
    mu + ||Ax - mu x||, the Collatz-Wielandt quotient max_i (Ax)_i / x_i
    (valid because the iterates of A+I stay entrywise positive), and the
    caller's cap.  Both ends are widened by ``guard`` against rounding.
    """
    n = A.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    best_x = x.copy()
    best_lo = -1.0e300
    best_hi = 1.0e300
    best_resid = 1.0e300
    it = 0
    converged = False
    while it < max_iter:
        z = np.dot(A, x)
        mu = 0.0
        for i in range(n):
            mu += x[i] * z[i]
        r2 = 0.0
        cw = -1.0e300
        for i in range(n):
            d = z[i] - mu * x[i]
            r2 += d * d
            ratio = z[i] / x[i]
            if ratio > cw:
                cw = ratio
        resid = np.sqrt(r2)
        hi = mu + resid
        if cw < hi:
            hi = cw
        if cap_hi < hi:
            hi = cap_hi
        lo = mu - guard
        if lo < 0.0:
            lo = 0.0
        hi = hi + guard
        if hi < lo:
            hi = lo
        it += 1
        if hi - lo < best_hi - best_lo:
            best_lo = lo
            best_hi = hi
            best_resid = resid
            for i in range(n):
                best_x[i] = x[i]
        if hi - lo <= tol:
            converged = True
            break
        nrm = 0.0
        for i in range(n):
            y = z[i] + x[i]
            x[i] = y
            nrm += y * y
        nrm = np.sqrt(nrm)
        for i in range(n):
            x[i] /= nrm
    return best_lo, best_hi, best_resid, it, converged, best_x
