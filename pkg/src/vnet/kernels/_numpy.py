"""Pure numpy kernels, the fallback path when numba is unavailable
or disabled via VNET_PURE_NUMPY.

Every function here matches the numba twin in vnet.kernels._numba
bitwise: identical outputs in identical order, so results never depend
on which path is active.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 14


def rank_fq(mat, sub_t, mul_t, inv_t):
    """Rank of an encoded matrix over F_q.  Destroys mat."""
    rows, cols = mat.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(mat[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            mat[[r, piv]] = mat[[piv, r]]
        pv = int(mat[r, c])
        if pv != 1:
            mat[r] = mul_t[int(inv_t[pv]), mat[r]]
        below = mat[r + 1 :]
        facs = below[:, c]
        nzr = np.nonzero(facs)[0]
        if nzr.size:
            below[nzr] = sub_t[below[nzr], mul_t[facs[nzr][:, None], mat[r][None, :]]]
        r += 1
    return r


def net_numerators(mats, q, add_t, mul_t):
    """Numerators of all q^m net points for stacked generating matrices.

    mats is (s, m, m); point b has coordinate i with numerator
    sum_k (C^(i) b)_k q^(m-1-k), i.e. first vector entry most
    significant.  Returns (q^m, s) int64.
    """
    s, m, _ = mats.shape
    n = int(q) ** m
    digits = np.empty((n, m), dtype=np.int64)
    t = np.arange(n, dtype=np.int64)
    for j in range(m):
        digits[:, j] = t % q
        t //= q
    powq = q ** (m - 1 - np.arange(m, dtype=np.int64))
    out = np.empty((n, s), dtype=np.int64)
    for i in range(s):
        acc = np.zeros((n, m), dtype=np.int64)
        for j in range(m):
            col = mats[i, :, j]
            acc = add_t[acc, mul_t[digits[:, j][:, None], col[None, :]]]
        out[:, i] = acc @ powq
    return out


def _combos(basis, q, lo, hi, add_t, mul_t):
    """Kernel elements for counter values [lo, hi), one per row."""
    dim, length = basis.shape
    vec = np.zeros((hi - lo, length), dtype=np.int64)
    t = np.arange(lo, hi, dtype=np.int64)
    for i in range(dim):
        d = t % q
        t //= q
        nz = np.nonzero(d)[0]
        if nz.size:
            vec[nz] = add_t[vec[nz], mul_t[d[nz][:, None], basis[i][None, :]]]
    return vec


def _block_trailing(vec, m, s):
    """Per block trailing nonzero position (1-based, 0 for zero block)
    and the value found there."""
    n = vec.shape[0]
    rs = np.empty((n, s), dtype=np.int64)
    vals = np.empty((n, s), dtype=np.int64)
    rows = np.arange(n)
    for b in range(s):
        blk = vec[:, b * m : (b + 1) * m]
        nzm = blk != 0
        has = nzm.any(axis=1)
        last = m - 1 - np.argmax(nzm[:, ::-1], axis=1)
        safe = np.where(has, last, 0)
        rs[:, b] = np.where(has, last + 1, 0)
        vals[:, b] = np.where(has, blk[rows, safe], 0)
    return rs, vals


def weight_terms(basis, q, m, s, add_t, mul_t, sub_t, inv_qpow, sin_inv, start):
    """Trigonometric weights of all kernel elements with counter >= start.

    Output index k is the element with odometer counter start + k, so
    the order matches the numba twin exactly.
    """
    dim = basis.shape[0]
    total = int(q) ** dim
    out = np.empty(total - start, dtype=np.float64)
    pos = 0
    for lo in range(start, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        vec = _combos(basis, q, lo, hi, add_t, mul_t)
        rs, vals = _block_trailing(vec, m, s)
        w = np.ones(hi - lo, dtype=np.float64)
        for b in range(s):
            has = rs[:, b] > 0
            fac = inv_qpow[rs[:, b]] * sin_inv[np.where(has, vals[:, b], 1)]
            w *= np.where(has, fac, 1.0)
        out[pos : pos + hi - lo] = w
        pos += hi - lo
    return out


def min_weighted_degree(basis, q, m, s, add_t, mul_t, sub_t, start):
    """Minimum over kernel elements (counter >= start) of the weighted
    degree sum(trailing positions) - 1, with the first minimizing
    counter.  Returns (best, counter)."""
    dim = basis.shape[0]
    total = int(q) ** dim
    best = np.int64(1) << 60
    best_c = np.int64(-1)
    for lo in range(start, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        vec = _combos(basis, q, lo, hi, add_t, mul_t)
        rs, _ = _block_trailing(vec, m, s)
        w = rs.sum(axis=1) - 1
        i = int(np.argmin(w))
        if w[i] < best:
            best = np.int64(w[i])
            best_c = np.int64(lo + i)
    return int(best), int(best_c)
