"""Numba jit kernels for the enumeration heavy inner loops.

Each function is the bitwise twin of the same name in
vnet.kernels._numpy: same arguments, same outputs in the same order.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def rank_fq(mat, sub_t, mul_t, inv_t):
    rows, cols = mat.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if mat[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = mat[r, j]
                mat[r, j] = mat[piv, j]
                mat[piv, j] = t
        pv = mat[r, c]
        if pv != 1:
            pinv = inv_t[pv]
            for j in range(cols):
                mat[r, j] = mul_t[pinv, mat[r, j]]
        for i in range(r + 1, rows):
            f = mat[i, c]
            if f != 0:
                for j in range(cols):
                    mat[i, j] = sub_t[mat[i, j], mul_t[f, mat[r, j]]]
        r += 1
    return r


@njit(cache=True)
def net_numerators(mats, q, add_t, mul_t):
    s, m, _ = mats.shape
    n = 1
    for _ in range(m):
        n *= q
    digits = np.empty(m, dtype=np.int64)
    powq = np.empty(m, dtype=np.int64)
    powq[m - 1] = 1
    for k in range(m - 2, -1, -1):
        powq[k] = powq[k + 1] * q
    out = np.empty((n, s), dtype=np.int64)
    for b in range(n):
        t = b
        for j in range(m):
            digits[j] = t % q
            t //= q
        for i in range(s):
            num = np.int64(0)
            for k in range(m):
                acc = np.int64(0)
                for j in range(m):
                    d = digits[j]
                    if d != 0:
                        acc = add_t[acc, mul_t[d, mats[i, k, j]]]
                num += acc * powq[k]
            out[b, i] = num
    return out


@njit(cache=True)
def weight_terms(basis, q, m, s, add_t, mul_t, sub_t, inv_qpow, sin_inv, start):
    dim, length = basis.shape
    total = 1
    for _ in range(dim):
        total *= q
    count = total - start
    out = np.empty(count, dtype=np.float64)
    vec = np.zeros(length, dtype=np.int64)
    digits = np.zeros(dim, dtype=np.int64)
    c = start
    for i in range(dim):
        d = c % q
        c //= q
        digits[i] = d
        if d != 0:
            for l in range(length):
                vec[l] = add_t[vec[l], mul_t[d, basis[i, l]]]
    roll = sub_t[0, q - 1]
    for idx in range(count):
        w = 1.0
        for b in range(s):
            off = b * m
            for j in range(m - 1, -1, -1):
                v = vec[off + j]
                if v != 0:
                    w *= inv_qpow[j + 1] * sin_inv[v]
                    break
        out[idx] = w
        if idx + 1 == count:
            break
        i = 0
        while digits[i] == q - 1:
            digits[i] = 0
            for l in range(length):
                vec[l] = add_t[vec[l], mul_t[roll, basis[i, l]]]
            i += 1
        delta = sub_t[digits[i] + 1, digits[i]]
        digits[i] += 1
        for l in range(length):
            vec[l] = add_t[vec[l], mul_t[delta, basis[i, l]]]
    return out


@njit(cache=True)
def min_weighted_degree(basis, q, m, s, add_t, mul_t, sub_t, start):
    dim, length = basis.shape
    total = 1
    for _ in range(dim):
        total *= q
    count = total - start
    vec = np.zeros(length, dtype=np.int64)
    digits = np.zeros(dim, dtype=np.int64)
    c = start
    for i in range(dim):
        d = c % q
        c //= q
        digits[i] = d
        if d != 0:
            for l in range(length):
                vec[l] = add_t[vec[l], mul_t[d, basis[i, l]]]
    roll = sub_t[0, q - 1]
    best = np.int64(1) << 60
    best_c = np.int64(-1)
    counter = start
    for idx in range(count):
        w = np.int64(-1)
        for b in range(s):
            off = b * m
            for j in range(m - 1, -1, -1):
                if vec[off + j] != 0:
                    w += j + 1
                    break
        if w < best:
            best = w
            best_c = counter
        if idx + 1 == count:
            break
        i = 0
        while digits[i] == q - 1:
            digits[i] = 0
            for l in range(length):
                vec[l] = add_t[vec[l], mul_t[roll, basis[i, l]]]
            i += 1
        delta = sub_t[digits[i] + 1, digits[i]]
        digits[i] += 1
        for l in range(length):
            vec[l] = add_t[vec[l], mul_t[delta, basis[i, l]]]
        counter += 1
    return int(best), int(best_c)
