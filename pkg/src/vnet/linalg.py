"""Gaussian elimination over F_q on integer encoded numpy matrices.

These routines run once per net or per search candidate, not in inner
enumeration loops, so they are plain Python driving table lookups.  The
hot rank checks inside scans go through vnet.kernels instead.
"""

from __future__ import annotations

import numpy as np


def row_reduce(field, mat):
    """Reduced row echelon form over F_q.

    Args:
        field: BaseField supplying the operation tables.
        mat: 2-D integer array of encodings, not modified.

    Returns:
        (rref, pivots) where pivots lists the pivot column of each
        leading row.
    """
    mat = np.array(mat, dtype=np.int64, copy=True)
    if mat.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    sub_t, mul_t, inv_t = field.sub_table, field.mul_table, field.inv_table
    rows, cols = mat.shape
    pivots = []
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
        other = np.nonzero(mat[:, c])[0]
        for i in other:
            if i != r:
                mat[i] = sub_t[mat[i], mul_t[int(mat[i, c]), mat[r]]]
        pivots.append(c)
        r += 1
    return mat, pivots


def rank(field, mat) -> int:
    return len(row_reduce(field, mat)[1])


def nullspace(field, mat):
    """Basis of the right null space {x : mat x = 0} over F_q.

    Returns a (dim, cols) int64 array whose rows are the canonical RREF
    basis vectors, ordered by ascending free column.
    """
    mat = np.asarray(mat, dtype=np.int64)
    rows, cols = mat.shape
    rref, pivots = row_reduce(field, mat)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    neg_t = field.neg_table
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = neg_t[rref[r, fc]]
    return basis


def left_nullspace(field, mat):
    """Basis of {v : v mat = 0}, one row per basis vector."""
    return nullspace(field, np.asarray(mat, dtype=np.int64).T)


def split_by_block(field, basis, lo: int, hi: int):
    """Reorder a kernel basis around a column block.

    Row reduces (a copy of) basis using pivot columns restricted to
    [lo, hi).  The span is unchanged.  Returns (out, n_zero) where the
    first n_zero rows of out are zero on the block and the remaining
    rows have linearly independent block parts.
    """
    out = np.array(basis, dtype=np.int64, copy=True)
    sub_t, mul_t, inv_t = field.sub_table, field.mul_table, field.inv_table
    rows = out.shape[0]
    r = 0
    for c in range(lo, hi):
        if r == rows:
            break
        nz = np.nonzero(out[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            out[[r, piv]] = out[[piv, r]]
        pv = int(out[r, c])
        if pv != 1:
            out[r] = mul_t[int(inv_t[pv]), out[r]]
        other = np.nonzero(out[:, c])[0]
        for i in other:
            if i != r:
                out[i] = sub_t[out[i], mul_t[int(out[i, c]), out[r]]]
        r += 1
    # rows >= r are zero on the block: move them to the front
    return np.vstack([out[r:], out[:r]]), rows - r
