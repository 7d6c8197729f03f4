"""Hot loop kernels with two interchangeable implementations.

The numba jit path is used by default; setting the environment variable
VNET_PURE_NUMPY to 1/true/yes/on (or a missing numba install) selects
the vectorized pure numpy fallback.  Both paths produce bitwise
identical outputs; tests/test_kernels.py checks the parity and
benchmarks/bench_kernels.py compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

from . import _numpy as numpy_impl

PURE_ENV = "VNET_PURE_NUMPY"


def _pure_requested() -> bool:
    return os.environ.get(PURE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


numba_impl = None
if not _pure_requested():
    try:
        from . import _numba as numba_impl
    except ImportError:
        numba_impl = None

_impl = numba_impl if numba_impl is not None else numpy_impl
USING_NUMBA = _impl is not numpy_impl
IMPL_NAME = "numba" if USING_NUMBA else "numpy"

rank_fq = _impl.rank_fq
net_numerators = _impl.net_numerators
weight_terms = _impl.weight_terms
min_weighted_degree = _impl.min_weighted_degree

__all__ = [
    "rank_fq",
    "net_numerators",
    "weight_terms",
    "min_weighted_degree",
    "numpy_impl",
    "numba_impl",
    "USING_NUMBA",
    "IMPL_NAME",
    "PURE_ENV",
    "warmup",
]


def warmup():
    """Run tiny instances of every kernel so jit compilation happens
    outside any timed region.  Harmless on the numpy path."""
    add_t = np.array([[0, 1], [1, 0]], dtype=np.int64)
    sub_t = add_t
    mul_t = np.array([[0, 0], [0, 1]], dtype=np.int64)
    inv_t = np.array([0, 1], dtype=np.int64)
    rank_fq(np.eye(2, dtype=np.int64), sub_t, mul_t, inv_t)
    net_numerators(np.eye(2, dtype=np.int64)[None, :, :], 2, add_t, mul_t)
    basis = np.array([[1, 0], [0, 1]], dtype=np.int64)
    inv_qpow = np.array([1.0, 0.5, 0.25])
    sin_inv = np.array([0.0, 1.0])
    weight_terms(basis, 2, 1, 2, add_t, mul_t, sub_t, inv_qpow, sin_inv, 1)
    min_weighted_degree(basis, 2, 1, 2, add_t, mul_t, sub_t, 1)
