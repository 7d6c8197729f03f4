"""Exact net quality: the parameter t, the figure of merit, counting
and existence quantities, and the equidistribution oracle.

The parameter t is certified by rank checks over F_q on row prefixes of
the generating matrices.  The figure of merit is the minimal weighted
degree over the nonzero annihilator tuples of alpha, found by
enumerating the kernel of the evaluation map (see vnet.discrepancy for
the kernel construction).  t = m - merit on the same Vandermonde net,
which the tests cross-check exhaustively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .discrepancy import DEFAULT_KERNEL_CAP, kernel_basis
from .errors import SizeCap
from .nets import AlphaVector, GeneratingMatrices, NetPointSet
DEFAULT_INTERVAL_CAP = 1 << 20


@dataclass
class MeritReport:
    t: int
    rho: int
    method: str  # rank_scan | d_prime_enum
    witness: Optional[tuple]  # failing composition, or minimizing poly tuple


def compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative ints summing to `total`, in
    ascending lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _prefix_rows(mats: GeneratingMatrices, comp) -> np.ndarray:
    rows = [mats.mats[i, : d, :] for i, d in enumerate(comp) if d]
    if not rows:
        return np.zeros((0, mats.m), dtype=np.int64)
    return np.vstack(rows)


def _comp_independent(mats: GeneratingMatrices, comp) -> bool:
    rows = _prefix_rows(mats, comp)
    k = rows.shape[0]
    if k == 0:
        return True
    if k > mats.m:
        return False
    field = mats.field
    r = kernels.rank_fq(
        rows.copy(), field.sub_table, field.mul_table, field.inv_table
    )
    return r == k


def t_value(mats: GeneratingMatrices, return_witness: bool = False):
    """Least t such that for every composition (d_1,...,d_s) of m - t
    the first d_i rows of the matrices are jointly independent over F_q.

    Scans k = m - t downward; independence at level k+1 implies it at
    level k, so the first all-pass level is optimal.  The witness is
    the lexicographically smallest failing composition at the minimal
    failing level m - t + 1, the one that rules out t - 1 (None when
    t = 0).
    """
    m, s = mats.m, mats.s
    witness = None
    for k in range(m, -1, -1):
        ok = True
        for comp in compositions(k, s):
            if not _comp_independent(mats, comp):
                ok = False
                witness = comp
                break
        if ok:
            t = m - k
            return (t, witness) if return_witness else t
    raise AssertionError("unreachable: k=0 always passes")


def merit_rank_scan(mats: GeneratingMatrices) -> MeritReport:
    t, witness = t_value(mats, return_witness=True)
    return MeritReport(t=t, rho=mats.m - t, method="rank_scan", witness=witness)


def _vector_to_htuple(vec, m: int, s: int):
    """Decode a kernel vector into its polynomial tuple.

    Block 1 holds coefficients of exponents 0..m-1 (the deg < m
    component), block i >= 2 exponents 1..m (the vanishing-at-zero
    components).
    """
    from .fields import poly_trim

    out = [poly_trim(tuple(int(c) for c in vec[0:m]))]
    for i in range(1, s):
        out.append(poly_trim((0,) + tuple(int(c) for c in vec[i * m : (i + 1) * m])))
    return tuple(out)


def rho_direct(
    alpha: AlphaVector,
    cap: int = DEFAULT_KERNEL_CAP,
    return_witness: bool = False,
):
    """Figure of merit: minimum over nonzero annihilator tuples h of
    deg*(h_1) + sum_{i>=2} deg(h_i), with deg(0) = 0 and deg*(0) = -1;
    m when no nonzero tuple exists.

    Enumerates the kernel of (h_1,...,h_s) -> sum h_i(alpha_i) rather
    than all q^(ms) tuples; the kernel has q^(m(s-1)) elements for
    surjective evaluation.
    """
    tower = alpha.tower
    q, m, s = tower.q, tower.m, alpha.s
    kb = kernel_basis(alpha)
    dim = kb.basis.shape[0]
    if dim == 0:
        return (m, None) if return_witness else m
    if q**dim - 1 > cap:
        raise SizeCap(f"kernel enumeration {q**dim - 1} exceeds cap {cap}")
    field = tower.base
    w, counter = kernels.min_weighted_degree(
        kb.basis, q, m, s, field.add_table, field.mul_table, field.sub_table, 1
    )
    if not return_witness:
        return w
    vec = np.zeros(m * s, dtype=np.int64)
    c = counter
    for i in range(dim):
        d = c % q
        c //= q
        if d:
            vec = field.add_table[vec, field.mul_table[d, kb.basis[i]]]
    return w, _vector_to_htuple(vec, m, s)


def merit_dual_enum(alpha: AlphaVector, cap: int = DEFAULT_KERNEL_CAP) -> MeritReport:
    rho, witness = rho_direct(alpha, cap=cap, return_witness=True)
    return MeritReport(
        t=alpha.tower.m - rho, rho=rho, method="d_prime_enum", witness=witness
    )


# ---------------------------------------------------------------------------
# Counting and existence quantities.


def _comb(a: int, b: int) -> int:
    if b < 0 or b > a or a < 0:
        return 0
    return math.comb(a, b)


def count_A(q: int, l: int, n: int) -> int:
    """Number of l-tuples of nonzero polynomials over F_q, each with
    h(0) = 0, whose degrees sum to n."""
    if l < 1:
        raise ValueError("l must be >= 1")
    return _comb(n - 1, n - l) * (q - 1) ** l * q ** (n - l)


def delta_q(q: int, s: int, sigma: int) -> int:
    """The existence scan quantity: a weighted count of annihilator
    candidates below merit sigma, as an exact big integer."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    total = 0
    for d in range(s):
        inner = 0
        for n in range(sigma - s + d + 1):
            inner += _comb(n + s - d - 1, n) * ((n + s - d) // (s - d)) * q**n
        total += _comb(s, d) * (q - 1) ** (s - d) * inner
    return total


def existence_sigma(q: int, s: int, m: int) -> int:
    """Largest sigma <= m whose scan quantity stays below q^m (0 if
    none); such sigma guarantees existence of alpha with merit >= sigma
    and hence t <= m - sigma."""
    qm = q**m
    for sigma in range(m, 0, -1):
        if delta_q(q, s, sigma) < qm:
            return sigma
    return 0


def corollary_floor(q: int, s: int, m: int) -> int:
    """floor(m - s log_q m - 3) with exact integer logic.

    F <= m - s log_q m - 3 holds iff m^s <= q^(m-3-F); scan F downward
    from m - 3 and return the first F that passes.  May be negative;
    report-level clamping to 0 is the caller's concern.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    ms = m**s
    f = m - 3
    while True:
        e = m - 3 - f
        if e >= 0 and ms <= q**e:
            return f
        f -= 1


def equidist_check(
    points: NetPointSet, t: int, cap: int = DEFAULT_INTERVAL_CAP
) -> bool:
    """True iff every elementary interval of volume q^(t-m) holds
    exactly q^t points: all compositions (d_1,...,d_s) of m - t are
    binned by base-q digit prefixes and counted."""
    q, m, s = points.q, points.m, points.s
    if not 0 <= t <= m:
        raise ValueError(f"t={t} outside [0, m]")
    k = m - t
    if q**k > cap:
        raise SizeCap(f"interval count q^{k} exceeds cap {cap}")
    want = q**t
    nums = points.numerators
    for comp in compositions(k, s):
        idx = np.zeros(points.n, dtype=np.int64)
        for i, d in enumerate(comp):
            if d:
                idx = idx * q**d + nums[:, i] // q ** (m - d)
        counts = np.bincount(idx, minlength=q**k)
        if not (counts == want).all():
            return False
    return True
