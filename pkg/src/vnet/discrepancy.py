"""Star discrepancy machinery for prime q.

Provides the trigonometric weight on polynomials and row vectors, the
weighted sum over the annihilator (dual) space computed by kernel
enumeration, the weight-sum bounds and average existence bound, the
discrepancy bound, and an exact star discrepancy oracle for small
dimensions.  Everything here assumes prime q; the kernel basis
construction alone is field generic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels, linalg
from .errors import DimensionCap, NotPrime, SizeCap
from .fields import BaseField, poly_deg, poly_from_int, poly_trim
from .nets import AlphaVector, GeneratingMatrices, NetPointSet, vandermonde_net

DEFAULT_KERNEL_CAP = 1 << 24
DEFAULT_BOX_CAP = 1 << 20

# comparison tolerance for inequality assertions on sin-based weights
REL_TOL = 1e-12


@dataclass
class WeightedSum:
    value: float
    term_count: int
    cap_hit: bool = False


@dataclass(eq=False)
class KernelBasis:
    """Basis of the annihilator space of alpha: every spanned vector
    encodes a polynomial tuple h with sum h_i(alpha_i) = 0.

    Vector layout: block 1 holds coefficients of h_1 at exponents
    0..m-1, block i >= 2 those of h_i at exponents 1..m, so the
    ambient dimension is m*s.
    """

    field: BaseField
    q: int
    m: int
    s: int
    basis: np.ndarray  # (dim, m*s) int64

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def _check_prime(q: int) -> None:
    from .fields import is_prime

    if not is_prime(q):
        raise NotPrime(f"q={q} must be prime here")


def trig_weight(h, q: int) -> float:
    """Weight of a polynomial vanishing at 0: 1 for h = 0, otherwise
    1/(q^r sin(pi k_r / q)) with r = deg(h) and k_r the leading
    coefficient as an integer residue."""
    _check_prime(q)
    h = poly_trim(h)
    if not h:
        return 1.0
    if h[0] != 0:
        raise ValueError("weight is defined for polynomials with h(0) = 0")
    r = poly_deg(h)
    k_r = h[-1]
    return 1.0 / (q**r * math.sin(math.pi * k_r / q))


def shifted_weight(h1, q: int) -> float:
    """First-component weight: the weight of x*h_1(x).

    Centralizing the shift here keeps the deg < m vs vanishing-at-0
    bookkeeping in one place; every polynomial-side first component
    goes through this function.
    """
    h1 = poly_trim(h1)
    return trig_weight((0,) + h1 if h1 else (), q)


def vector_weight(k, q: int) -> float:
    """Weight of a row vector (k_1,...,k_m): 1 if zero, otherwise
    1/(q^r sin(pi k_r / q)) with r the last nonzero position
    (1-based)."""
    _check_prime(q)
    r = 0
    val = 0
    for j, c in enumerate(k):
        if c:
            r = j + 1
            val = int(c)
    if r == 0:
        return 1.0
    return 1.0 / (q**r * math.sin(math.pi * val / q))


def _weight_tables(q: int, m: int):
    inv_qpow = 1.0 / (float(q) ** np.arange(m + 1, dtype=np.float64))
    sin_inv = np.zeros(q, dtype=np.float64)
    for k in range(1, q):
        sin_inv[k] = 1.0 / math.sin(math.pi * k / q)
    return inv_qpow, sin_inv


def _sorted_sum(terms: np.ndarray) -> float:
    """Deterministic sum: ascending order, pairwise accumulation."""
    if terms.size == 0:
        return 0.0
    return float(np.sort(terms).sum())


def kernel_basis(alpha: AlphaVector) -> KernelBasis:
    """Basis of the kernel of (h_1,...,h_s) -> sum h_i(alpha_i).

    The matrix of the evaluation map in the monomial coefficient basis
    is exactly the stacked expanded Vandermonde matrix, so the kernel
    is its left null space.  Field generic: prime powers allowed.
    """
    tower = alpha.tower
    mats = vandermonde_net(alpha)
    basis = linalg.left_nullspace(tower.base, mats.stacked())
    return KernelBasis(tower.base, tower.q, tower.m, alpha.s, basis)


def _enumerate_weighted(
    field: BaseField, basis: np.ndarray, q: int, m: int, s: int, cap: int, on_cap: str
) -> WeightedSum:
    dim = basis.shape[0]
    count = q**dim - 1
    cap_hit = False
    if count > cap:
        if on_cap != "partial":
            raise SizeCap(f"kernel enumeration {count} exceeds cap {cap}")
        # partial: restrict to the subspace of the leading basis vectors
        while dim > 0 and q**dim - 1 > cap:
            dim -= 1
        basis = basis[:dim]
        count = q**dim - 1
        cap_hit = True
    if dim == 0:
        return WeightedSum(0.0, 0, cap_hit)
    inv_qpow, sin_inv = _weight_tables(q, m)
    terms = kernels.weight_terms(
        np.ascontiguousarray(basis),
        q,
        m,
        s,
        field.add_table,
        field.mul_table,
        field.sub_table,
        inv_qpow,
        sin_inv,
        1,
    )
    return WeightedSum(_sorted_sum(terms), count, cap_hit)


def r_q(
    alpha: AlphaVector, cap: int = DEFAULT_KERNEL_CAP, on_cap: str = "raise"
) -> WeightedSum:
    """Weighted sum over all nonzero annihilator tuples of alpha.

    The first component weight is the shifted one (weight of x*h_1);
    in the kernel vector layout that shift is exactly the exponent
    offset of block 1, so all blocks share one positional rule.
    """
    tower = alpha.tower
    _check_prime(tower.q)
    kb = kernel_basis(alpha)
    return _enumerate_weighted(
        tower.base, kb.basis, kb.q, kb.m, kb.s, cap, on_cap
    )


def r_q_matrices(
    mats: GeneratingMatrices, cap: int = DEFAULT_KERNEL_CAP, on_cap: str = "raise"
) -> WeightedSum:
    """Weighted sum over the nonzero left kernel of the stacked
    generating matrices: sum of products of row vector weights over all
    (k_1,...,k_s) with sum k_i C^(i) = 0."""
    field = mats.field
    _check_prime(field.q)
    basis = linalg.left_nullspace(field, mats.stacked())
    return _enumerate_weighted(
        field, basis, field.q, mats.m, mats.s, cap, on_cap
    )


# ---------------------------------------------------------------------------
# Closed-form bounds.


def weight_bound_factor(q: int, m: int) -> float:
    """Upper bound for the weight sum over polynomials of degree <= m
    vanishing at 0: m/2 + 1 for q = 2, ((2/pi) log q + 2/5) m + 1 for
    larger primes (natural log)."""
    _check_prime(q)
    if q == 2:
        return m / 2 + 1
    return ((2 / math.pi) * math.log(q) + 2 / 5) * m + 1


@dataclass
class WeightSumBounds:
    sum_h: float
    bound_h: float
    sum_tuple: float
    bound_tuple: float


def weight_sum_bounds(
    q: int, m: int, v: int, cap: int = DEFAULT_KERNEL_CAP
) -> WeightSumBounds:
    """Exact weight sums against their closed-form bounds.

    sum_h is the weight sum over all q^m polynomials with h(0) = 0 and
    deg <= m.  sum_tuple is the sum of product weights over v-tuples
    (first component of degree < m with the shifted weight, the rest
    vanishing at 0), computed by factorization into one-dimensional
    sums.  Asserts computed <= bound for both.
    """
    _check_prime(q)
    if m < 1 or v < 1:
        raise ValueError("m and v must be >= 1")
    if q**m - 1 > cap:
        raise SizeCap(f"weight sum enumeration q^{m} exceeds cap {cap}")
    field = BaseField(q)
    # vector route: all nonzero coefficient vectors at exponents 1..m
    inv_qpow, sin_inv = _weight_tables(q, m)
    eye = np.eye(m, dtype=np.int64)
    terms = kernels.weight_terms(
        eye, q, m, 1,
        field.add_table, field.mul_table, field.sub_table,
        inv_qpow, sin_inv, 1,
    )
    sum_h = 1.0 + _sorted_sum(terms)
    # polynomial route for the shifted first-component factor
    star_terms = sorted(
        shifted_weight(poly_from_int(n, q), q) for n in range(q**m)
    )
    sum_star = math.fsum(star_terms)
    # the shift is a bijection between the two index sets
    assert abs(sum_star - sum_h) <= REL_TOL * max(sum_star, sum_h), (
        "shifted first-component sum disagrees with the direct sum"
    )
    sum_tuple = sum_star * sum_h ** (v - 1)
    bound_h = weight_bound_factor(q, m)
    bound_tuple = bound_h**v
    assert sum_h <= bound_h + REL_TOL * max(1.0, bound_h), (
        f"weight sum {sum_h} exceeds bound {bound_h}"
    )
    assert sum_tuple <= bound_tuple + REL_TOL * max(1.0, bound_tuple), (
        f"tuple weight sum {sum_tuple} exceeds bound {bound_tuple}"
    )
    return WeightSumBounds(sum_h, bound_h, sum_tuple, bound_tuple)


def average_bound(q: int, m: int, s: int) -> float:
    """Existence bound: some alpha has star discrepancy at most
    1 - (1 - q^-m)^s + (m/q^m) B(q,m)^s."""
    _check_prime(q)
    b = weight_bound_factor(q, m)
    return 1.0 - (1.0 - 1.0 / q**m) ** s + (m / q**m) * b**s


def disc_bound(s: int, q: int, m: int, rq: WeightedSum) -> float:
    """Star discrepancy bound 1 - (1 - q^-m)^s + R_q for a net with
    weighted dual sum rq."""
    _check_prime(q)
    return 1.0 - (1.0 - 1.0 / q**m) ** s + rq.value


# ---------------------------------------------------------------------------
# Exact star discrepancy for small dimensions.


def star_discrepancy_exact(
    points: NetPointSet,
    max_dim: int = 3,
    allow_large_dim: bool = False,
    box_cap: int = DEFAULT_BOX_CAP,
) -> Fraction:
    """Exact star discrepancy over anchored boxes [0, t).

    The supremum is attained on the grid formed by the point
    coordinates and 1 in each axis, evaluating both the open count
    (x < t strictly, the inner limit) and the closed count (x <= t,
    the outer limit) at every grid corner:

        D* = max over corners y of
             max(vol(y) - Z_open(y)/N, Z_closed(y)/N - vol(y))

    All arithmetic is exact rational.
    """
    s = points.s
    if s > max_dim and not allow_large_dim:
        raise DimensionCap(
            f"s={s} above the exact star discrepancy default cap {max_dim}"
        )
    n_pts = points.n
    den = points.denominator
    grids = []
    for i in range(s):
        grids.append(np.array(sorted(set(points.numerators[:, i]) | {den}),
                              dtype=np.int64))
    sizes = [len(g) for g in grids]
    boxes = 1
    for sz in sizes:
        boxes *= sz
    if boxes > box_cap:
        raise SizeCap(f"{boxes} grid boxes exceed cap {box_cap}")
    # s-dimensional cumulative counts over grid positions
    hist = np.zeros(sizes, dtype=np.int64)
    pos = np.empty((n_pts, s), dtype=np.int64)
    for i in range(s):
        pos[:, i] = np.searchsorted(grids[i], points.numerators[:, i])
    np.add.at(hist, tuple(pos[:, i] for i in range(s)), 1)
    closed = hist
    for axis in range(s):
        closed = np.cumsum(closed, axis=axis)
    padded = np.zeros([sz + 1 for sz in sizes], dtype=np.int64)
    padded[tuple(slice(1, None) for _ in range(s))] = closed
    frac_grids = [[Fraction(int(u), den) for u in g] for g in grids]
    best = Fraction(0)
    for corner in itertools.product(*(range(sz) for sz in sizes)):
        vol = Fraction(1)
        for i, k in enumerate(corner):
            vol *= frac_grids[i][k]
        z_closed = Fraction(int(closed[corner]), n_pts)
        z_open = Fraction(int(padded[corner]), n_pts)
        gap = max(vol - z_open, z_closed - vol)
        if gap > best:
            best = gap
    return best
