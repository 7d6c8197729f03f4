"""Vandermonde net construction.

Builds the s x m matrix of extension field powers, expands it to s
generating matrices over F_q, and generates the q^m net points as exact
rationals with shared denominator q^m.  Also provides the hyperplane
net and the reducible modulus variants for comparison, plus point file
round-tripping.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import AllZero, DegreeViolation, DimensionTooSmall, SizeCap
from .fields import (
    BaseField,
    FieldTower,
    poly_deg,
    poly_mod,
    poly_mul,
    poly_trim,
)

DEFAULT_POINT_CAP = 1 << 20


@dataclass(frozen=True)
class AlphaVector:
    """An s-tuple of extension field elements defining a Vandermonde net."""

    tower: FieldTower
    alphas: tuple

    def __post_init__(self):
        if len(self.alphas) < 1:
            raise DimensionTooSmall("alpha vector needs s >= 1 components")
        checked = tuple(self.tower.ext.check(a) for a in self.alphas)
        object.__setattr__(self, "alphas", checked)

    @property
    def s(self) -> int:
        return len(self.alphas)

    def encodings(self):
        ext = self.tower.ext
        return tuple(ext.encode(a) for a in self.alphas)

    @classmethod
    def from_encodings(cls, tower: FieldTower, encs) -> "AlphaVector":
        ext = tower.ext
        alphas = []
        for n in encs:
            n = int(n)
            if not 0 <= n < tower.size:
                raise ValueError(f"alpha encoding {n} out of range for q^m={tower.size}")
            alphas.append(ext.decode(n))
        return cls(tower, tuple(alphas))


@dataclass(frozen=True)
class GammaMatrix:
    """s x m matrix over F_{q^m}; row i column j holds the net element
    gamma_j^(i)."""

    tower: FieldTower
    rows: tuple

    @property
    def s(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return self.tower.m


@dataclass(eq=False)
class GeneratingMatrices:
    """s matrices of size m x m over F_q, one per coordinate."""

    field: BaseField
    mats: np.ndarray  # (s, m, m) int64 encodings

    def __post_init__(self):
        self.mats = np.asarray(self.mats, dtype=np.int64)
        if self.mats.ndim != 3 or self.mats.shape[1] != self.mats.shape[2]:
            raise ValueError("expected an (s, m, m) array")
        if self.mats.min() < 0 or self.mats.max() >= self.field.q:
            raise ValueError("matrix entries out of encoding range")

    @property
    def s(self) -> int:
        return self.mats.shape[0]

    @property
    def m(self) -> int:
        return self.mats.shape[1]

    @property
    def q(self) -> int:
        return self.field.q

    def stacked(self) -> np.ndarray:
        """All matrices stacked vertically, (s*m, m)."""
        return self.mats.reshape(self.s * self.m, self.m)


@dataclass(eq=False)
class NetPointSet:
    """q^m points in [0,1)^s as integer numerators over denominator q^m."""

    q: int
    m: int
    s: int
    numerators: np.ndarray  # (q^m, s) int64

    def __post_init__(self):
        self.numerators = np.asarray(self.numerators, dtype=np.int64)
        n = self.q**self.m
        if self.numerators.shape != (n, self.s):
            raise ValueError("expected q^m rows of s numerators")
        if self.numerators.size and (
            self.numerators.min() < 0 or self.numerators.max() >= n
        ):
            raise ValueError("numerator out of [0, q^m)")

    @property
    def denominator(self) -> int:
        return self.q**self.m

    @property
    def n(self) -> int:
        return self.numerators.shape[0]

    def fractions(self):
        den = self.denominator
        return [
            tuple(Fraction(int(v), den) for v in row) for row in self.numerators
        ]

    def __eq__(self, other):
        return (
            isinstance(other, NetPointSet)
            and (self.q, self.m, self.s) == (other.q, other.m, other.s)
            and np.array_equal(self.numerators, other.numerators)
        )


def vandermonde_matrix(alpha: AlphaVector) -> GammaMatrix:
    """Rows of consecutive powers: row 1 is (1, a_1, ..., a_1^(m-1)),
    row i >= 2 is (a_i, a_i^2, ..., a_i^m), with the convention 0^0 = 1."""
    ext = alpha.tower.ext
    m = alpha.tower.m
    rows = []
    for i, a in enumerate(alpha.alphas):
        row = []
        # 0^0 = 1 is ext.one(), which pow already returns for exponent 0
        p = ext.one() if i == 0 else a
        for _ in range(m):
            row.append(p)
            p = ext.mul(p, a)
        rows.append(tuple(row))
    return GammaMatrix(alpha.tower, tuple(rows))


def hyperplane_matrix(alpha: AlphaVector, basis=None) -> GammaMatrix:
    """Comparison construction: gamma_j^(i) = a_i * w_j for an ordered
    basis w of F_{q^m} over F_q (default: the polynomial basis)."""
    ext = alpha.tower.ext
    m = alpha.tower.m
    if all(ext.is_zero(a) for a in alpha.alphas):
        raise AllZero("hyperplane net needs at least one nonzero component")
    if basis is None:
        x = ext.x_class()
        basis = []
        w = ext.one()
        for _ in range(m):
            basis.append(w)
            w = ext.mul(w, x)
    else:
        basis = [ext.check(w) for w in basis]
        if len(basis) != m:
            raise ValueError(f"basis must have {m} elements")
    rows = tuple(
        tuple(ext.mul(a, w) for w in basis) for a in alpha.alphas
    )
    return GammaMatrix(alpha.tower, rows)


def expand(gamma: GammaMatrix) -> GeneratingMatrices:
    """Row j of matrix i is the coordinate vector of gamma_j^(i)."""
    m = gamma.m
    mats = np.array(
        [[list(g) for g in row] for row in gamma.rows], dtype=np.int64
    ).reshape(gamma.s, m, m)
    return GeneratingMatrices(gamma.tower.base, mats)


def vandermonde_net(alpha: AlphaVector) -> GeneratingMatrices:
    return expand(vandermonde_matrix(alpha))


def general_vandermonde(field: BaseField, f, gs) -> GeneratingMatrices:
    """Vandermonde style matrices through the residue ring F_q[x]/(f).

    f is monic of degree m but may be reducible; each g_i must satisfy
    deg(g_i) < m.  Row j of matrix 1 holds the coordinates of
    g_1^(j-1) mod f, row j of matrix i >= 2 those of g_i^j mod f.
    """
    f = poly_trim(f)
    m = poly_deg(f)
    if m < 1:
        raise DegreeViolation("modulus f must have degree >= 1")
    if f[-1] != 1:
        raise DegreeViolation("modulus f must be monic")
    gs = [poly_trim(g) for g in gs]
    if not gs:
        raise DimensionTooSmall("need at least one component polynomial")
    for g in gs:
        if poly_deg(g) >= m:
            raise DegreeViolation(
                f"component polynomial degree {poly_deg(g)} not below m={m}"
            )
    s = len(gs)
    mats = np.zeros((s, m, m), dtype=np.int64)
    for i, g in enumerate(gs):
        r = (1,) if i == 0 else poly_mod(field, g, f)
        for j in range(m):
            mats[i, j, : len(r)] = r
            r = poly_mod(field, poly_mul(field, r, g), f)
    return GeneratingMatrices(field, mats)


def generate_points(
    mats: GeneratingMatrices, cap: int = DEFAULT_POINT_CAP
) -> NetPointSet:
    """All q^m net points, b enumerated in ascending integer encoding.

    Point b has coordinate i equal to the digit expansion of C^(i) b,
    an exact rational with denominator q^m.  Duplicates are kept.
    """
    field = mats.field
    q, m, s = field.q, mats.m, mats.s
    n = q**m
    if n > cap:
        raise SizeCap(f"q^m={n} points exceed cap {cap}")
    nums = kernels.net_numerators(mats.mats, q, field.add_table, field.mul_table)
    return NetPointSet(q, m, s, nums)


# ---------------------------------------------------------------------------
# Point file I/O: CSV with a comment header carrying the net parameters.

_HEADER_RE = re.compile(r"^#\s*q=(\d+)\s+m=(\d+)\s+s=(\d+)\s+den=(\d+)\s*$")


def write_points(points: NetPointSet, out, float_values: bool = False) -> None:
    """Write a point file.  out is a path or a text file object."""
    close = False
    if isinstance(out, (str, bytes)):
        out = open(out, "w", encoding="utf-8")
        close = True
    try:
        out.write(
            f"# q={points.q} m={points.m} s={points.s} den={points.denominator}\n"
        )
        den = points.denominator
        for row in points.numerators:
            if float_values:
                out.write(",".join(repr(int(v) / den) for v in row))
            else:
                out.write(",".join(str(int(v)) for v in row))
            out.write("\n")
    finally:
        if close:
            out.close()


def read_points(src) -> NetPointSet:
    """Read a point file back into the identical NetPointSet.

    Accepts both integer numerator rows and --float rows; float values
    are exact because den <= 2^20 is far below double precision.
    """
    close = False
    if isinstance(src, (str, bytes)):
        src = open(src, "r", encoding="utf-8")
        close = True
    try:
        header = src.readline()
        mobj = _HEADER_RE.match(header.strip())
        if not mobj:
            raise ValueError(f"missing or malformed point file header: {header!r}")
        q, m, s, den = (int(g) for g in mobj.groups())
        if den != q**m:
            raise ValueError(f"header denominator {den} is not q^m={q**m}")
        rows = []
        for line in src:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != s:
                raise ValueError(f"expected {s} coordinates per row, got {len(parts)}")
            if any("." in p or "e" in p or "E" in p for p in parts):
                row = [round(float(p) * den) for p in parts]
            else:
                row = [int(p) for p in parts]
            rows.append(row)
        nums = np.array(rows, dtype=np.int64).reshape(len(rows), s)
        return NetPointSet(q, m, s, nums)
    finally:
        if close:
            src.close()
