"""Finite field tower arithmetic for digital net construction.

Implements the tower F_p < F_q < F_{q^m} with explicit polynomial bases:
F_q = F_p[y]/(g) and F_{q^m} = F_q[x]/(f).  Base field elements are
integer encodings in [0, q), where the integer's base-p digits are the
coordinates with respect to the polynomial basis of g.  Extension
elements are length-m tuples of base encodings, i.e. their coordinate
vectors with respect to the polynomial basis of f.  Base arithmetic is
table driven so the same encodings feed the numpy and numba kernels
directly.
"""

from __future__ import annotations

import operator
from fractions import Fraction

import numpy as np

from .errors import MixedFieldLevels, NotPrime, SizeCap

# Largest base field order for which full q x q operation tables are built.
MAX_TABLE_Q = 1024

Poly = tuple  # coefficient tuple, constant term first, no trailing zeros


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list:
    """Distinct prime factors in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def factor_prime_power(q: int):
    """Write q = p^e with p prime, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# Polynomials over a base field: tuples of encodings, constant term first.
# The empty tuple is the zero polynomial.


def poly_trim(c) -> Poly:
    c = tuple(c)
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def poly_deg(a) -> int:
    # deg 0 polynomial is -1 here; merit code applies its own conventions
    return len(a) - 1


def poly_add(field, a, b) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return poly_trim(out)


def poly_neg(field, a) -> Poly:
    return tuple(field.neg(c) for c in a)


def poly_sub(field, a, b) -> Poly:
    return poly_add(field, a, poly_neg(field, b))


def poly_mul(field, a, b) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return poly_trim(out)


def poly_scale(field, a, c) -> Poly:
    if c == 0:
        return ()
    return poly_trim(tuple(field.mul(x, c) for x in a))


def poly_monic(field, a) -> Poly:
    a = poly_trim(a)
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return poly_scale(field, a, field.inv(lead))


def poly_divmod(field, a, b):
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(poly_trim(a))
    db, db_lead_inv = len(b) - 1, field.inv(b[-1])
    if len(a) - 1 < db:
        return (), poly_trim(a)
    quot = [0] * (len(a) - db)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        f = field.mul(a[-1], db_lead_inv)
        quot[k] = f
        for i, c in enumerate(b):
            a[k + i] = field.sub(a[k + i], field.mul(f, c))
        while a and a[-1] == 0:
            a.pop()
    return poly_trim(quot), poly_trim(a)


def poly_mod(field, a, b) -> Poly:
    return poly_divmod(field, a, b)[1]


def poly_gcd(field, a, b) -> Poly:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_mod(field, a, b)
    return poly_monic(field, a)


def poly_pow_mod(field, base, exp: int, mod) -> Poly:
    if exp < 0:
        raise ValueError("negative exponent")
    result = poly_mod(field, (1,), mod)
    base = poly_mod(field, base, mod)
    while exp:
        if exp & 1:
            result = poly_mod(field, poly_mul(field, result, base), mod)
        base = poly_mod(field, poly_mul(field, base, base), mod)
        exp >>= 1
    return result


def poly_eval(field, a, x: int) -> int:
    """Evaluate a polynomial over the base field at a base element."""
    acc = 0
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def poly_from_int(n: int, q: int) -> Poly:
    """Decode the canonical integer encoding sum(c_k q^k) of a polynomial."""
    out = []
    while n:
        out.append(n % q)
        n //= q
    return tuple(out)


def poly_to_int(a, q: int) -> int:
    n = 0
    for c in reversed(a):
        n = n * q + c
    return n


def poly_to_text(a) -> str:
    """Canonical text form: comma separated coefficients, constant first."""
    a = poly_trim(a)
    if not a:
        return "0"
    return ",".join(str(c) for c in a)


def poly_from_text(s: str, q: int) -> Poly:
    parts = [t.strip() for t in s.split(",")]
    try:
        coeffs = [int(t) for t in parts]
    except ValueError as exc:
        raise ValueError(f"bad polynomial text {s!r}") from exc
    for c in coeffs:
        if not 0 <= c < q:
            raise ValueError(f"coefficient {c} out of range for q={q}")
    return poly_trim(coeffs)


# ---------------------------------------------------------------------------


class BaseField:
    """F_q with q = p^e, table driven arithmetic on integer encodings."""

    def __init__(self, p: int, e: int = 1, g=None):
        if not is_prime(p):
            raise NotPrime(f"p={p} is not prime")
        if e < 1:
            raise ValueError("extension degree e must be >= 1")
        q = p**e
        if q > MAX_TABLE_Q:
            raise SizeCap(f"q={q} exceeds table cap {MAX_TABLE_Q}")
        self.p = p
        self.e = e
        self.q = q
        if e == 1:
            if g is not None:
                raise ValueError("prime field takes no modulus g")
            self.g = None
            self._build_prime_tables()
        else:
            prime = BaseField(p, 1)
            if g is None:
                g = find_irreducible(prime, e)
            else:
                g = poly_trim(g)
                if poly_deg(g) != e or g[-1] != 1:
                    raise ValueError(f"g must be monic of degree {e}")
                if not is_irreducible(prime, g):
                    raise ValueError(f"g={poly_to_text(g)} is reducible over F_{p}")
            self.g = g
            self._prime = prime
            self._build_ext_tables()

    def _build_prime_tables(self):
        p = self.p
        i = np.arange(p, dtype=np.int64)
        self.add_table = (i[:, None] + i[None, :]) % p
        self.sub_table = (i[:, None] - i[None, :]) % p
        self.mul_table = (i[:, None] * i[None, :]) % p
        self.neg_table = (-i) % p
        inv = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            inv[a] = pow(a, p - 2, p)
        self.inv_table = inv

    def _build_ext_tables(self):
        p, e, q, g = self.p, self.e, self.q, self.g
        prime = self._prime
        idx = np.arange(q, dtype=np.int64)
        digits = np.empty((q, e), dtype=np.int64)
        t = idx.copy()
        for k in range(e):
            digits[:, k] = t % p
            t //= p
        weights = p ** np.arange(e, dtype=np.int64)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.sub_table = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        polys = [poly_trim(digits[a]) for a in range(q)]
        for a in range(1, q):
            for b in range(a, q):
                r = poly_mod(prime, poly_mul(prime, polys[a], polys[b]), g)
                v = poly_to_int(r, p)
                mul[a, b] = v
                mul[b, a] = v
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            row = mul[a]
            inv[a] = int(np.nonzero(row == 1)[0][0])
        self.inv_table = inv

    # scalar ops on encodings

    def check(self, a) -> int:
        a = operator.index(a)
        if not 0 <= a < self.q:
            raise ValueError(f"encoding {a} out of range for q={self.q}")
        return a

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def coeffs(self, a: int):
        """Coordinates of an encoding over F_p, constant term first."""
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, c) -> int:
        if len(c) > self.e:
            raise ValueError("too many coordinates")
        n = 0
        for x in reversed(tuple(c)):
            n = n * self.p + x
        return n

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return (
            isinstance(other, BaseField)
            and (self.p, self.e, self.g) == (other.p, other.e, other.g)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.g))

    def __repr__(self):
        if self.e == 1:
            return f"BaseField(p={self.p})"
        return f"BaseField(p={self.p}, e={self.e}, g={poly_to_text(self.g)})"


class ExtField:
    """F_{q^m} = F_q[x]/(f), elements are length-m coefficient tuples."""

    def __init__(self, base: BaseField, m: int, f=None):
        if m < 1:
            raise ValueError("extension degree m must be >= 1")
        if f is None:
            f = find_irreducible(base, m)
        else:
            f = poly_trim(f)
            if poly_deg(f) != m or f[-1] != 1:
                raise ValueError(f"f must be monic of degree {m}")
            if not is_irreducible(base, f):
                raise ValueError(f"f={poly_to_text(f)} is reducible over F_{base.q}")
        self.base = base
        self.m = m
        self.f = f
        self.q = base.q
        self.size = base.q**m
        if self.size > 2**62:
            raise SizeCap(f"q^m={self.size} is not representable in int64")
        # x^(m+k) mod f for k = 0..m-2, padded to length m
        self._red = []
        r = poly_mod(base, (0,) * m + (1,), f)
        for _ in range(max(0, m - 1)):
            self._red.append(self._pad(r))
            r = poly_mod(base, (0,) + r, f)

    def _pad(self, a):
        return tuple(a) + (0,) * (self.m - len(a))

    def zero(self):
        return (0,) * self.m

    def one(self):
        return self._pad((1,))

    def embed(self, c: int):
        """Lift a base field element into the extension."""
        return self._pad((self.base.check(c),))

    def x_class(self):
        """Residue class of x, the canonical generator of the extension."""
        return self._pad(poly_mod(self.base, (0, 1), self.f))

    def check(self, a):
        if not isinstance(a, tuple) or len(a) != self.m:
            raise MixedFieldLevels(
                f"expected a length-{self.m} extension element, got {a!r}"
            )
        return tuple(self.base.check(c) for c in a)

    def add(self, a, b):
        bf = self.base
        return tuple(bf.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        bf = self.base
        return tuple(bf.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        bf = self.base
        return tuple(bf.neg(x) for x in a)

    def mul(self, a, b):
        bf = self.base
        m = self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = bf.add(prod[i + j], bf.mul(ai, bj))
        out = prod[:m]
        for k in range(m - 1):
            c = prod[m + k]
            if c == 0:
                continue
            row = self._red[k]
            for j in range(m):
                if row[j]:
                    out[j] = bf.add(out[j], bf.mul(c, row[j]))
        return tuple(out)

    def is_zero(self, a) -> bool:
        return all(c == 0 for c in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.size - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result = self.one()
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def frobenius(self, a):
        return self.pow(a, self.q)

    def eval_base_poly(self, h, alpha):
        """Evaluate h in F_q[x] at an extension element, Horner scheme."""
        acc = self.zero()
        for c in reversed(h):
            acc = self.add(self.mul(acc, alpha), self.embed(c))
        return acc

    def encode(self, a) -> int:
        n = 0
        for c in reversed(a):
            n = n * self.q + c
        return n

    def decode(self, n: int):
        out = []
        for _ in range(self.m):
            out.append(n % self.q)
            n //= self.q
        return tuple(out)

    def elements(self):
        for n in range(self.size):
            yield self.decode(n)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and self.base == other.base
            and (self.m, self.f) == (other.m, other.f)
        )

    def __hash__(self):
        return hash((self.base, self.m, self.f))

    def __repr__(self):
        return f"ExtField(q={self.q}, m={self.m}, f={poly_to_text(self.f)})"


class FieldTower:
    """The tower F_p < F_q < F_{q^m} with validated moduli."""

    def __init__(self, p: int, e: int = 1, m: int = 1, g=None, f=None):
        self.base = BaseField(p, e, g)
        self.ext = ExtField(self.base, m, f)
        self.p = p
        self.e = e
        self.m = m
        self.q = self.base.q
        self.size = self.ext.size

    @classmethod
    def from_q(cls, q: int, m: int = 1, g=None, f=None) -> "FieldTower":
        p, e = factor_prime_power(q)
        return cls(p, e, m, g=g, f=f)

    @property
    def g(self):
        return self.base.g

    @property
    def f(self):
        return self.ext.f

    def __eq__(self, other):
        return (
            isinstance(other, FieldTower)
            and self.base == other.base
            and self.ext == other.ext
        )

    def __hash__(self):
        return hash((self.base, self.ext))

    def __repr__(self):
        return (
            f"FieldTower(p={self.p}, e={self.e}, m={self.m}, "
            f"f={poly_to_text(self.f)})"
        )


def _level(tower: FieldTower, a):
    if isinstance(a, tuple):
        return "ext"
    try:
        operator.index(a)
    except TypeError:
        raise MixedFieldLevels(f"{a!r} is not a field element") from None
    return "base"


def field_arith(tower: FieldTower, kind: str, a, b=None):
    """Dispatch arithmetic at either tower level with level checking.

    kind is one of add, sub, mul, div, neg, inv, pow.  For pow the second
    operand is a plain integer exponent.  Mixing a base encoding with an
    extension tuple raises MixedFieldLevels.
    """
    level = _level(tower, a)
    fld = tower.ext if level == "ext" else tower.base
    a = fld.check(a)
    if kind in ("neg", "inv"):
        if b is not None:
            raise ValueError(f"{kind} takes one operand")
        return getattr(fld, kind)(a)
    if b is None:
        raise ValueError(f"{kind} takes two operands")
    if kind == "pow":
        return fld.pow(a, operator.index(b))
    if kind in ("add", "sub", "mul", "div"):
        if _level(tower, b) != level:
            raise MixedFieldLevels(
                f"operands {a!r} and {b!r} live at different tower levels"
            )
        return getattr(fld, kind)(a, fld.check(b))
    raise ValueError(f"unknown operation {kind!r}")


# ---------------------------------------------------------------------------


def is_irreducible(field: BaseField, f) -> bool:
    """Rabin irreducibility test over F_q.

    f of degree d is irreducible iff x^(q^d) = x mod f and, for every
    prime divisor l of d, gcd(x^(q^(d/l)) - x, f) = 1.
    """
    f = poly_monic(field, f)
    d = poly_deg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False  # divisible by x
    q = field.q
    x = (0, 1)
    for ell in prime_factors(d):
        h = poly_pow_mod(field, x, q ** (d // ell), f)
        if poly_gcd(field, poly_sub(field, h, x), f) != (1,):
            return False
    h = poly_pow_mod(field, x, q**d, f)
    return poly_sub(field, h, x) == ()


def find_irreducible(field: BaseField, d: int) -> Poly:
    """Monic irreducible of degree d with smallest integer encoding.

    Candidates x^d + c are scanned in ascending canonical integer
    encoding of the lower coefficient vector c.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    q = field.q
    for n in range(q**d):
        low = poly_from_int(n, q)
        cand = low + (0,) * (d - len(low)) + (1,)
        if is_irreducible(field, cand):
            return cand
    raise RuntimeError(f"no irreducible of degree {d} over F_{q}")  # unreachable


# ---------------------------------------------------------------------------


def digit_numerator(v, q: int) -> int:
    """Integer numerator of the digit expansion map: sum v_j q^(m-j)."""
    n = 0
    for c in v:
        n = n * q + int(c)
    return n


def digit_fraction(v, q: int) -> Fraction:
    """Map a length-m digit column to its rational point in [0, 1).

    The first entry is the most significant digit: the value is
    sum_j v_j q^(-j), an exact fraction with denominator q^m.
    """
    m = len(v)
    return Fraction(digit_numerator(v, q), q**m)
