"""Field tower and polynomial arithmetic tests."""

import random
from fractions import Fraction

import pytest

from vnet.errors import MixedFieldLevels, NotPrime, SizeCap
from vnet.fields import (
    BaseField,
    ExtField,
    FieldTower,
    digit_fraction,
    digit_numerator,
    factor_prime_power,
    field_arith,
    find_irreducible,
    is_irreducible,
    is_prime,
    poly_add,
    poly_deg,
    poly_divmod,
    poly_eval,
    poly_from_int,
    poly_from_text,
    poly_gcd,
    poly_mul,
    poly_to_text,
    poly_trim,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(-3, 50):
        assert is_prime(n) == (n in primes)


def test_factor_prime_power():
    assert factor_prime_power(2) == (2, 1)
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(9) == (3, 2)
    assert factor_prime_power(125) == (5, 3)
    for bad in (0, 1, 6, 10, 12, 100):
        with pytest.raises(NotPrime):
            factor_prime_power(bad)


def test_poly_conventions():
    assert poly_trim((0, 0, 0)) == ()
    assert poly_trim((1, 0, 2, 0)) == (1, 0, 2)
    # deg(0) encoded as len-1 = -1 on the trimmed tuple
    assert poly_deg(()) == -1
    assert poly_deg((5,)) == 0
    assert poly_deg((0, 1)) == 1


def test_poly_divmod_and_gcd():
    f = BaseField(5)
    rng = random.Random(7)
    for _ in range(200):
        a = poly_trim([rng.randrange(5) for _ in range(rng.randrange(6))])
        b = poly_trim([rng.randrange(5) for _ in range(1, rng.randrange(1, 5))])
        if not b:
            continue
        quot, rem = poly_divmod(f, a, b)
        back = poly_add(f, poly_mul(f, quot, b), rem)
        assert back == a
        assert poly_deg(rem) < poly_deg(b)
        g = poly_gcd(f, a, b)
        if g:
            _, r1 = poly_divmod(f, a, g)
            _, r2 = poly_divmod(f, b, g)
            assert r1 == () and r2 == ()
            assert g[-1] == 1  # monic


def test_poly_eval_horner():
    f = BaseField(3)
    # 1 + 2x + x^2 at x=2 over F_3: 1 + 4 + 4 = 9 = 0
    assert poly_eval(f, (1, 2, 1), 2) == 0
    assert poly_eval(f, (), 2) == 0
    assert poly_eval(f, (2,), 0) == 2


def test_poly_text_round_trip():
    assert poly_to_text(()) == "0"
    assert poly_to_text((1, 0, 1)) == "1,0,1"
    assert poly_from_text("1,0,1", 2) == (1, 0, 1)
    assert poly_from_text("0", 5) == ()
    with pytest.raises(ValueError):
        poly_from_text("1,7", 5)
    with pytest.raises(ValueError):
        poly_from_text("a,b", 3)


def test_prime_field_arithmetic():
    f = BaseField(7)
    for a in range(7):
        for b in range(7):
            assert f.add(a, b) == (a + b) % 7
            assert f.sub(a, b) == (a - b) % 7
            assert f.mul(a, b) == (a * b) % 7
        assert f.neg(a) == (-a) % 7
        if a:
            assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, 6) == 1  # Fermat
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ZeroDivisionError):
        f.div(3, 0)


def test_prime_power_field_tables():
    # GF(4) and GF(9): field axioms checked exhaustively
    for p, e in ((2, 2), (3, 2)):
        f = BaseField(p, e)
        q = p**e
        for a in range(q):
            assert f.add(a, 0) == a
            assert f.mul(a, 1) == a
            assert f.add(a, f.neg(a)) == 0
            if a:
                assert f.mul(a, f.inv(a)) == 1
            for b in range(q):
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
                for c in range(q):
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


def test_default_base_modulus_is_canonical():
    # first monic irreducible quadratic over F_3 in encoding order is x^2+1
    f = BaseField(3, 2)
    assert f.g == (1, 0, 1)
    # and over F_2 it is x^2+x+1 (the only one)
    assert BaseField(2, 2).g == (1, 1, 1)


def test_coeffs_round_trip():
    f = BaseField(2, 3)
    for a in range(8):
        assert f.from_coeffs(f.coeffs(a)) == a


def test_ext_field_basic():
    tw = FieldTower(2, 1, 3, f=(1, 1, 0, 1))
    ext = tw.ext
    x = ext.x_class()
    # x is primitive in F_8 with this modulus: powers cycle through all 7
    seen = set()
    acc = ext.one()
    for _ in range(7):
        acc = ext.mul(acc, x)
        seen.add(acc)
    assert len(seen) == 7
    assert acc == ext.one()
    for a in ext.elements():
        assert ext.add(a, ext.neg(a)) == ext.zero()
        if not ext.is_zero(a):
            assert ext.mul(a, ext.inv(a)) == ext.one()
            # frobenius is the q power map
            assert ext.frobenius(a) == ext.mul(a, a)
    with pytest.raises(ZeroDivisionError):
        ext.inv(ext.zero())


def test_ext_field_eval_and_embed():
    tw = FieldTower(3, 1, 2, f=(1, 0, 1))
    ext = tw.ext
    x = ext.x_class()
    # h = 2 + x evaluated at x_class
    v = ext.eval_base_poly((2, 1), x)
    assert v == ext.add(ext.embed(2), x)
    assert ext.eval_base_poly((), x) == ext.zero()
    # embed respects base arithmetic
    for a in range(3):
        for b in range(3):
            assert ext.add(ext.embed(a), ext.embed(b)) == ext.embed(tw.base.add(a, b))


def test_ext_encode_decode():
    tw = FieldTower(2, 2, 2)  # F_4 base, F_16 extension
    ext = tw.ext
    for n in range(ext.size):
        assert ext.encode(ext.decode(n)) == n
    with pytest.raises(MixedFieldLevels):
        ext.check((1,))  # wrong length
    with pytest.raises(MixedFieldLevels):
        ext.check([0, 1])  # not a tuple


def test_ext_size_cap():
    with pytest.raises(SizeCap):
        ExtField(BaseField(2), 63)


def test_field_arith_dispatch():
    tw = FieldTower(2, 1, 2, f=(1, 1, 1))
    a, b = 1, 1
    assert field_arith(tw, "add", a, b) == 0
    x = tw.ext.x_class()
    assert field_arith(tw, "mul", x, x) == tw.ext.mul(x, x)
    assert field_arith(tw, "pow", x, 3) == tw.ext.pow(x, 3)
    with pytest.raises(MixedFieldLevels):
        field_arith(tw, "add", 1, x)
    with pytest.raises(ZeroDivisionError):
        field_arith(tw, "div", 1, 0)
    with pytest.raises(ValueError):
        field_arith(tw, "frobnicate", 1, 1)


def _reducible_by_trial(field, f):
    # exhaustive trial division by lower-degree monic polys
    d = poly_deg(f)
    q = field.q
    for k in range(1, d):
        for n in range(q**k):
            g = poly_from_int(n, q) + (0,) * (k - len(poly_from_int(n, q))) + (1,)
            _, r = poly_divmod(field, f, g)
            if r == ():
                return True
    return False


def test_is_irreducible_vs_trial_division():
    for q, dmax in ((2, 6), (3, 4)):
        field = BaseField(q)
        for d in range(1, dmax + 1):
            for n in range(q**d):
                low = poly_from_int(n, q)
                f = low + (0,) * (d - len(low)) + (1,)
                assert is_irreducible(field, f) == (not _reducible_by_trial(field, f))


def test_is_irreducible_prime_power_base():
    # over GF(4): x^2 + x + w has no roots for a suitable w
    field = BaseField(2, 2)
    count = 0
    for n in range(16):
        low = poly_from_int(n, 4)
        f = low + (0,) * (2 - len(low)) + (1,)
        if is_irreducible(field, f):
            count += 1
            for a in range(4):
                assert poly_eval(field, f, a) != 0
    # number of monic irreducible quadratics over F_q is (q^2-q)/2 = 6
    assert count == 6


def test_find_irreducible_frozen():
    # first hits in ascending encoding order, frozen
    assert find_irreducible(BaseField(2), 1) == (0, 1)
    assert find_irreducible(BaseField(2), 2) == (1, 1, 1)
    assert find_irreducible(BaseField(2), 3) == (1, 1, 0, 1)
    assert find_irreducible(BaseField(3), 2) == (1, 0, 1)


def test_digit_map():
    # first entry most significant
    assert digit_numerator((1, 0, 1), 2) == 5
    assert digit_fraction((1, 0, 1), 2) == Fraction(5, 8)
    assert digit_fraction((0, 0), 3) == Fraction(0, 1)
    assert digit_fraction((2, 2), 3) == Fraction(8, 9)


def test_tower_from_q():
    tw = FieldTower.from_q(9, 2)
    assert tw.p == 3 and tw.e == 2 and tw.q == 9 and tw.m == 2
    assert tw.size == 81
    with pytest.raises(NotPrime):
        FieldTower.from_q(6, 2)


def test_tower_rejects_bad_modulus():
    with pytest.raises(ValueError):
        FieldTower(2, 1, 2, f=(1, 0, 1))  # x^2+1 = (x+1)^2 over F_2
    with pytest.raises(ValueError):
        FieldTower(2, 1, 2, f=(1, 1, 0, 1))  # degree mismatch
