import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from harmonic_span.cyclotomic import (
    CyclotomicNumber,
    conductor_cap,
    cos_exact,
    cot_exact,
    cyclo_arith,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    numeric_embed,
    zeta,
)
from harmonic_span.errors import (
    ConductorCapExceeded,
    ConductorError,
    CyclotomicDivisionByZero,
    PoleError,
)

mpmath.mp.dps = 60


def close(a, b, tol=1e-45):
    return abs(complex(a) - complex(b)) < 1e-12 and abs(a - b) < tol


@st.composite
def cyclo(draw, conductors=(1, 3, 4, 5, 7, 8, 9, 12, 15, 20, 60)):
    n = draw(st.sampled_from(conductors))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                           min_size=1, max_size=n))
    return CyclotomicNumber(n, coeffs)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 30, 36, 49, 60, 105, 196])
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]
    assert euler_phi(n) == sympy.totient(n)


def test_spec_examples_arith():
    assert zeta(4) * zeta(4) == -1
    assert zeta(3) + zeta(3, 2) == -1
    x = (1 - zeta(5)) / (1 - zeta(5, 2))
    assert x * x.inverse() == 1
    assert cyclo_arith(zeta(4), zeta(4), "mul") == -1
    assert cyclo_arith(zeta(3), zeta(3, 2), "add") == -1


def test_division_by_zero_is_distinct():
    with pytest.raises(CyclotomicDivisionByZero):
        zeta(5) / CyclotomicNumber.zero(5)
    with pytest.raises(ZeroDivisionError):
        (zeta(3) + zeta(3, 2) + 1).inverse()


def test_embed_examples():
    minus_one = CyclotomicNumber.rational(-1, 3)
    e = embed(minus_one, 12)
    assert e.conductor == 12 and e.is_rational() and e.to_fraction() == -1
    assert embed(zeta(3), 6) == zeta(6, 2)
    assert embed(zeta(3), 6).coeffs == zeta(6, 2).coeffs
    assert embed(zeta(5), 10) == zeta(10, 2)
    with pytest.raises(ConductorError):
        embed(zeta(5), 12)


def test_embed_then_descend_is_identity():
    x = zeta(5) + Fraction(1, 3) * zeta(5, 3)
    y = x.embed(60)
    assert y.conductor == 60
    d = y.descend()
    assert d.conductor == 5 and d.coeffs == x.coeffs


def test_cos_examples():
    assert cos_exact(1, 1, 3) == Fraction(-1, 2)
    assert cos_exact(1, 1, 4) == 0
    with mpmath.workdps(60):
        assert abs(numeric_embed(cos_exact(2, 1, 5), 50) - mpmath.cos(4 * mpmath.pi / 5)) < mpmath.mpf(10) ** -50


def test_cot_examples():
    assert cot_exact(1, 2) == 0
    assert cot_exact(1, 4) == 1
    with mpmath.workdps(60):
        assert abs(numeric_embed(cot_exact(1, 3), 50) - 1 / mpmath.sqrt(3)) < mpmath.mpf(10) ** -50
    with pytest.raises(PoleError):
        cot_exact(3, 3)


def test_numeric_embed_examples():
    assert numeric_embed(CyclotomicNumber.rational(Fraction(-1, 2)), 50) == mpmath.mpf(-0.5)
    with mpmath.workdps(60):
        assert abs(numeric_embed(zeta(8), 50).real - mpmath.sqrt(2) / 2) < mpmath.mpf(10) ** -50
    with pytest.raises(ValueError):
        numeric_embed(zeta(8), 5)


@pytest.mark.parametrize("q", range(2, 40))
def test_cot_and_cos_are_real_and_correct(q):
    for a in range(1, q):
        c = cot_exact(a, q)
        assert c.is_real()
        assert c + cot_exact(q - a, q) == 0
        with mpmath.workdps(60):
            assert abs(numeric_embed(c, 50) - mpmath.cot(mpmath.pi * a / q)) < mpmath.mpf(10) ** -45
        s = cos_exact(1, a, q)
        assert s.is_real()
        with mpmath.workdps(60):
            assert abs(numeric_embed(s, 50) - mpmath.cos(2 * mpmath.pi * a / q)) < mpmath.mpf(10) ** -45


@given(cyclo(), cyclo(), cyclo())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0
    if not x.is_zero():
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(cyclo(), cyclo())
def test_numeric_embedding_is_a_homomorphism(x, y):
    dps = 40
    with mpmath.workdps(dps + 10):
        ex, ey = numeric_embed(x, dps), numeric_embed(y, dps)
        tol = mpmath.mpf(10) ** (-dps + 5)
        assert abs(numeric_embed(x + y, dps) - (ex + ey)) < tol
        assert abs(numeric_embed(x * y, dps) - ex * ey) < tol * (1 + abs(ex * ey))


@given(cyclo())
def test_hash_consistent_across_conductors(x):
    y = x.embed(x.conductor * 4)
    assert x == y and hash(x) == hash(y)


@given(cyclo())
def test_json_roundtrip(x):
    assert CyclotomicNumber.from_json(x.to_json()) == x


def test_norm_matches_resultant():
    rng = random.Random(7)
    x_ = sympy.symbols("x")
    for n in (5, 7, 12, 16, 21):
        coeffs = [rng.randint(-3, 3) for _ in range(euler_phi(n))]
        v = CyclotomicNumber(n, coeffs)
        if v.is_zero():
            continue
        poly = sympy.Poly(list(reversed(coeffs)), x_)
        res = sympy.resultant(sympy.Poly(sympy.cyclotomic_poly(n, x_), x_), poly)
        assert v.norm() == Fraction(int(res))


def test_conductor_cap():
    with conductor_cap(20):
        assert (zeta(4) * zeta(20)).conductor == 20
        with pytest.raises(ConductorCapExceeded):
            zeta(12) * zeta(5)
    assert (zeta(12) * zeta(5)).conductor == 60


def test_large_conductor_inverse():
    x = CyclotomicNumber(196, [random.Random(3).randint(-4, 4) for _ in range(84)])
    assert x * x.inverse() == 1
