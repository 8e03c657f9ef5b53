from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from harmonic_span.errors import InsufficientPrecision, PoleError
from harmonic_span.gauss import HarmonicIndex, harmonic_integer, harmonic_symbolic
from harmonic_span.logbasis import LOG2, UNIT, SymbolicValue, expand_log_integer
from harmonic_span.numeric import (
    PrecisionConfig,
    check_independence,
    eval_symbolic,
    format_residual,
    harmonic_numeric,
    integer_relation,
    tail_bound,
    verify_relation,
)

P100 = PrecisionConfig(100)


def test_precision_config_invariants():
    for d, g in [(9, 10), (10, 9)]:
        with pytest.raises(ValueError):
            PrecisionConfig(d, g)


def test_harmonic_numeric_examples():
    with mpmath.workdps(120):
        assert abs(harmonic_numeric(HarmonicIndex(1, 1), P100) - 1) < mpmath.mpf(10) ** -100
        expected = 2 - 2 * mpmath.log(2)
        assert abs(harmonic_numeric(HarmonicIndex(1, 2), P100) - expected) < mpmath.mpf(10) ** -100
        assert mpmath.nstr(harmonic_numeric(HarmonicIndex(1, 2), P100), 17) == "0.61370563888010938"
    with pytest.raises(PoleError):
        harmonic_numeric(HarmonicIndex(2, 1).shifted(-4), P100)  # rejected at construction


@pytest.mark.parametrize("digits", [10, 30, 100, 250])
@pytest.mark.parametrize("r", [Fraction(1, 3), Fraction(-5, 7), Fraction(200, 9), Fraction(1, 1000)])
def test_series_vs_mpmath_harmonic(digits, r):
    p = PrecisionConfig(digits)
    with mpmath.workdps(digits + 20):
        oracle = mpmath.harmonic(mpmath.mpf(r.numerator) / r.denominator)
    idx = HarmonicIndex(r.numerator, r.denominator)
    assert abs(harmonic_numeric(idx, p) - oracle) < mpmath.mpf(10) ** (-digits)


def test_integer_inputs_agree_as_floats():
    p = PrecisionConfig(30)
    exact = Fraction(0)
    for n in range(0, 1001):
        if n:
            exact += Fraction(1, n)
        if n % 37 == 0 or n == 1000:
            assert float(harmonic_numeric(HarmonicIndex(n, 1), p)) == float(exact)
    assert exact == harmonic_integer(1000)


def test_doubling_digits_keeps_leading_digits():
    for r in [(1, 3), (7, 8), (-2, 5)]:
        idx = HarmonicIndex(*r)
        lo = harmonic_numeric(idx, PrecisionConfig(50))
        hi = harmonic_numeric(idx, PrecisionConfig(100))
        assert mpmath.nstr(lo, 45) == mpmath.nstr(hi, 45)


def test_tail_bound_decreases_then_meets_target():
    b = [tail_bound(110, Fraction(1, 3), p) for p in (1, 5, 20, 60)]
    assert b[0] > b[1] > b[2] > b[3]
    assert b[3] < mpmath.mpf(10) ** -110


def test_eval_symbolic_examples():
    assert eval_symbolic(SymbolicValue(), P100) == 0
    with mpmath.workdps(120):
        v = SymbolicValue([(UNIT, 2), (LOG2, -2)])
        assert abs(eval_symbolic(v, P100) - (2 - 2 * mpmath.log(2))) < mpmath.mpf(10) ** -100
        assert abs(eval_symbolic(expand_log_integer(7), P100) - mpmath.log(7)) < mpmath.mpf(10) ** -100


class _Rel:
    def __init__(self, indices, coefficients):
        self.indices = indices
        self.coefficients = coefficients


def test_verify_relation_trivial_and_perturbed():
    h1 = HarmonicIndex(1, 1)
    assert verify_relation(_Rel([h1, h1], [1, -1]), P100) == 0
    # H_{1/2} - 2 H_1 + 2 log 2 ... use H_{3/2} - H_{1/2} - 2/3 H_1 = 0
    idx = [HarmonicIndex(3, 2), HarmonicIndex(1, 2), h1]
    good = _Rel(idx, [1, -1, Fraction(-2, 3)])
    assert verify_relation(good, P100) < mpmath.mpf(10) ** -90
    bad = _Rel(idx, [2, -1, Fraction(-2, 3)])
    assert verify_relation(bad, P100) > mpmath.mpf(10) ** -3


def test_integer_relation_examples():
    p = PrecisionConfig(60)
    with mpmath.workdps(80):
        logs = [mpmath.log(2), mpmath.log(4)]
    assert integer_relation(logs, 10, p) == (2, -1)

    p200 = PrecisionConfig(200)
    with mpmath.workdps(220):
        s1 = 2 * mpmath.sinpi(mpmath.mpf(1) / 5)
        s2 = 2 * mpmath.sinpi(mpmath.mpf(2) / 5)
        assert integer_relation([mpmath.log(s1), mpmath.log(s2)], 50, p200) is None
        # (2 sin(pi/5)) (2 sin(2pi/5)) = sqrt 5
        rel = integer_relation([mpmath.log(s1), mpmath.log(s2), mpmath.log(mpmath.sqrt(5))], 50, p200)
    assert rel == (1, 1, -1)


def test_integer_relation_precision_guard():
    with pytest.raises(InsufficientPrecision):
        integer_relation([mpmath.mpf(1), mpmath.mpf(2), mpmath.mpf(3)], 10, PrecisionConfig(40))


def test_check_independence_json_is_labelled_heuristic():
    res = check_independence([(1, 5), (2, 5)], 50)
    data = res.to_json()
    assert data["verdict"] == "no-relation-found" and data["heuristic"] is True


def test_format_residual():
    assert format_residual(mpmath.mpf(0)) == "0"
    assert format_residual(mpmath.mpf("1.234e-87")) == "1.2e-87"


@given(st.integers(1, 40), st.integers(-30, 30))
def test_symbolic_vs_series_random(q_choice, a):
    q = [2, 3, 4, 5, 7, 8, 9, 10, 11, 13, 14, 16, 25, 27, 32, 49][q_choice % 16]
    if a % q == 0:
        a += 1
    idx = HarmonicIndex(a, q)
    p = PrecisionConfig(60)
    assert abs(eval_symbolic(harmonic_symbolic(idx), p) - harmonic_numeric(idx, p)) < mpmath.mpf(10) ** -55
