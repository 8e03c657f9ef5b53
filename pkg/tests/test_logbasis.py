import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from harmonic_span.cyclotomic import CyclotomicNumber
from harmonic_span.errors import UnsupportedModulus
from harmonic_span.logbasis import (
    LOG2,
    PI,
    UNIT,
    LogAtom,
    SignSequence,
    SymbolicValue,
    decode_signs,
    divisor_expansion,
    expand_log_integer,
    is_canonical_log_sin,
    is_zero,
    modulus_shape,
    nested_radical_signs,
    rationalize_step,
    reduce_log_sin,
    sine_product_log,
    symbolic_arith,
    twice_odd_chain,
)
from harmonic_span.numeric import PrecisionConfig, eval_symbolic

P100 = PrecisionConfig(100)
TOL90 = mpmath.mpf(10) ** -90


def log_sin(k, m, dps=120):
    with mpmath.workdps(dps):
        return mpmath.log(mpmath.sinpi(mpmath.mpf(k) / m))


def LS(k, m):
    return LogAtom.log_sin(k, m)


def supported(m):
    try:
        modulus_shape(m)
        return True
    except UnsupportedModulus:
        return False


# -- sign sequences ----------------------------------------------------------

def test_signs_examples():
    assert nested_radical_signs(1, 2).signs == ()
    with mpmath.workdps(60):
        assert abs(nested_radical_signs(1, 2).value() - mpmath.sqrt(2) / 2) < mpmath.mpf(10) ** -50
        s = nested_radical_signs(1, 3)
        assert s.signs == (-1,)
        assert abs(s.value() - mpmath.sqrt(2 - mpmath.sqrt(2)) / 2) < mpmath.mpf(10) ** -50
        assert abs(nested_radical_signs(3, 4).value() - mpmath.sinpi(mpmath.mpf(3) / 16)) < mpmath.mpf(10) ** -50


@pytest.mark.parametrize("n", range(2, 9))
def test_signs_all_odd_k(n):
    with mpmath.workdps(70):
        for k in range(1, 2 ** n, 2):
            s = nested_radical_signs(k, n)
            assert len(s.signs) == n - 2
            v = s.value(60)
            assert 0 < v <= 1
            assert abs(v - mpmath.sinpi(mpmath.mpf(k) / 2 ** n)) < mpmath.mpf(10) ** -50


def test_signs_bad_input():
    for k, n in [(2, 3), (0, 3), (9, 3), (1, 1)]:
        with pytest.raises(ValueError):
            nested_radical_signs(k, n)


def test_decode_inverts_signs():
    for n in range(2, 9):
        for k in range(1, 2 ** (n - 1), 2):
            assert decode_signs(nested_radical_signs(k, n)) == k


def test_rationalize_hand_case():
    # sin(3pi/8) sin(pi/8) = sin(pi/4)/2  =>  log sin(3pi/8) = log sin(pi/4) - log sin(pi/8) - log 2
    ident = rationalize_step(3, 3)
    assert ident.log2 == -1
    assert dict(ident.sines) == {(1, 4): 1, (1, 8): -1}


# -- reduce_log_sin ----------------------------------------------------------

def test_reduce_examples():
    assert reduce_log_sin(1, 4) == SymbolicValue.atom(LOG2, Fraction(-1, 2))
    assert reduce_log_sin(4, 5) == SymbolicValue.atom(LS(1, 5))
    v = reduce_log_sin(6, 10)
    assert abs(eval_symbolic(v, P100) - log_sin(3, 5)) < mpmath.mpf(10) ** -100


def test_reduce_3_9_divisor_form_and_canonical_form():
    # the divisor identity with b = 3, x = 1: 2 log 2 + sum over u = 1, 4, 7
    raw = divisor_expansion(3, 1, 9)
    assert raw.log2 == 2
    assert dict(raw.sines) == {(1, 9): 1, (4, 9): 1, (7, 9): 1}
    assert abs(raw.numeric(100) - log_sin(3, 9)) < TOL90
    # in the canonical basis sin(3pi/9) is the level-3 atom itself
    assert reduce_log_sin(3, 9) == SymbolicValue.atom(LS(1, 3))


@pytest.mark.parametrize("m", [m for m in range(2, 65) if supported(m)])
def test_round_trip_and_canonicality(m):
    for k in range(1, m):
        v = reduce_log_sin(k, m)
        assert abs(eval_symbolic(v, P100) - log_sin(k, m)) < TOL90
        for atom in v:
            assert atom.kind != 3 or is_canonical_log_sin(atom.k, atom.m)
            assert v[atom].is_rational()


@pytest.mark.parametrize("m", [m for m in range(3, 200) if supported(m)])
def test_idempotence(m):
    for k in range(1, m):
        if is_canonical_log_sin(k, m):
            assert reduce_log_sin(k, m) == SymbolicValue.atom(LS(k, m))


@pytest.mark.parametrize("m", [6, 12, 15, 18, 21, 24, 30, 54, 20, 100])
def test_unsupported_moduli(m):
    with pytest.raises(UnsupportedModulus):
        reduce_log_sin(1, m)


def test_canonical_atoms_are_independent_but_literal_set_is_not():
    """PSLQ finds no relation among the canonical atoms for {3, 9, 27, 8, 16},
    and does find one once log sin(pi/9) joins log sin(pi/3)."""
    atoms = [(1, 3), (2, 9), (4, 9), (5, 27), (7, 27), (8, 27), (10, 27), (11, 27), (13, 27),
             (1, 8), (1, 16), (3, 16)]
    with mpmath.workdps(400):
        xs = [mpmath.log(2)] + [mpmath.log(mpmath.sinpi(mpmath.mpf(k) / m)) for k, m in atoms]
        assert mpmath.pslq(xs, maxcoeff=50, maxsteps=10 ** 5) is None
        literal = [mpmath.log(2)] + [mpmath.log(mpmath.sinpi(mpmath.mpf(k) / m))
                                     for k, m in [(1, 3), (1, 9), (2, 9), (4, 9)]]
        rel = mpmath.pslq(literal, maxcoeff=50, maxsteps=10 ** 5)
    assert rel is not None
    assert [abs(c) for c in rel] == [2, 1, 1, 1, 1]


def test_twice_odd_chain_termination_up_to_1000():
    for q in range(5, 1001, 2):
        if q % 3 == 0:
            continue
        limit = math.ceil(math.log2(q)) + 2
        for j in range((q + 1) // 2, q):
            ident, steps = twice_odd_chain(j, q)
            assert steps <= limit
            assert all(2 * k <= q - 1 for (k, _), _c in ident.sines)


def test_twice_odd_chain_rejects_multiples_of_three():
    with pytest.raises(UnsupportedModulus):
        twice_odd_chain(5, 9)


# -- expand_log_integer ------------------------------------------------------

def test_expand_examples():
    assert expand_log_integer(2) == SymbolicValue.atom(LOG2)
    assert expand_log_integer(3) == SymbolicValue([(LS(1, 3), 2), (LOG2, 2)])
    for m in (5, 7, 9, 125, 2 * 49, 8 * 27, 15, 2 * 3 * 5 * 7):
        with mpmath.workdps(120):
            assert abs(eval_symbolic(expand_log_integer(m), P100) - mpmath.log(m)) < mpmath.mpf(10) ** -100


@given(st.integers(1, 400), st.integers(1, 400))
def test_expand_log_is_additive(a, b):
    assert expand_log_integer(a * b) == expand_log_integer(a) + expand_log_integer(b)


def test_prime_power_log_via_its_own_sine_product():
    # log 9 from the sine product at 9 agrees exactly with 2 log 3
    assert sine_product_log(9).canonical() == expand_log_integer(9)
    assert sine_product_log(25).canonical() == expand_log_integer(25)


# -- symbolic values ---------------------------------------------------------

def test_symbolic_arith_examples():
    x = SymbolicValue([(LOG2, 1), (LS(1, 5), 1)])
    y = SymbolicValue([(LOG2, 1), (LS(1, 5), -1)])
    assert symbolic_arith(x, scalar=0, op="scale").is_zero()
    assert symbolic_arith(x, symbolic_arith(x, scalar=-1, op="scale"), op="add").is_zero()
    assert symbolic_arith(x, y, op="add") == SymbolicValue.atom(LOG2, 2)


def test_is_zero_examples():
    assert is_zero(SymbolicValue())
    assert not is_zero(SymbolicValue.atom(PI, Fraction(1, 10 ** 30)))
    v = expand_log_integer(3) - reduce_log_sin(1, 3).scale(2) - SymbolicValue.atom(LOG2, 2)
    assert is_zero(v)


def test_atom_order_and_validation():
    atoms = [LS(2, 9), LOG2, LS(1, 3), UNIT, PI, LS(1, 8), LS(4, 9)]
    assert sorted(atoms) == [UNIT, PI, LOG2, LS(1, 3), LS(1, 8), LS(2, 9), LS(4, 9)]
    for k, m in [(1, 9), (2, 6), (3, 8), (2, 4), (3, 15), (0, 5), (3, 5)]:
        with pytest.raises(ValueError):
            LS(k, m)


def test_json_roundtrip_and_order():
    v = SymbolicValue([(LS(2, 5), CyclotomicNumber(5, [0, 1])), (UNIT, 3), (PI, Fraction(1, 2))])
    data = v.to_json()
    assert [t["atom"] for t in data["terms"]] == ["Unit", "Pi", "LogSin"]
    assert data["terms"][2]["k"] == 2 and data["terms"][2]["m"] == 5
    assert SymbolicValue.from_json(data) == v


pairs = st.sampled_from([(k, m) for m in (5, 7, 8, 9, 10, 14, 16, 25, 27) for k in range(1, m)])


@given(st.lists(st.tuples(pairs, st.integers(-6, 6)), min_size=1, max_size=6))
def test_linearity_against_numerics(terms):
    v = SymbolicValue()
    with mpmath.workdps(120):
        expected = mpmath.mpf(0)
        for (k, m), c in terms:
            v = v + reduce_log_sin(k, m).scale(c)
            expected += c * log_sin(k, m)
    assert abs(eval_symbolic(v, P100) - expected) < mpmath.mpf(10) ** -85
    if v.is_zero():
        assert abs(expected) < mpmath.mpf(10) ** -85


def test_signsequence_ops():
    s = SignSequence((1, -1, 1))
    assert s.flip_leading().signs == (-1, -1, 1)
    assert s.collapse().signs == (1, 1)
    assert SignSequence((1,)).collapse().signs == ()
    with pytest.raises(ValueError):
        SignSequence((0,))
