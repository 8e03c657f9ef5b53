"""Arbitrary-precision oracles.

The harmonic-number evaluator uses the series
``H_r = sum_{k>=1} (1/k - 1/(k+r))`` and never the Gauss formula, so that it
is an independent check on the symbolic decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .cyclotomic import CyclotomicNumber, numeric_embed
from .errors import InsufficientPrecision, PoleError
from .gauss import HarmonicIndex
from .logbasis import LogAtom, SymbolicValue

__all__ = [
    "PrecisionConfig",
    "harmonic_numeric",
    "tail_bound",
    "atom_value",
    "eval_symbolic",
    "verify_relation",
    "integer_relation",
    "IndependenceCheck",
    "check_independence",
    "format_residual",
]


@dataclass(frozen=True)
class PrecisionConfig:
    """Target accuracy in decimal digits plus guard digits for working precision."""

    digits: int = 100
    guard: int = 10

    def __post_init__(self) -> None:
        if self.digits < 10:
            raise ValueError("digits must be >= 10")
        if self.guard < 10:
            raise ValueError("guard must be >= 10")

    @property
    def working(self) -> int:
        return self.digits + self.guard


def _mpq(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def tail_bound(K: int, r: Fraction, p: int) -> mpmath.mpf:
    """Bound on the Euler-Maclaurin remainder after p correction terms.

    For ``f(x) = 1/x - 1/(x+r)`` the remainder of
    ``sum_{k>=K} f(k) = int_K^inf f + f(K)/2 - sum_{j<=p} B_{2j}/(2j)! f^(2j-1)(K) + R``
    obeys ``|R| <= 2 zeta(2p) (2 pi)^(-2p) int_K^inf |f^(2p)|``, and
    ``int |f^(2p)| <= (2p-1)! (K^(-2p) + (K+r)^(-2p))``.  With
    ``2 zeta(2p) <= 2 zeta(2) < 4`` this gives
    ``|R| <= 8 (2p-1)! / ((2 pi)^(2p) Kmin^(2p))`` where ``Kmin = min(K, K+r)``.
    """
    kmin = _mpq(min(Fraction(K), K + r))
    return 8 * mpmath.factorial(2 * p - 1) / ((2 * mpmath.pi * kmin) ** (2 * p))


def _plan(r: Fraction, digits: int) -> tuple[int, int]:
    target = mpmath.mpf(10) ** (-digits)
    K = digits + int(abs(r)) + 10
    while True:
        prev = None
        for p in range(1, 4 * digits + 10):
            b = tail_bound(K, r, p)
            if b < target:
                return K, p
            if prev is not None and b > prev:
                break  # asymptotic series has turned; need a larger K
            prev = b
        K *= 2


def harmonic_numeric(idx: HarmonicIndex, p: PrecisionConfig = PrecisionConfig()) -> mpmath.mpf:
    """``H_{a/q}`` to ``p.digits`` correct digits by series plus Euler-Maclaurin tail.

    The head ``sum_{k<K}`` is summed directly; the tail from K uses p
    Bernoulli corrections with K and p chosen so that ``tail_bound`` is below
    ``10^-(digits+guard)``.
    """
    r = idx.value
    if r.denominator == 1 and r < 0:
        raise PoleError(f"H_r has a pole at r = {r}")
    with mpmath.workdps(p.working + 10):
        K, order = _plan(r, p.working)
        rr = _mpq(r)
        head = mpmath.fsum(mpmath.mpf(1) / k - 1 / (k + rr) for k in range(1, K))
        x = mpmath.mpf(K)
        tail = mpmath.log((x + rr) / x) + (1 / x - 1 / (x + rr)) / 2
        for j in range(1, order + 1):
            m = 2 * j - 1
            # f^(m)(x) = (-1)^m m! (x^(-m-1) - (x+r)^(-m-1)), m odd
            deriv = -mpmath.factorial(m) * (x ** (-m - 1) - (x + rr) ** (-m - 1))
            tail -= mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * deriv
        result = head + tail
    with mpmath.workdps(p.working):
        return +result


def atom_value(atom: LogAtom, p: PrecisionConfig = PrecisionConfig()) -> mpmath.mpf:
    with mpmath.workdps(p.working):
        if atom.kind == 0:
            return mpmath.mpf(1)
        if atom.kind == 1:
            return +mpmath.pi
        if atom.kind == 2:
            return mpmath.log(2)
        return mpmath.log(mpmath.sinpi(mpmath.mpf(atom.k) / atom.m))


def eval_symbolic(v: SymbolicValue, p: PrecisionConfig = PrecisionConfig()) -> mpmath.mpf:
    """Numeric value of a symbolic value (real part; coefficients are real)."""
    with mpmath.workdps(p.working):
        acc = mpmath.mpc(0)
        for atom, c in v.items():
            acc += numeric_embed(c, p.working) * atom_value(atom, p)
        return +acc.real


def _coeff_value(c: object, digits: int) -> mpmath.mpc:
    if isinstance(c, CyclotomicNumber):
        return numeric_embed(c, digits)
    return mpmath.mpc(_mpq(Fraction(c)))


def verify_relation(report, p: PrecisionConfig = PrecisionConfig()) -> mpmath.mpf:
    """``|sum c_i H_{idx_i}|`` evaluated by the series oracle.

    Accepts a ``RelationReport`` or any object with ``indices`` and
    ``coefficients``.
    """
    with mpmath.workdps(p.working):
        acc = mpmath.mpc(0)
        for idx, c in zip(report.indices, report.coefficients, strict=True):
            acc += _coeff_value(c, p.working) * harmonic_numeric(idx, p)
        return abs(acc)


def format_residual(x: mpmath.mpf) -> str:
    """Scientific-notation string, ``"0"`` for an exact zero."""
    if x == 0:
        return "0"
    return mpmath.nstr(x, 2, min_fixed=1, max_fixed=0)


def integer_relation(logs: Sequence[mpmath.mpf], max_coeff: int,
                     p: PrecisionConfig = PrecisionConfig()) -> tuple[int, ...] | None:
    """Heuristic integer-relation search (PSLQ) among the given reals.

    Returns an integer vector with ``|sum v_i x_i| < 10^(-digits/2)`` and
    every ``|v_i| <= max_coeff``, normalized so its first nonzero entry is
    positive, or None.  None is evidence of independence, not a proof.
    """
    n = len(logs)
    if n < 2:
        raise ValueError("need at least two numbers")
    if max_coeff < 1:
        raise ValueError("max_coeff must be positive")
    if p.digits < 20 * n:
        raise InsufficientPrecision(
            f"{n} numbers need at least {20 * n} digits, got {p.digits}")
    threshold = mpmath.mpf(10) ** (-(p.digits // 2))
    with mpmath.workdps(p.digits):
        xs = [mpmath.mpf(x) for x in logs]
        rel = mpmath.pslq(xs, tol=threshold, maxcoeff=max_coeff, maxsteps=100 * n * p.digits)
        if rel is None:
            return None
        if max(abs(c) for c in rel) > max_coeff:
            return None
        if abs(mpmath.fsum(c * x for c, x in zip(rel, xs))) >= threshold:
            return None
    lead = next(c for c in rel if c)
    sign = 1 if lead > 0 else -1
    return tuple(sign * int(c) for c in rel)


@dataclass
class IndependenceCheck:
    """Outcome of a heuristic search for a multiplicative relation among
    the numbers ``2 sin(k pi/m)``."""

    units: list[tuple[int, int]]
    max_coefficient: int
    relation: tuple[int, ...] | None = None
    digits: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "no-relation-found" if self.relation is None else "relation-found"

    def to_json(self) -> dict:
        return {
            "units": [f"2sin({k}pi/{m})" for k, m in self.units],
            "max_coefficient": self.max_coefficient,
            "digits": self.digits,
            "verdict": self.verdict,
            "relation": None if self.relation is None else list(self.relation),
            "heuristic": True,
        }


def check_independence(units: Iterable[tuple[int, int]], max_coeff: int = 50,
                       p: PrecisionConfig = PrecisionConfig(200)) -> IndependenceCheck:
    units = list(units)
    with mpmath.workdps(p.working):
        logs = [mpmath.log(2 * mpmath.sinpi(mpmath.mpf(k) / m)) for k, m in units]
    rel = integer_relation(logs, max_coeff, p)
    return IndependenceCheck(units, max_coeff, rel, p.digits)
