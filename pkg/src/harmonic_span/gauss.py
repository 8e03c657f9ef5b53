"""Harmonic numbers at rational arguments as exact symbolic values.

For ``0 < a < q`` Gauss's digamma theorem gives

    H_{a/q} = q/a - log(2q) - (pi/2) cot(pi a/q)
              + 2 * sum_{n=1}^{floor((q-1)/2)} cos(2 pi n a/q) log sin(pi n/q)

and other numerators are moved into that range with ``H_r = H_{r-1} + 1/r``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclotomic import cos_exact, cot_exact
from .errors import PoleError, UnsupportedModulus
from .logbasis import (
    LOG2,
    PI,
    UNIT,
    SymbolicValue,
    expand_log_integer,
    modulus_shape,
    reduce_log_sin,
)

__all__ = [
    "HarmonicIndex",
    "harmonic_integer",
    "harmonic_symbolic",
    "reflection_residual",
    "recurrence_residual",
    "supported_denominator",
]

_INDEX_RE = re.compile(r"[+-]?[0-9]+/[0-9]+")


@dataclass(frozen=True, order=True)
class HarmonicIndex:
    """The rational argument ``r = a/q`` of ``H_r``, kept in lowest terms.

    ``HarmonicIndex(2, 4)`` is stored as ``1/2`` and ``HarmonicIndex(4, 4)``
    as ``1/1``.  Negative integers are poles of ``H`` and are rejected.
    """

    a: int
    q: int = 1

    def __post_init__(self) -> None:
        a, q = int(self.a), int(self.q)
        if q < 1:
            raise ValueError(f"denominator must be positive, got {q}")
        g = gcd(a, q)
        a, q = a // g, q // g
        if q == 1 and a < 0:
            raise PoleError(f"H_r has a pole at r = {a}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "HarmonicIndex":
        """Strict ``a/q`` parser: optional sign, digits, no whitespace."""
        if not isinstance(text, str) or not _INDEX_RE.fullmatch(text):
            raise ValueError(f"expected 'a/q', got {text!r}")
        a, q = text.split("/")
        if int(q) == 0:
            raise ValueError("zero denominator")
        return cls(int(a), int(q))

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.q)

    def shifted(self, n: int) -> "HarmonicIndex":
        return HarmonicIndex(self.a + n * self.q, self.q)

    def __str__(self) -> str:
        return f"{self.a}/{self.q}"


def harmonic_integer(n: int) -> Fraction:
    """``H_n = 1 + 1/2 + ... + 1/n`` exactly; ``H_0 = 0``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def supported_denominator(q: int) -> bool:
    """Whether ``H_{a/q}`` can be decomposed exactly."""
    if q in (1, 2):
        return True
    try:
        modulus_shape(q)
    except UnsupportedModulus:
        return False
    return True


def _recurrence_shift(b: Fraction, n: int) -> Fraction:
    """``H_{b+n} - H_b`` as a rational, for integer n of either sign."""
    if n >= 0:
        return sum((1 / (b + j) for j in range(1, n + 1)), Fraction(0))
    return -sum((1 / (b + j) for j in range(n + 1, 1)), Fraction(0))


@lru_cache(maxsize=None)
def _gauss_base(b: int, q: int) -> SymbolicValue:
    # 0 < b < q, gcd(b, q) = 1, q >= 2
    if q == 2:
        return SymbolicValue([(UNIT, 2), (LOG2, -2)])
    out = SymbolicValue.rational(Fraction(q, b)) - expand_log_integer(2 * q)
    out = out + SymbolicValue.atom(PI, cot_exact(b, q) * Fraction(-1, 2))
    for n in range(1, (q - 1) // 2 + 1):
        out = out + reduce_log_sin(n, q).scale(cos_exact(n, b, q) * 2)
    return out


def harmonic_symbolic(idx: HarmonicIndex) -> SymbolicValue:
    """Exact canonical form of ``H_{a/q}``.

    >>> harmonic_symbolic(HarmonicIndex(1, 2))
    SymbolicValue((2)*Unit + (-2)*Log2)
    """
    if idx.q == 1:
        return SymbolicValue.rational(harmonic_integer(idx.a))
    b = idx.a % idx.q
    n = (idx.a - b) // idx.q
    try:
        base = _gauss_base(b, idx.q)
    except UnsupportedModulus as exc:
        raise UnsupportedModulus(exc.modulus, exc.reason, index=str(idx)) from None
    shift = _recurrence_shift(Fraction(b, idx.q), n)
    return base + SymbolicValue.rational(shift) if shift else base


def reflection_residual(idx: HarmonicIndex) -> SymbolicValue:
    """``H_r - H_{1-r} - 1/r - 1/(r-1) + pi cot(pi r)``; identically zero."""
    if idx.q == 1:
        raise PoleError("the reflection identity has poles at integers")
    r = idx.value
    other = HarmonicIndex(idx.q - idx.a, idx.q)
    out = harmonic_symbolic(idx) - harmonic_symbolic(other)
    out = out - SymbolicValue.rational(1 / r + 1 / (r - 1))
    return out + SymbolicValue.atom(PI, cot_exact(idx.a, idx.q))


def recurrence_residual(idx: HarmonicIndex) -> SymbolicValue:
    """``H_{r+1} - H_r - 1/(r+1)``; identically zero."""
    r = idx.value
    if r + 1 == 0:
        raise PoleError("H_r has a pole at r = -1")
    return (harmonic_symbolic(idx.shifted(1)) - harmonic_symbolic(idx)
            - SymbolicValue.rational(1 / (r + 1)))
