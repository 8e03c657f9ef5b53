"""Canonical log atoms and the log-sine reduction engine.

A :class:`SymbolicValue` is a finite linear combination, with cyclotomic
coefficients, of the atoms

    1,  pi,  log 2,  log sin(k*pi/m)

where the log-sine atoms range over a fixed set chosen so that, for every
supported collection of moduli, the atoms in play are linearly independent
over the algebraic numbers.  Zero testing is therefore structural: a value
is zero exactly when it has no terms.

Canonical log-sine atoms ``LogSin(k, m)``:

* ``m = p**t`` with p an odd prime, ``gcd(k, p) = 1``, ``k <= (m-1)/2`` and,
  when ``t > 1``, ``2k > p**(t-1)``.  The lower coprime residues at level
  ``p**t`` are not atoms: the divisor product identity ties each of them to
  the level ``p**(t-1)`` atom with the same k, so keeping both would give a
  dependent set.
* ``m = 2**n`` with ``n >= 3``, k odd and ``k <= 2**(n-2)``.

Everything else is rewritten onto these atoms by :func:`reduce_log_sin`,
which uses four exact identities:

* the divisor product ``sin(b x pi/m) = 2^(b-1) prod sin(u pi/m)`` over
  ``u = x mod m/b`` (:func:`divisor_expansion`);
* the half-angle nested radicals for ``sin(k pi/2^n)`` and the pairing
  ``(2 + R)(2 - R) = 4 - R^2`` that removes one radical layer
  (:func:`rationalize_step`);
* the product-to-sum chain ``j -> 2q - 2j`` for ``sin(j pi/2q)`` with
  ``3 !| q`` (:func:`twice_odd_chain`);
* ``prod_{k<=(q-1)/2} sin(k pi/q) = sqrt(q)/2^((q-1)/2)`` for odd q
  (:func:`sine_product_log`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import mpmath
from sympy import factorint

from .cyclotomic import CyclotomicNumber
from .errors import InvariantViolation, UnsupportedModulus

__all__ = [
    "LogAtom",
    "UNIT",
    "PI",
    "LOG2",
    "SymbolicValue",
    "SignSequence",
    "RawLogSum",
    "ModulusShape",
    "modulus_shape",
    "is_canonical_log_sin",
    "nested_radical_signs",
    "decode_signs",
    "rationalize_step",
    "divisor_expansion",
    "twice_odd_chain",
    "sine_product_log",
    "reduce_log_sin",
    "expand_log_integer",
    "symbolic_arith",
    "is_zero",
]

_KIND_NAMES = ("Unit", "Pi", "Log2", "LogSin")


@dataclass(frozen=True, order=True)
class LogAtom:
    """One basis symbol.  Field order gives the canonical sort key
    ``Unit < Pi < Log2 < LogSin`` with log-sines ordered by ``(m, k)``."""

    kind: int
    m: int = 0
    k: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (0, 1, 2, 3):
            raise ValueError(f"unknown atom kind {self.kind}")
        if self.kind == 3:
            if not is_canonical_log_sin(self.k, self.m):
                raise ValueError(f"log sin({self.k}*pi/{self.m}) is not a canonical atom")
        elif self.m or self.k:
            raise ValueError("only LogSin atoms carry (k, m)")

    @classmethod
    def log_sin(cls, k: int, m: int) -> "LogAtom":
        return cls(3, m, k)

    @property
    def variant(self) -> str:
        return _KIND_NAMES[self.kind]

    def __repr__(self) -> str:
        if self.kind == 3:
            return f"LogSin{{{self.k},{self.m}}}"
        return self.variant

    def to_json(self) -> dict:
        if self.kind == 3:
            return {"atom": "LogSin", "k": self.k, "m": self.m}
        return {"atom": self.variant}

    @classmethod
    def from_json(cls, data: Mapping) -> "LogAtom":
        kind = _KIND_NAMES.index(data["atom"])
        if kind == 3:
            return cls.log_sin(int(data["k"]), int(data["m"]))
        return cls(kind)


UNIT = LogAtom(0)
PI = LogAtom(1)
LOG2 = LogAtom(2)


# ---------------------------------------------------------------------------
# modulus shapes

@dataclass(frozen=True)
class ModulusShape:
    """``m = 2**two * prime**power``; ``prime`` is 0 when m is a power of two."""

    m: int
    two: int
    prime: int
    power: int

    @property
    def kind(self) -> str:
        if self.prime == 0:
            return "one" if self.two == 0 else "two_power"
        return "odd_prime_power" if self.two == 0 else "twice_odd_prime_power"


def modulus_shape(m: int) -> ModulusShape:
    """Classify a log-sine modulus, raising :class:`UnsupportedModulus`
    unless it is 1, a power of two, an odd prime power, or twice an odd
    prime power whose prime is not 3."""
    if m < 1:
        raise ValueError("modulus must be positive")
    f = factorint(m)
    two = int(f.pop(2, 0))
    if len(f) > 1:
        raise UnsupportedModulus(m, "two distinct odd prime factors")
    if not f:
        return ModulusShape(m, two, 0, 0)
    (p, t), = f.items()
    p, t = int(p), int(t)
    if two > 1:
        raise UnsupportedModulus(m, f"2^{two} times an odd prime power")
    if two == 1 and p == 3:
        raise UnsupportedModulus(m, "twice a power of 3: the j -> 2q-2j chain has its fixed point at 2q/3")
    return ModulusShape(m, two, p, t)


def is_canonical_log_sin(k: int, m: int) -> bool:
    if m < 3 or k < 1 or 2 * k > m - 1 or math.gcd(k, m) != 1:
        return False
    f = factorint(m)
    if len(f) != 1:
        return False
    (p, t), = f.items()
    if p == 2:
        return t >= 3 and k <= 2 ** (t - 2)
    return t == 1 or 2 * k > p ** (t - 1)


# ---------------------------------------------------------------------------
# symbolic values

def _as_cyclo(c: object) -> CyclotomicNumber:
    if isinstance(c, CyclotomicNumber):
        return c
    return CyclotomicNumber.rational(Fraction(c))


class SymbolicValue(Mapping[LogAtom, CyclotomicNumber]):
    """Immutable map atom -> nonzero cyclotomic coefficient, sorted by atom."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[LogAtom, object] | Iterable[tuple[LogAtom, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[LogAtom, CyclotomicNumber] = {}
        for atom, c in items:
            if not isinstance(atom, LogAtom):
                raise TypeError(f"expected a LogAtom, got {atom!r}")
            c = _as_cyclo(c)
            acc[atom] = acc[atom] + c if atom in acc else c
        self._terms = {a: acc[a] for a in sorted(acc) if not acc[a].is_zero()}

    @classmethod
    def atom(cls, atom: LogAtom, coeff: object = 1) -> "SymbolicValue":
        return cls([(atom, coeff)])

    @classmethod
    def rational(cls, value: int | Fraction) -> "SymbolicValue":
        return cls([(UNIT, value)])

    # Mapping protocol
    def __getitem__(self, atom: LogAtom) -> CyclotomicNumber:
        return self._terms[atom]

    def __iter__(self) -> Iterator[LogAtom]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, atom: LogAtom) -> CyclotomicNumber:
        return self._terms.get(atom, CyclotomicNumber.zero())

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic
    def __add__(self, other: "SymbolicValue") -> "SymbolicValue":
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        return SymbolicValue(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "SymbolicValue":
        return SymbolicValue((a, -c) for a, c in self._terms.items())

    def __sub__(self, other: "SymbolicValue") -> "SymbolicValue":
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        return self + (-other)

    def scale(self, scalar: object) -> "SymbolicValue":
        s = _as_cyclo(scalar)
        if s.is_zero():
            return SymbolicValue()
        return SymbolicValue((a, c * s) for a, c in self._terms.items())

    def __mul__(self, scalar: object) -> "SymbolicValue":
        if isinstance(scalar, SymbolicValue):
            return NotImplemented
        return self.scale(scalar)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolicValue):
            return NotImplemented
        return self._terms.keys() == other._terms.keys() and all(
            self._terms[a] == other._terms[a] for a in self._terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self._terms:
            return "SymbolicValue(0)"
        return "SymbolicValue(" + " + ".join(f"({c})*{a!r}" for a, c in self._terms.items()) + ")"

    def to_json(self) -> dict:
        return {"terms": [{**a.to_json(), "coeff": c.to_json()} for a, c in self._terms.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SymbolicValue":
        return cls(
            (LogAtom.from_json(t), CyclotomicNumber.from_json(t["coeff"])) for t in data["terms"]
        )


def symbolic_arith(x: SymbolicValue, y: SymbolicValue | None = None,
                   scalar: object = None, op: str = "add") -> SymbolicValue:
    """``op='add'``: x + y;  ``op='scale'``: scalar * x."""
    if op == "add":
        if y is None:
            raise ValueError("add needs two operands")
        return x + y
    if op == "scale":
        if scalar is None:
            raise ValueError("scale needs a scalar")
        return x.scale(scalar)
    raise ValueError(f"unknown op {op!r}")


def is_zero(x: SymbolicValue) -> bool:
    """True iff the canonical form has no terms.

    Sound because the canonical atoms, together with 1 and pi, are linearly
    independent over the algebraic numbers (Baker's theorem applied to
    multiplicatively independent cyclotomic units).
    """
    return x.is_zero()


# ---------------------------------------------------------------------------
# raw (not yet canonical) log-sine sums, used to state identities

@dataclass(frozen=True)
class RawLogSum:
    """``log2 * log 2 + sum c_(k,m) log sin(k pi/m)`` with rational coefficients."""

    log2: Fraction = Fraction(0)
    sines: tuple[tuple[tuple[int, int], Fraction], ...] = ()

    @classmethod
    def build(cls, log2: object = 0, sines: Iterable[tuple[tuple[int, int], object]] = ()) -> "RawLogSum":
        acc: dict[tuple[int, int], Fraction] = {}
        for key, c in sines:
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        return cls(Fraction(log2), tuple(sorted((k, c) for k, c in acc.items() if c)))

    def __add__(self, other: "RawLogSum") -> "RawLogSum":
        return RawLogSum.build(self.log2 + other.log2, self.sines + other.sines)

    def __neg__(self) -> "RawLogSum":
        return RawLogSum.build(-self.log2, ((k, -c) for k, c in self.sines))

    def __sub__(self, other: "RawLogSum") -> "RawLogSum":
        return self + (-other)

    def numeric(self, dps: int = 50) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            acc = self.log2 * mpmath.log(2)
            for (k, m), c in self.sines:
                acc += mpmath.mpf(c.numerator) / c.denominator * mpmath.log(mpmath.sinpi(mpmath.mpf(k) / m))
            return +acc

    def canonical(self) -> SymbolicValue:
        out = SymbolicValue.atom(LOG2, self.log2)
        for (k, m), c in self.sines:
            out = out + reduce_log_sin(k, m).scale(c)
        return out


# ---------------------------------------------------------------------------
# powers of two: nested radicals

@dataclass(frozen=True)
class SignSequence:
    """Signs of ``(1/2) sqrt(2 + s1 sqrt(2 + s2 sqrt(... + s_r sqrt 2)))``.

    A sequence of length r describes a radical with r + 1 square roots,
    which is the sine of an odd multiple of ``pi / 2**(r+2)``.
    """

    signs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def level(self) -> int:
        """The n with value = sin(k pi / 2**n)."""
        return len(self.signs) + 2

    def value(self, dps: int = 50) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            inner = mpmath.sqrt(2)
            for s in reversed(self.signs):
                inner = mpmath.sqrt(2 + s * inner)
            return inner / 2

    def flip_leading(self) -> "SignSequence":
        if not self.signs:
            return self
        return SignSequence((-self.signs[0],) + self.signs[1:])

    def collapse(self) -> "SignSequence":
        """Signs of sqrt(4 - R^2) where the outer radical is sqrt(2 +- R).

        ``(2 + R)(2 - R) = 4 - R^2 = 2 - s2 R'`` drops one layer.
        """
        if not self.signs:
            raise ValueError("cannot collapse a single radical")
        if len(self.signs) == 1:
            return SignSequence(())
        return SignSequence((-self.signs[1],) + self.signs[2:])


def _cos_sign(j: int, e: int) -> int:
    """Sign of cos(j pi / 2**e) for odd j and e >= 2 (never zero)."""
    period = 2 ** (e + 1)
    quarter = 2 ** (e - 1)
    r = j % period
    return 1 if r < quarter or r > 3 * quarter else -1


@lru_cache(maxsize=None)
def nested_radical_signs(k: int, n: int) -> SignSequence:
    """Signs with ``sin(k pi / 2**n)`` equal to the nested radical, built by
    induction on n: half-angle for ``k < 2**(n-1)``, and the cosine of the
    complement ``k - 2**(n-1)`` above that."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if k % 2 == 0 or not 1 <= k < 2 ** n:
        raise ValueError(f"k must be odd with 1 <= k < 2**{n}, got {k}")
    if n == 2:
        return SignSequence(())
    half = 2 ** (n - 1)
    if k < half:
        # 2 sin(k pi/2^n) = sqrt(2 - 2 cos(k pi/2^(n-1)))
        lead = -_cos_sign(k, n - 1)
        inner = nested_radical_signs(k, n - 1)
    else:
        # sin(k pi/2^n) = cos(a pi/2^n) = sqrt((1 + cos(a pi/2^(n-1)))/2)
        a = k - half
        lead = _cos_sign(a, n - 1)
        inner = nested_radical_signs(a, n - 1)
    # cos x = +-(1/2) sqrt(2 - s1 R) when sin x = (1/2) sqrt(2 + s1 R)
    return SignSequence((lead,) + inner.flip_leading().signs)


@lru_cache(maxsize=None)
def _sign_table(n: int) -> dict[tuple[int, ...], int]:
    table = {nested_radical_signs(k, n).signs: k for k in range(1, 2 ** (n - 1), 2)}
    if len(table) != max(1, 2 ** (n - 2)):
        raise InvariantViolation(f"sign sequences at level {n} are not distinct")
    return table


def decode_signs(signs: SignSequence) -> int:
    """The odd ``k < 2**(n-1)`` whose sine the sequence describes."""
    return _sign_table(signs.level)[signs.signs]


def rationalize_step(k: int, n: int) -> RawLogSum:
    """Rewrite ``log sin(k pi/2^n)`` for odd ``2^(n-2) < k < 2^(n-1)``.

    With ``2 sin(k pi/2^n) = sqrt(2 + s R)``, the sequence with the leading
    sign flipped is a lower-quarter k', and the product of the two radicals
    is ``sqrt(4 - R^2)``, a sine at level n - 1:

        log sin(k pi/2^n) = log sin(k'' pi/2^(n-1)) - log sin(k' pi/2^n) - log 2
    """
    if n < 3 or not (2 ** (n - 2) < k < 2 ** (n - 1)) or k % 2 == 0:
        raise ValueError(f"rationalize_step needs odd 2^{n - 2} < k < 2^{n - 1}, got {k}")
    s = nested_radical_signs(k, n)
    partner = decode_signs(s.flip_leading())
    lower = decode_signs(s.collapse())
    m = 2 ** n
    return RawLogSum.build(-1, [((lower, m // 2), 1), ((partner, m), -1)])


# ---------------------------------------------------------------------------
# divisor product identity

def divisor_expansion(b: int, x: int, m: int) -> RawLogSum:
    """``log sin(b x pi/m) = (b-1) log 2 + sum_{u = x mod m/b, 1<=u<m} log sin(u pi/m)``."""
    if b < 1 or m % b:
        raise ValueError("b must divide m")
    step = m // b
    if not 1 <= b * x <= m - 1 or x % step == 0:
        raise ValueError(f"need 1 <= b*x <= m-1 and x not divisible by {step}")
    r = x % step
    return RawLogSum.build(b - 1, [((r + step * s, m), 1) for s in range(b)])


# ---------------------------------------------------------------------------
# twice an odd number: the j -> 2q - 2j chain

def twice_odd_chain(j: int, q: int, max_steps: int | None = None) -> tuple[RawLogSum, int]:
    """Rewrite ``log sin(j pi/2q)`` for ``(q+1)/2 <= j <= q-1``.

    Each step pairs j with r = q - j:
    ``sin(j x) sin(r x) = (1/2) sin((q - j + r) x)`` with x = pi/2q because
    ``cos((j + r) x) = cos(pi/2) = 0``, so ``j`` is replaced by ``2q - 2j``.
    The loop ends once the index drops to ``(q-1)/2`` or below; for
    ``3 !| q`` this takes at most ``ceil(log2 q) + 2`` steps.

    Returns the identity (every log-sine index <= (q-1)/2, modulus 2q) and
    the number of steps taken.
    """
    if q % 2 == 0 or q < 3:
        raise ValueError("q must be odd and >= 3")
    if q % 3 == 0:
        raise UnsupportedModulus(2 * q, "3 | q: the chain can stall at j = 2q/3")
    if max_steps is None:
        max_steps = q.bit_length() + 2
    m = 2 * q
    log2 = 0
    terms: list[tuple[tuple[int, int], int]] = []
    steps = 0
    while 2 * j >= q + 1:
        if steps >= max_steps:
            raise InvariantViolation(f"chain for j={j}, q={q} exceeded {max_steps} steps")
        r = q - j
        terms.append(((r, m), -1))
        log2 -= 1
        j = 2 * q - 2 * j
        steps += 1
    terms.append(((j, m), 1))
    return RawLogSum.build(log2, terms), steps


def sine_product_log(q: int) -> RawLogSum:
    """``log q = 2 (sum_{k=1}^{(q-1)/2} log sin(k pi/q) + ((q-1)/2) log 2)`` for odd q."""
    if q < 3 or q % 2 == 0:
        raise ValueError("q must be odd and >= 3")
    alpha = (q - 1) // 2
    return RawLogSum.build(2 * alpha, [((k, q), 2) for k in range(1, alpha + 1)])


# ---------------------------------------------------------------------------
# the reduction engine

_ZERO = SymbolicValue()


def _sin_atom(k: int, m: int) -> SymbolicValue:
    return SymbolicValue.atom(LogAtom.log_sin(k, m))


def _reduce_two_power(k: int, n: int) -> SymbolicValue:
    # k odd, k <= 2^(n-1)
    if n == 1:
        return _ZERO
    if n == 2:
        return SymbolicValue.atom(LOG2, Fraction(-1, 2))
    if k <= 2 ** (n - 2):
        return _sin_atom(k, 2 ** n)
    return rationalize_step(k, n).canonical()


def _reduce_odd_coprime(k: int, p: int, t: int) -> SymbolicValue:
    # gcd(k, p) = 1, k <= (p^t - 1)/2
    m = p ** t
    if t == 1 or 2 * k > p ** (t - 1):
        return _sin_atom(k, m)
    # divisor identity with b = p, x = k, read as an expression for the u = k term
    ident = divisor_expansion(p, k, m)
    out = reduce_log_sin(k, m // p) - SymbolicValue.atom(LOG2, ident.log2)
    for (u, _), c in ident.sines:
        if u != k:
            out = out - reduce_log_sin(u, m).scale(c)
    return out


def _reduce_twice_odd(k: int, q: int) -> SymbolicValue:
    # m = 2q, k odd, gcd(k, q) = 1, k <= q - 1
    if 2 * k <= q - 1:
        # divisor identity with b = 2 at modulus 2q:
        # log sin(k pi/q) = log 2 + log sin(k pi/2q) + log sin((q+k) pi/2q)
        return (reduce_log_sin(k, q) - SymbolicValue.atom(LOG2)
                - reduce_log_sin((q + k) // 2, q))
    chain, _ = twice_odd_chain(k, q)
    return chain.canonical()


@lru_cache(maxsize=None)
def reduce_log_sin(k: int, m: int) -> SymbolicValue:
    """Exact canonical form of ``log sin(k pi/m)`` for ``1 <= k <= m-1``.

    Raises :class:`UnsupportedModulus` for moduli outside 2^n, p^t and
    2 p^t with p != 3 odd.
    """
    if m < 2 or not 1 <= k <= m - 1:
        raise ValueError(f"need 1 <= k <= m-1, got k={k}, m={m}")
    shape = modulus_shape(m)
    k = min(k, m - k)
    kind = shape.kind
    if kind == "two_power":
        g = math.gcd(k, m)
        return _reduce_two_power(k // g, (m // g).bit_length() - 1)
    if kind == "odd_prime_power":
        p, t = shape.prime, shape.power
        if k % p == 0:
            r = 0
            x = k
            while x % p == 0:
                x //= p
                r += 1
            return divisor_expansion(p ** r, x, m).canonical()
        return _reduce_odd_coprime(k, p, t)
    # twice an odd prime power
    g = math.gcd(k, m)
    if g > 1:
        if g == m // 2:
            return _ZERO  # sin(pi/2)
        return reduce_log_sin(k // g, m // g)
    return _reduce_twice_odd(k, m // 2)


def _log_odd_prime(p: int) -> SymbolicValue:
    return sine_product_log(p).canonical()


def expand_log_integer(m: int) -> SymbolicValue:
    """Canonical form of ``log m``: ``log 2`` per factor of two and the
    sine-product expansion of ``log p`` for each odd prime p."""
    if m < 1:
        raise ValueError("m must be positive")
    f = factorint(m)
    e = int(f.pop(2, 0))
    out = SymbolicValue.atom(LOG2, e)
    for p, t in f.items():
        out = out + _log_odd_prime(int(p)).scale(int(t))
    return out
