"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis ``1, zeta, ..., zeta^(phi(N)-1)``
reduced modulo the N-th cyclotomic polynomial, as a vector of integer
numerators over one positive common denominator.  Binary operations embed
both operands into the lcm of their conductors; results are never
descended automatically (see :meth:`CyclotomicNumber.descend`).

Every algebraic scalar used elsewhere in the package (cosines, cotangents,
kernel coordinates) is a :class:`CyclotomicNumber`.  Restricting the
coefficient field to cyclotomic fields covers every closed form the
harmonic-number decomposition produces; it is not a general number field
implementation.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Sequence, Union

import mpmath
from gmpy2 import mpz
from sympy import divisors, factorint, primitive_root

from .errors import (
    ConductorCapExceeded,
    ConductorError,
    CyclotomicDivisionByZero,
    InvariantViolation,
    PoleError,
)

Rational = Fraction
Scalar = Union[int, Fraction, "CyclotomicNumber"]

__all__ = [
    "Rational",
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "euler_phi",
    "zeta",
    "embed",
    "cyclo_arith",
    "cos_exact",
    "cot_exact",
    "numeric_embed",
    "conductor_cap",
    "active_conductor_cap",
]


# ---------------------------------------------------------------------------
# number theory helpers

def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs a positive integer")
    result = n
    for p in factorint(n):
        result -= result // p
    return result


def _mobius(n: int) -> int:
    f = factorint(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact long division of integer polynomials (low degree first), monic divisor."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Computed as x^n - 1 divided by Phi_d for every proper divisor d of n.
    The cache is a plain memo: concurrent population only ever inserts the
    same value twice.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            poly = _poly_divexact(poly, cyclotomic_polynomial(int(d)))
    return tuple(poly)


class _Field:
    """Per-conductor reduction data."""

    __slots__ = ("n", "phi", "lower", "units")

    def __init__(self, n: int):
        self.n = n
        poly = cyclotomic_polynomial(n)
        self.phi = len(poly) - 1
        # x^phi == -sum(c_d x^d) modulo Phi_n
        self.lower = tuple((d, c) for d, c in enumerate(poly[:-1]) if c)
        self.units = tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)

    def reduce(self, p: list[int]) -> list[int]:
        """Reduce an integer polynomial (mutated in place) modulo Phi_n."""
        n, phi = self.n, self.phi
        if len(p) > n:
            for i in range(n, len(p)):
                p[i % n] += p[i]
            del p[n:]
        lower = self.lower
        for i in range(len(p) - 1, phi - 1, -1):
            c = p[i]
            if c:
                base = i - phi
                for d, e in lower:
                    p[base + d] -= c * e
        if len(p) < phi:
            p.extend([0] * (phi - len(p)))
        else:
            del p[phi:]
        return p


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


@lru_cache(maxsize=None)
def _ramanujan_traces(n: int) -> tuple[int, ...]:
    """Trace of zeta_n^i down to Q for i in [0, n)."""
    out = []
    for i in range(n):
        g = math.gcd(i, n)
        m = n // g
        out.append(_mobius(m) * (euler_phi(n) // euler_phi(m)))
    return tuple(out)


# ---------------------------------------------------------------------------
# integer polynomial multiplication by Kronecker substitution

def _bias(count: int, nbytes: int) -> int:
    """The integer with 2**(8*nbytes - 1) in each of ``count`` slots."""
    return int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * count, "little")


def _pack(v: Sequence[int], nbytes: int) -> int:
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in v)
    return int.from_bytes(raw, "little") - _bias(len(v), nbytes)


def _unpack(value: int, count: int, nbytes: int) -> list[int]:
    # adding half to every slot makes each digit non-negative, so no borrows
    half = 1 << (8 * nbytes - 1)
    raw = (value + _bias(count, nbytes)).to_bytes(count * nbytes, "little")
    from_bytes = int.from_bytes
    return [from_bytes(raw[i:i + nbytes], "little") - half
            for i in range(0, count * nbytes, nbytes)]


def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if not ma or not mb:
        return [0]
    size = len(a) + len(b) - 1
    if len(a) <= 2 or len(b) <= 2:
        out = [0] * size
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    nbytes = ((ma * mb * min(len(a), len(b))).bit_length() + 2) // 8 + 1
    # GMP multiplies large integers several times faster than CPython
    prod = int(mpz(_pack(a, nbytes)) * mpz(_pack(b, nbytes)))
    return _unpack(prod, size, nbytes)


@lru_cache(maxsize=None)
def _unit_generators(n: int) -> tuple[tuple[int, int], ...]:
    """Generators with orders of cyclic factors whose direct product is (Z/n)^*."""
    gens = []
    for p, e in sorted(factorint(n).items()):
        pe = p ** e
        rest = n // pe
        if p == 2:
            local = ([(pe - 1, 2)] if e >= 2 else []) + ([(5, 2 ** (e - 2))] if e >= 3 else [])
        else:
            local = [(int(primitive_root(pe)), (p - 1) * p ** (e - 1))]
        for g, order in local:
            # lift: g mod p^e, 1 mod the rest
            x = g if rest == 1 else g + pe * (((1 - g) * pow(pe, -1, rest)) % rest)
            gens.append((x % n, order))
    return tuple(gens)


def _orbit_product(y: "CyclotomicNumber", g: int, order: int) -> "CyclotomicNumber":
    """prod_{k=1}^{order-1} sigma_g^k(y), by doubling."""
    n = y._conductor
    target = order - 1
    if target == 0:
        return CyclotomicNumber.one(n)
    acc = y.galois(g)
    m = 1
    for bit in bin(target)[3:]:
        acc = acc * acc.galois(pow(g, m, n))
        m *= 2
        if bit == "1":
            m += 1
            acc = acc * y.galois(pow(g, m, n))
    return acc


def _adjugate(x: "CyclotomicNumber") -> tuple["CyclotomicNumber", Fraction]:
    """(a, N(x)) with a * x = N(x).

    The norm is taken one cyclic factor of the Galois group at a time: after
    multiplying by the other conjugates under <g>, the running value is fixed
    by <g>, and the last value is rational.
    """
    n = x._conductor
    adj = CyclotomicNumber.one(n)
    y = x
    for g, order in _unit_generators(n):
        if y.is_rational():
            break
        q = _orbit_product(y, g, order)
        adj = adj * q
        y = y * q
    if not y.is_rational():
        raise InvariantViolation("norm tower did not reach Q")
    if y.is_zero():
        raise CyclotomicDivisionByZero("zero divisor in a cyclotomic field")
    return adj, y.to_fraction()


# ---------------------------------------------------------------------------
# conductor cap

_CAP: ContextVar[int | None] = ContextVar("conductor_cap", default=None)


@contextmanager
def conductor_cap(limit: int | None) -> Iterator[None]:
    """Reject every cyclotomic operation needing a conductor above ``limit``."""
    token = _CAP.set(limit)
    try:
        yield
    finally:
        _CAP.reset(token)


def active_conductor_cap() -> int | None:
    return _CAP.get()


def _check_cap(n: int) -> None:
    cap = _CAP.get()
    if cap is not None and n > cap:
        raise ConductorCapExceeded(n, cap)


# ---------------------------------------------------------------------------

class CyclotomicNumber:
    """An element of Q(zeta_N) in reduced power-basis coordinates.

    The constructor accepts coefficients of any polynomial in zeta_N (any
    length) and reduces them modulo Phi_N.  Values are immutable.

    >>> i = zeta(4)
    >>> i * i == -1
    True
    """

    __slots__ = ("_conductor", "_num", "_den", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable[int | Fraction | str] = ()):
        if conductor < 1:
            raise ValueError("conductor must be a positive integer")
        _check_cap(conductor)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr] or [0]
        self._set(conductor, _field(conductor).reduce(nums), den)

    def _set(self, conductor: int, nums: list[int], den: int) -> None:
        g = math.gcd(den, *nums)
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self._conductor = conductor
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, conductor: int, nums: list[int], den: int = 1) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        obj._set(conductor, nums, den)
        return obj

    @classmethod
    def rational(cls, value: int | Fraction, conductor: int = 1) -> "CyclotomicNumber":
        value = Fraction(value)
        phi = _field(conductor).phi
        nums = [value.numerator] + [0] * (phi - 1)
        return cls._raw(conductor, nums, value.denominator)

    @classmethod
    def zero(cls, conductor: int = 1) -> "CyclotomicNumber":
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "CyclotomicNumber":
        return cls.rational(1, conductor)

    # -- accessors ---------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._conductor

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    @property
    def degree(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def is_real(self) -> bool:
        """Exact test: fixed by complex conjugation."""
        return self.is_rational() or self == self.conjugate()

    # -- conductor handling ------------------------------------------------

    def embed(self, target: int) -> "CyclotomicNumber":
        n = self._conductor
        if target == n:
            return self
        if target < 1 or target % n:
            raise ConductorError(f"cannot embed conductor {n} into {target}")
        _check_cap(target)
        step = target // n
        poly = [0] * ((len(self._num) - 1) * step + 1)
        for i, c in enumerate(self._num):
            poly[i * step] = c
        return CyclotomicNumber._raw(target, _field(target).reduce(poly), self._den)

    def descend(self) -> "CyclotomicNumber":
        """Return the same number at the smallest conductor containing it."""
        n = self._conductor
        if self.is_rational():
            return CyclotomicNumber._raw(1, [self._num[0]], self._den)
        units = _field(n).units
        for d in sorted(int(x) for x in divisors(n)):
            if d == n:
                return self
            fixing = [k for k in units if k % d == 1 % d]
            if any(self.galois(k) != self for k in fixing):
                continue
            y = _solve_descent(self, d)
            if y is not None:
                return y
        return self

    # -- Galois action -----------------------------------------------------

    def galois(self, k: int) -> "CyclotomicNumber":
        """Apply the automorphism zeta_N -> zeta_N^k (k coprime to N)."""
        n = self._conductor
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        k %= n
        if k == 1 % n:
            return self
        poly = [0] * n
        for i, c in enumerate(self._num):
            if c:
                poly[(i * k) % n] += c
        return CyclotomicNumber._raw(n, _field(n).reduce(poly), self._den)

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1)

    def trace(self) -> Fraction:
        """Absolute trace Tr_{Q(zeta_N)/Q}."""
        tr = _ramanujan_traces(self._conductor)
        return Fraction(sum(c * tr[i] for i, c in enumerate(self._num) if c), self._den)

    def norm(self) -> Fraction:
        """Absolute norm N_{Q(zeta_N)/Q}."""
        if self.is_rational():
            return Fraction(self._num[0], self._den) ** _field(self._conductor).phi
        return _adjugate(self)[1]

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: object) -> "CyclotomicNumber | None":
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, _RationalABC)):
            return CyclotomicNumber.rational(Fraction(other), 1)
        return None

    @staticmethod
    def _align(x: "CyclotomicNumber", y: "CyclotomicNumber") -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if x._conductor == y._conductor:
            return x, y
        if y.is_rational() and x._conductor % y._conductor == 0:
            return x, CyclotomicNumber._raw(x._conductor, [y._num[0]] + [0] * (len(x._num) - 1), y._den)
        if x.is_rational() and y._conductor % x._conductor == 0:
            return CyclotomicNumber._raw(y._conductor, [x._num[0]] + [0] * (len(y._num) - 1), x._den), y
        n = math.lcm(x._conductor, y._conductor)
        return x.embed(n), y.embed(n)

    def _addsub(self, other: "CyclotomicNumber", sign: int) -> "CyclotomicNumber":
        x, y = CyclotomicNumber._align(self, other)
        if x._den == y._den:
            den = x._den
            if sign > 0:
                nums = [a + b for a, b in zip(x._num, y._num)]
            else:
                nums = [a - b for a, b in zip(x._num, y._num)]
        else:
            g = math.gcd(x._den, y._den)
            fx = y._den // g
            fy = x._den // g
            den = x._den * fx
            if sign > 0:
                nums = [a * fx + b * fy for a, b in zip(x._num, y._num)]
            else:
                nums = [a * fx - b * fy for a, b in zip(x._num, y._num)]
        return CyclotomicNumber._raw(x._conductor, nums, den)

    def __add__(self, other: object) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._addsub(o, -1)

    def __rsub__(self, other: object) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o._addsub(self, -1)

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber._raw(self._conductor, [-a for a in self._num], self._den)

    def __pos__(self) -> "CyclotomicNumber":
        return self

    def _scale(self, r: Fraction) -> "CyclotomicNumber":
        return CyclotomicNumber._raw(
            self._conductor, [a * r.numerator for a in self._num], self._den * r.denominator
        )

    def __mul__(self, other: object) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational() and (o._conductor == 1 or o._conductor == self._conductor):
            return self._scale(Fraction(o._num[0], o._den))
        if self.is_rational() and self._conductor in (1, o._conductor):
            return o._scale(Fraction(self._num[0], self._den))
        x, y = CyclotomicNumber._align(self, o)
        f = _field(x._conductor)
        nums = f.reduce(_polymul(x._num, y._num))
        return CyclotomicNumber._raw(x._conductor, nums, x._den * y._den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise CyclotomicDivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            r = Fraction(self._den, self._num[0])
            return CyclotomicNumber._raw(
                self._conductor, [r.numerator] + [0] * (len(self._num) - 1), r.denominator
            )
        adj, norm = _adjugate(self)
        return adj._scale(1 / norm)

    def __truediv__(self, other: object) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise CyclotomicDivisionByZero("division by zero in a cyclotomic field")
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "CyclotomicNumber":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "CyclotomicNumber":
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = CyclotomicNumber.one(self._conductor)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._conductor == o._conductor:
            return self._den == o._den and self._num == o._num
        if self.is_rational() and o.is_rational():
            return self._den == o._den and self._num[0] == o._num[0]
        x, y = CyclotomicNumber._align(self, o)
        return x._den == y._den and x._num == y._num

    def __hash__(self) -> int:
        # the normalised trace does not depend on the conductor the value
        # is written at, so equal numbers hash equal
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.trace() / len(self._num), "cyclo"))
        return self._hash

    # -- display / serialisation -------------------------------------------

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self._conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.to_fraction())
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else (f"z{self._conductor}" if i == 1 else f"z{self._conductor}^{i}")
            parts.append(f"({c})*{mono}" if i else f"({c})")
        return " + ".join(parts)

    def to_json(self) -> dict:
        d = self._den
        coeffs = []
        for x in self._num:
            g = math.gcd(x, d)
            coeffs.append([x // g, d // g])
        return {"conductor": self._conductor, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return cls(int(data["conductor"]), [Fraction(int(n), int(d)) for n, d in data["coeffs"]])


def _solve_descent(x: CyclotomicNumber, d: int) -> CyclotomicNumber | None:
    """Find y in Q(zeta_d) whose image at conductor(x) is x, or None."""
    n = x.conductor
    phi_d = euler_phi(d)
    cols = [zeta(d, i).embed(n).coeffs for i in range(phi_d)]
    rows = [[cols[j][i] for j in range(phi_d)] + [x.coeffs[i]] for i in range(len(x.coeffs))]
    piv_cols: list[int] = []
    r = 0
    for c in range(phi_d):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    sol = [Fraction(0)] * phi_d
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return CyclotomicNumber(d, sol)


# ---------------------------------------------------------------------------
# constructors and closed forms

def zeta(n: int, k: int = 1) -> CyclotomicNumber:
    """zeta_n^k with zeta_n = exp(2*pi*i/n)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    _check_cap(n)
    poly = [0] * n
    poly[k % n] = 1
    return CyclotomicNumber._raw(n, _field(n).reduce(poly), 1)


def cyclo_arith(x: CyclotomicNumber, y: CyclotomicNumber, op: str) -> CyclotomicNumber:
    """``op`` in {add, sub, mul, div}, with both operands at the lcm conductor."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def embed(x: CyclotomicNumber, target: int) -> CyclotomicNumber:
    return x.embed(target)


def cos_exact(n: int, a: int, q: int) -> CyclotomicNumber:
    """cos(2*pi*n*a/q) = (zeta_q^(na) + zeta_q^(-na)) / 2, at conductor q."""
    if q < 1:
        raise ValueError("q must be positive")
    e = (n * a) % q
    if e == 0:
        return CyclotomicNumber.rational(1, q)
    if 2 * e == q:
        return CyclotomicNumber.rational(-1, q)
    poly = [0] * q
    poly[e] += 1
    poly[(-e) % q] += 1
    return CyclotomicNumber._raw(q, _field(q).reduce(poly), 2)


def cot_exact(a: int, q: int) -> CyclotomicNumber:
    """cot(pi*a/q) = i (w + 1)/(w - 1) with w = zeta_q^a, at conductor lcm(4, q).

    The inverse of w - 1 comes from the identity
    (w - 1) * sum_{j<d} j w^j = d for w of exact order d.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if a % q == 0:
        raise PoleError(f"cot(pi*{a}/{q}) is a pole")
    n = math.lcm(4, q)
    _check_cap(n)
    step = (n // q) * (a % q)
    d = q // math.gcd(a, q)
    inv_poly = [0] * n
    for j in range(d):
        inv_poly[(step * j) % n] += j
    f = _field(n)
    inv = CyclotomicNumber._raw(n, f.reduce(inv_poly), d)
    w_plus_one = [0] * n
    w_plus_one[0] += 1
    w_plus_one[step % n] += 1
    num = CyclotomicNumber._raw(n, f.reduce(w_plus_one), 1)
    return zeta(n, n // 4) * num * inv


@lru_cache(maxsize=256)
def _zeta_powers(n: int, dps: int) -> tuple:
    with mpmath.workdps(dps):
        # direct evaluation of each power avoids error growth from products
        return tuple(mpmath.expjpi(mpmath.mpf(2 * i) / n) for i in range(euler_phi(n)))


def numeric_embed(x: CyclotomicNumber, digits: int = 50) -> mpmath.mpc:
    """Evaluate x at zeta_N = exp(2*pi*i/N) to at least ``digits`` digits.

    Working precision adds ten guard digits plus the digit length of the
    largest numerator, which bounds the cancellation in the phi(N)-term sum.
    """
    if digits < 10:
        raise ValueError("digits must be >= 10")
    dps = digits + 10 + max(map(abs, x._num), default=0).bit_length() * 3 // 10
    powers = _zeta_powers(x.conductor, dps)
    with mpmath.workdps(dps):
        acc = mpmath.mpc(0)
        for c, zp in zip(x._num, powers):
            if c:
                acc += c * zp
        return acc / x._den
