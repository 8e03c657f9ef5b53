"""Desk-scale verification suites for the log-sine identities.

Each suite returns a list of :class:`CheckCase`.  Numeric comparisons run
at ``precision.working`` digits and use the tolerance
``10^-(digits - 10)`` unless a suite states otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .cyclotomic import cyclotomic_polynomial, euler_phi
from .errors import UnsupportedModulus
from .logbasis import (
    LOG2,
    RawLogSum,
    SymbolicValue,
    divisor_expansion,
    expand_log_integer,
    is_canonical_log_sin,
    modulus_shape,
    nested_radical_signs,
    rationalize_step,
    reduce_log_sin,
    sine_product_log,
    twice_odd_chain,
)
from .numeric import PrecisionConfig, check_independence, eval_symbolic, format_residual

__all__ = [
    "CheckCase",
    "nested_radical_suite",
    "two_power_suite",
    "sine_product_suite",
    "twice_odd_suite",
    "divisor_suite",
    "independence_suite",
    "SUITES",
    "run_suites",
]


@dataclass(frozen=True)
class CheckCase:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "case": self.name, "passed": self.passed, "detail": self.detail}


def _tol(p: PrecisionConfig) -> mpmath.mpf:
    return mpmath.mpf(10) ** (-(p.digits - 10))


class _LogSinTable:
    """Cached ``log sin(k pi/m)`` values at one precision."""

    def __init__(self, dps: int):
        self.dps = dps
        self._cache: dict[tuple[int, int], mpmath.mpf] = {}

    def __call__(self, k: int, m: int) -> mpmath.mpf:
        g = math.gcd(k, m)
        key = (k // g, m // g)
        v = self._cache.get(key)
        if v is None:
            with mpmath.workdps(self.dps):
                v = mpmath.log(mpmath.sinpi(mpmath.mpf(key[0]) / key[1]))
            self._cache[key] = v
        return v

    def raw(self, s: RawLogSum) -> mpmath.mpf:
        with mpmath.workdps(self.dps):
            acc = s.log2 * mpmath.log(2)
            for (k, m), c in s.sines:
                acc += mpmath.mpf(c.numerator) / c.denominator * self(k, m)
            return acc


def nested_radical_suite(p: PrecisionConfig = PrecisionConfig(), max_n: int = 6) -> list[CheckCase]:
    """Sign sequences reproduce ``sin(k pi/2^n)`` for odd k to 50 digits."""
    tol = mpmath.mpf(10) ** -50
    out = []
    dps = max(p.working, 60)
    for n in range(2, max_n + 1):
        for k in range(1, 2 ** n, 2):
            s = nested_radical_signs(k, n)
            with mpmath.workdps(dps):
                err = abs(s.value(dps) - mpmath.sinpi(mpmath.mpf(k) / 2 ** n))
            out.append(CheckCase("radicals", f"sin({k}pi/{2 ** n})",
                                 err < tol and len(s.signs) == n - 2, f"err={format_residual(err)}"))
    return out


def two_power_suite(p: PrecisionConfig = PrecisionConfig(), max_n: int = 7) -> list[CheckCase]:
    """Rationalization at powers of two: each odd upper-quarter k rewrites
    one level down, every reduction is numerically exact, and at most
    ``2^(n-2)`` log-sine atoms live at modulus ``2^n``."""
    tol = _tol(p)
    table = _LogSinTable(p.working)
    out = []
    for n in range(3, max_n + 1):
        m = 2 ** n
        for k in range(2 ** (n - 2) + 1, 2 ** (n - 1), 2):
            ident = rationalize_step(k, n)
            err = abs(table.raw(ident) - table(k, m))
            out.append(CheckCase("two-power", f"rationalize {k}pi/{m}", err < tol,
                                 f"err={format_residual(err)}"))
        atoms = set()
        worst = mpmath.mpf(0)
        for k in range(1, m):
            v = reduce_log_sin(k, m)
            atoms |= {a for a in v if a.kind == 3 and a.m == m}
            worst = max(worst, abs(eval_symbolic(v, p) - table(k, m)))
        out.append(CheckCase("two-power", f"reduce all k at {m}", worst < tol,
                             f"err={format_residual(worst)}"))
        bound = ((m - 1) // 2 + 1) // 2
        out.append(CheckCase("two-power", f"atom count at {m}", len(atoms) <= bound,
                             f"{len(atoms)} <= {bound}"))
    return out


def _primitive_block(d: int) -> tuple[SymbolicValue, str]:
    """``sum_{1 <= k < d, gcd(k, d) = 1} log sin(k pi/d)`` exactly.

    Supported moduli are reduced term by term.  Otherwise the block is
    grouped as a whole: ``prod (1 - zeta_d^k) = Phi_d(1)`` over primitive k
    and ``|1 - zeta_d^k| = 2 sin(k pi/d)`` give
    ``log Phi_d(1) - phi(d) log 2``."""
    try:
        modulus_shape(d)
    except UnsupportedModulus:
        value = sum(cyclotomic_polynomial(d))
        out = expand_log_integer(value) - SymbolicValue.atom(LOG2, euler_phi(d))
        return out, f"block d={d} via Phi_{d}(1)={value}"
    out = SymbolicValue()
    for k in range(1, d):
        if math.gcd(k, d) == 1:
            out = out + reduce_log_sin(k, d)
    return out, ""


def sine_product_suite(p: PrecisionConfig = PrecisionConfig(), max_q: int = 25) -> list[CheckCase]:
    """``prod_{k<=(q-1)/2} sin(k pi/q) = sqrt(q)/2^((q-1)/2)`` for odd q.

    Numerically for every odd q.  Symbolically, the full sum
    ``sum_{1 <= k <= q-1} log sin(k pi/q)`` is split by ``gcd(k, q)`` into
    primitive blocks at each divisor ``d > 1`` of q, each block is reduced
    exactly, and the total is compared with ``log q - (q-1) log 2``."""
    tol = _tol(p)
    table = _LogSinTable(p.working)
    out = []
    for q in range(3, max_q + 1, 2):
        ident = sine_product_log(q)
        with mpmath.workdps(p.working):
            err = abs(table.raw(ident) - mpmath.log(q))
        out.append(CheckCase("sine-product", f"numeric q={q}", err < tol, f"err={format_residual(err)}"))
        full = SymbolicValue()
        notes = []
        for d in range(2, q + 1):
            if q % d == 0:
                block, note = _primitive_block(d)
                full = full + block
                if note:
                    notes.append(note)
        diff = full - expand_log_integer(q) + SymbolicValue.atom(LOG2, q - 1)
        detail = "exact zero" if diff.is_zero() else repr(diff)
        if notes:
            detail += "; " + ", ".join(notes)
        out.append(CheckCase("sine-product", f"symbolic q={q}", diff.is_zero(), detail))
    return out


def twice_odd_suite(p: PrecisionConfig = PrecisionConfig(), max_q: int = 1000) -> list[CheckCase]:
    """The ``j -> 2q - 2j`` chain for ``sin(j pi/2q)``, odd ``3 !| q``:
    termination within ``ceil(log2 q) + 2`` steps and numeric agreement of
    every rewritten identity.  One case per q."""
    tol = _tol(p)
    out = []
    for q in range(5, max_q + 1, 2):
        if q % 3 == 0:
            continue
        table = _LogSinTable(p.working)
        limit = math.ceil(math.log2(q)) + 2
        worst_steps = 0
        worst = mpmath.mpf(0)
        for j in range((q + 1) // 2, q):
            ident, steps = twice_odd_chain(j, q)
            worst_steps = max(worst_steps, steps)
            if any(2 * k > q - 1 for (k, _), _c in ident.sines):
                worst = mpmath.inf
            worst = max(worst, abs(table.raw(ident) - table(j, 2 * q)))
        ok = worst_steps <= limit and worst < tol
        out.append(CheckCase("twice-odd", f"q={q}", ok,
                             f"steps={worst_steps}<={limit} err={format_residual(worst)}"))
    return out


def divisor_suite(p: PrecisionConfig = PrecisionConfig(),
                  moduli: tuple[int, ...] = (9, 25, 27, 49)) -> list[CheckCase]:
    """``log sin(b x pi/m) = (b-1) log 2 + sum_{u = x mod m/b} log sin(u pi/m)``
    for every divisor b and admissible x, plus the canonical reduction of
    every ``log sin(k pi/m)``."""
    tol = _tol(p)
    out = []
    for m in moduli:
        table = _LogSinTable(p.working)
        worst = mpmath.mpf(0)
        count = 0
        for b in range(2, m):
            if m % b:
                continue
            for x in range(1, (m - 1) // b + 1):
                if x % (m // b) == 0:
                    continue
                ident = divisor_expansion(b, x, m)
                worst = max(worst, abs(table.raw(ident) - table(b * x, m)))
                count += 1
        out.append(CheckCase("divisor", f"identity m={m}", worst < tol,
                             f"{count} identities, err={format_residual(worst)}"))
        worst = mpmath.mpf(0)
        canonical = True
        for k in range(1, m):
            v = reduce_log_sin(k, m)
            canonical &= all(a.kind != 3 or is_canonical_log_sin(a.k, a.m) for a in v)
            worst = max(worst, abs(eval_symbolic(v, p) - table(k, m)))
        out.append(CheckCase("divisor", f"reduce all k at m={m}", worst < tol and canonical,
                             f"err={format_residual(worst)}"))
    return out


def _unit_set(q: int) -> list[tuple[int, int]]:
    return [(k, q) for k in range(1, (q + 1) // 2) if math.gcd(k, q) == 1]


def independence_suite(p: PrecisionConfig = PrecisionConfig(200), max_coeff: int = 50,
                       moduli: tuple[int, ...] = (5, 7, 8, 11)) -> list[CheckCase]:
    """Heuristic: an integer-relation search finds no multiplicative relation
    among ``2 sin(k pi/q)``, ``1 <= k < q/2``, ``gcd(k, q) = 1``.

    A control set with a known relation must be detected."""
    if p.digits < 200:
        p = PrecisionConfig(200, p.guard)
    out = []
    for q in moduli:
        res = check_independence(_unit_set(q), max_coeff, p)
        out.append(CheckCase("independence", f"units q={q}", res.relation is None,
                             f"{res.verdict} (heuristic, max_coeff={max_coeff}, digits={p.digits})"))
    # 2 sin(pi/2) = 2 = (2 sin(pi/4))^2, so the relation is (1, -2)
    control = check_independence([(1, 2), (1, 4)], max_coeff, p)
    out.append(CheckCase("independence", "control 2sin(pi/2) = (2sin(pi/4))^2",
                         control.relation == (1, -2), f"found {control.relation}"))
    return out


SUITES: dict[str, Callable[..., list[CheckCase]]] = {
    "3.3": nested_radical_suite,
    "3.4": two_power_suite,
    "3.7": sine_product_suite,
    "3.8": twice_odd_suite,
    "3.9": divisor_suite,
    "independence": independence_suite,
}


def run_suites(selector: str, precision: PrecisionConfig = PrecisionConfig(),
               max_coeff: int = 50) -> list[CheckCase]:
    if selector == "all":
        names = list(SUITES)
    elif selector in SUITES:
        names = [selector]
    else:
        raise ValueError(f"unknown selector {selector!r}; choose from all, {', '.join(SUITES)}")
    cases = []
    for name in names:
        if name == "independence":
            cases += independence_suite(PrecisionConfig(max(precision.digits, 200), precision.guard),
                                        max_coeff)
        else:
            cases += SUITES[name](precision)
    return cases
