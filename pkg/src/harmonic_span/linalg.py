"""Exact linear algebra over a cyclotomic field, and span dimensions of
sets of harmonic numbers.

The span of ``{H_r : r in S}`` over the algebraic numbers equals the rank
of the matrix whose columns are the canonical coordinates of each ``H_r``:
the canonical atoms are linearly independent, so a linear relation among
the ``H_r`` holds iff it holds coordinate-wise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

import mpmath
from sympy import factorint, isprime

from .cyclotomic import (
    CyclotomicNumber,
    active_conductor_cap,
    conductor_cap,
    cos_exact,
    euler_phi,
    numeric_embed,
)
from .errors import ConductorCapExceeded, InvariantViolation, UnsupportedModulus
from .gauss import HarmonicIndex, harmonic_symbolic
from .logbasis import LogAtom, SymbolicValue
from .numeric import PrecisionConfig, format_residual, harmonic_numeric

__all__ = [
    "ExactMatrix",
    "rank_kernel",
    "determinant",
    "RelationReport",
    "SpanReport",
    "span_dimension",
    "DimReport",
    "dim_W",
    "dim_W_report",
    "upper_bound",
    "galois_matrix",
]

Vector = tuple[CyclotomicNumber, ...]


class ExactMatrix:
    """Dense immutable matrix with every entry at one conductor."""

    __slots__ = ("rows", "cols", "conductor", "_grid")

    def __init__(self, grid: Sequence[Sequence[object]], cols: int | None = None):
        grid = [[e if isinstance(e, CyclotomicNumber) else CyclotomicNumber.rational(Fraction(e))
                 for e in row] for row in grid]
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else (cols or 0)
        if any(len(row) != self.cols for row in grid):
            raise ValueError("ragged matrix")
        n = 1
        for row in grid:
            for e in row:
                n = lcm(n, e.conductor)
        cap = active_conductor_cap()
        if cap is not None and n > cap:
            raise ConductorCapExceeded(n, cap)
        self.conductor = n
        self._grid = tuple(tuple(e.embed(n) for e in row) for row in grid)

    def __getitem__(self, ij: tuple[int, int]) -> CyclotomicNumber:
        i, j = ij
        return self._grid[i][j]

    def row(self, i: int) -> Vector:
        return self._grid[i]

    def to_lists(self) -> list[list[CyclotomicNumber]]:
        return [list(r) for r in self._grid]

    def apply(self, v: Sequence[CyclotomicNumber]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for row in self._grid:
            acc = CyclotomicNumber.zero(self.conductor)
            for a, b in zip(row, v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, conductor={self.conductor})"


def _rref(grid: list[list[CyclotomicNumber]]) -> tuple[list[list[CyclotomicNumber]], list[int]]:
    """Reduced row echelon form.  The pivot is the first nonzero entry in
    its column, and each pivot row is scaled by one inverse, so the only
    divisions are one per pivot."""
    R = [list(r) for r in grid]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not R[i][c].is_zero()), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = R[r][c].inverse()
        R[r] = [x if x.is_zero() else x * inv for x in R[r]]
        support = [j for j in range(c, ncols) if not R[r][j].is_zero()]
        for i in range(nrows):
            f = R[i][c]
            if i == r or f.is_zero():
                continue
            row = R[i]
            for j in support:
                row[j] = row[j] - f * R[r][j]
        pivots.append(c)
        r += 1
    return R, pivots


def rank_kernel(M: ExactMatrix) -> tuple[int, list[Vector]]:
    """Exact rank and a kernel basis.

    Each kernel vector is scaled so its first nonzero coordinate is 1 and
    is checked by multiplying back.
    """
    n = M.cols
    R, pivots = _rref(M.to_lists())
    zero = CyclotomicNumber.zero(M.conductor)
    one = CyclotomicNumber.one(M.conductor)
    kernel: list[Vector] = []
    pivot_set = set(pivots)
    for f in range(n):
        if f in pivot_set:
            continue
        v = [zero] * n
        v[f] = one
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        lead = next(x for x in v if not x.is_zero())
        if lead != one:
            inv = lead.inverse()
            v = [x * inv for x in v]
        vec = tuple(v)
        if any(not x.is_zero() for x in M.apply(vec)):
            raise InvariantViolation("kernel vector does not annihilate the matrix")
        kernel.append(vec)
    return len(pivots), kernel


def determinant(M: ExactMatrix) -> CyclotomicNumber:
    """Bareiss fraction-free determinant."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return CyclotomicNumber.one(M.conductor)
    A = M.to_lists()
    sign = 1
    prev = CyclotomicNumber.one(M.conductor)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return CyclotomicNumber.zero(M.conductor)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        inv_prev = prev.inverse()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) * inv_prev
        prev = A[k][k]
    return A[n - 1][n - 1] if sign > 0 else -A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# relations among harmonic numbers

@dataclass
class RelationReport:
    """A certified linear relation ``sum c_i H_{r_i} = 0``."""

    indices: tuple[HarmonicIndex, ...]
    coefficients: tuple[CyclotomicNumber, ...]
    residual: mpmath.mpf
    digits: int

    def __post_init__(self) -> None:
        if len(self.indices) != len(self.coefficients):
            raise ValueError("indices and coefficients differ in length")
        if all(c.is_zero() for c in self.coefficients):
            raise ValueError("a relation needs a nonzero coefficient")

    def symbolic_sum(self) -> SymbolicValue:
        out = SymbolicValue()
        for idx, c in zip(self.indices, self.coefficients):
            if not c.is_zero():
                out = out + harmonic_symbolic(idx).scale(c)
        return out

    def is_certified(self) -> bool:
        """Exact zero of the symbolic sum and a small numeric residual."""
        threshold = mpmath.mpf(10) ** (-(self.digits // 2))
        return self.symbolic_sum().is_zero() and self.residual < threshold

    def to_json(self) -> dict:
        return {
            "indices": [str(i) for i in self.indices],
            "coefficients": [c.to_json() for c in self.coefficients],
            "residual": format_residual(self.residual),
            "digits": self.digits,
        }


@dataclass
class SpanReport:
    """Result of :func:`span_dimension`.  Unpacks as ``(dim, relations)``."""

    dim: int
    relations: list[RelationReport]
    indices: tuple[HarmonicIndex, ...]
    atoms: tuple[LogAtom, ...]
    conductor: int
    dropped_duplicates: list[str] = field(default_factory=list)

    def __iter__(self) -> Iterator:
        yield self.dim
        yield self.relations

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "indices": [str(i) for i in self.indices],
            "atoms": [repr(a) for a in self.atoms],
            "conductor": self.conductor,
            "dropped_duplicates": self.dropped_duplicates,
            "relations": [r.to_json() for r in self.relations],
        }


def _dedupe(indices: Iterable[HarmonicIndex | str]) -> tuple[list[HarmonicIndex], list[str]]:
    seen: dict[HarmonicIndex, None] = {}
    dropped = []
    for x in indices:
        idx = HarmonicIndex.parse(x) if isinstance(x, str) else x
        if idx in seen:
            dropped.append(str(idx))
        else:
            seen[idx] = None
    return list(seen), dropped


def _default_cap(indices: Sequence[HarmonicIndex]) -> int:
    n = 1
    for idx in indices:
        n = lcm(n, idx.q)
    return 4 * n


def span_dimension(indices: Iterable[HarmonicIndex | str], *,
                   precision: PrecisionConfig = PrecisionConfig(),
                   cap: int | None = None) -> SpanReport:
    """Dimension over the algebraic numbers of the span of the given H_r.

    Duplicate indices (after lowest-terms normalization) are dropped and
    listed in the report.  Each kernel vector becomes a
    :class:`RelationReport` with a residual from the series oracle.
    The conductor cap defaults to 4 times the lcm of the denominators.
    """
    idx_list, dropped = _dedupe(indices)
    if not idx_list:
        raise ValueError("need at least one index")
    if cap is None:
        cap = _default_cap(idx_list)
    with conductor_cap(cap):
        values = [harmonic_symbolic(i) for i in idx_list]
        atoms = sorted({a for v in values for a in v})
        grid = [[v.coefficient(a) for v in values] for a in atoms]
        M = ExactMatrix(grid, cols=len(idx_list))
        rank, kernel = rank_kernel(M) if atoms else (0, [])
    if not atoms:
        # every H_r is zero, which happens only for H_0
        kernel = [tuple(CyclotomicNumber.one() if j == i else CyclotomicNumber.zero()
                        for j in range(len(idx_list))) for i in range(len(idx_list))]
    numeric_cache: dict[HarmonicIndex, mpmath.mpf] = {}
    relations = []
    for vec in kernel:
        with mpmath.workdps(precision.working):
            acc = mpmath.mpc(0)
            for idx, c in zip(idx_list, vec):
                if c.is_zero():
                    continue
                if idx not in numeric_cache:
                    numeric_cache[idx] = harmonic_numeric(idx, precision)
                acc += numeric_embed(c, precision.working) * numeric_cache[idx]
            residual = abs(acc)
        relations.append(RelationReport(tuple(idx_list), vec, residual, precision.digits))
    return SpanReport(rank, relations, tuple(idx_list), tuple(atoms), M.conductor if atoms else 1,
                      dropped)


# ---------------------------------------------------------------------------
# dimension formulas

@dataclass
class DimReport:
    primes: tuple[int, ...]
    dim: int
    formula: Fraction
    match: bool | str
    span: SpanReport
    notes: list[str] = field(default_factory=list)

    def __int__(self) -> int:
        return self.dim

    def to_json(self) -> dict:
        formula: int | str = int(self.formula) if self.formula.denominator == 1 else str(self.formula)
        return {
            "primes": list(self.primes),
            "dim": self.dim,
            "formula": formula,
            "match": self.match,
            "notes": self.notes,
            "relations": [r.to_json() for r in self.span.relations],
        }


def dim_W_report(J: Iterable[int], precision: PrecisionConfig = PrecisionConfig()) -> DimReport:
    """Span dimension of ``{H_1} u {H_{a/q} : 1 <= a < q, q in J}``
    compared with ``sum phi(q)/2 + 2``."""
    primes = tuple(sorted(set(int(q) for q in J)))
    if not primes:
        raise ValueError("J must be non-empty")
    bad = [q for q in primes if not isprime(q)]
    if bad:
        raise ValueError(f"not prime: {bad}")
    indices = [HarmonicIndex(1, 1)] + [HarmonicIndex(a, q) for q in primes for a in range(1, q)]
    span = span_dimension(indices, precision=precision)
    formula = sum((Fraction(euler_phi(q), 2) for q in primes), Fraction(2))
    notes = []
    match: bool | str
    if 2 in primes:
        match = "n/a"
        notes.append("phi(2)/2 + 2 is not an integer; the dimension is the direct rank")
    else:
        match = span.dim == formula
    if 3 in primes:
        notes.append("3 in J: the bound sum phi(q)/2 + 3 for 2q-type moduli does not cover this set")
    return DimReport(primes, span.dim, formula, match, span, notes)


def dim_W(J: Iterable[int], precision: PrecisionConfig = PrecisionConfig()) -> int:
    """Exact dimension of W_J; see :func:`dim_W_report` for the comparison."""
    return dim_W_report(J, precision).dim


def upper_bound(moduli: Iterable[int]) -> int:
    """Upper bound on the span dimension of ``{H_{a/m} : 1 <= a <= m}``
    over the given moduli.

    * only powers of two: ``phi(phi(2^n)) + 2`` for the largest n;
    * moduli ``p^t`` or ``2 p^t`` (and possibly 2): ``sum_p phi(p^t)/2 + 3``
      with the largest exponent per odd prime, since ``H_{a/p^s}`` with
      ``s < t`` already occurs at ``p^t``.
    """
    moduli = [int(m) for m in moduli if int(m) != 1]
    if not moduli:
        return 1
    top: dict[int, int] = {}
    two_powers = []
    twice = False
    for m in moduli:
        if m < 1:
            raise ValueError("moduli must be positive")
        f = {int(p): int(e) for p, e in factorint(m).items()}
        e2 = f.pop(2, 0)
        if not f:
            two_powers.append(e2)
            continue
        if len(f) > 1 or e2 > 1:
            raise UnsupportedModulus(m, "expected p^t or 2 p^t")
        (p, t), = f.items()
        if e2 == 1:
            twice = True
        top[p] = max(top.get(p, 0), t)
    if not top:
        n = max(two_powers)
        return euler_phi(euler_phi(2 ** n)) + 2
    if any(e > 1 for e in two_powers):
        raise UnsupportedModulus(2 ** max(two_powers), "powers of two mixed with odd moduli")
    if twice and 3 in top:
        raise UnsupportedModulus(2 * 3 ** top[3], "2 * 3^t is excluded")
    return sum(euler_phi(p ** t) // 2 for p, t in top.items()) + 3


def galois_matrix(q: int, shifted: bool = False) -> ExactMatrix:
    """The ``(q-1)/2`` square matrix ``cos(2 pi i j/q)``, or
    ``-1 + cos(2 pi i j/q)`` when shifted, for an odd prime q."""
    if q < 3 or not isprime(q):
        raise ValueError("q must be an odd prime")
    alpha = (q - 1) // 2
    shift = -1 if shifted else 0
    return ExactMatrix([[cos_exact(1, i * j, q) + shift for j in range(1, alpha + 1)]
                        for i in range(1, alpha + 1)])
