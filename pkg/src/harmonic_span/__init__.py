"""Exact span dimensions of harmonic numbers at rational arguments.

``H_{a/q}`` is rewritten, through Gauss's digamma theorem, as a linear
combination with cyclotomic coefficients of ``1``, ``pi``, ``log 2`` and a
fixed set of ``log sin(k pi/m)`` that are linearly independent over the
algebraic numbers.  Linear relations and dimensions then reduce to exact
linear algebra over a cyclotomic field.

>>> from harmonic_span import HarmonicIndex, harmonic_symbolic, dim_W
>>> harmonic_symbolic(HarmonicIndex(1, 2))
SymbolicValue((2)*Unit + (-2)*Log2)
>>> dim_W([5])
4
"""

from .cyclotomic import (
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
from .errors import (
    ConductorCapExceeded,
    ConductorError,
    CyclotomicDivisionByZero,
    HarmonicSpanError,
    InsufficientPrecision,
    InvariantViolation,
    PoleError,
    UnsupportedModulus,
)
from .gauss import (
    HarmonicIndex,
    harmonic_integer,
    harmonic_symbolic,
    recurrence_residual,
    reflection_residual,
    supported_denominator,
)
from .linalg import (
    ExactMatrix,
    RelationReport,
    SpanReport,
    determinant,
    dim_W,
    dim_W_report,
    galois_matrix,
    rank_kernel,
    span_dimension,
    upper_bound,
)
from .logbasis import (
    LOG2,
    PI,
    UNIT,
    LogAtom,
    SignSequence,
    SymbolicValue,
    expand_log_integer,
    is_zero,
    modulus_shape,
    nested_radical_signs,
    reduce_log_sin,
    symbolic_arith,
)
from .numeric import (
    IndependenceCheck,
    PrecisionConfig,
    check_independence,
    eval_symbolic,
    harmonic_numeric,
    integer_relation,
    verify_relation,
)

__version__ = "0.1.0"
