"""Finding the linear relations among H_{a/8}.

Run:  python demos/02_relations.py

The eight numbers H_{1/8}, ..., H_{8/8} sit in a space of dimension only
four.  Exact elimination over Q(zeta_8) produces the kernel, and each
kernel vector is re-checked with the series evaluator at 100 digits.
"""

import mpmath

from harmonic_span import HarmonicIndex, PrecisionConfig, span_dimension, upper_bound

indices = [HarmonicIndex(a, 8) for a in range(1, 9)]
report = span_dimension(indices, precision=PrecisionConfig(100))

print(f"{len(report.indices)} distinct numbers, span dimension {report.dim}, "
      f"upper bound {upper_bound([2, 4, 8])}")
print("atoms used:", ", ".join(str(a) for a in report.atoms))

for rel in report.relations:
    terms = [f"({c}) H_{{{i}}}" for i, c in zip(rel.indices, rel.coefficients) if not c.is_zero()]
    print("\n  0 = " + "\n    + ".join(terms))
    print(f"  residual {mpmath.nstr(rel.residual, 3)}, exact: {rel.symbolic_sum().is_zero()}")
