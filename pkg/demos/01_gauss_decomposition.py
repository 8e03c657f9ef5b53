"""Decomposing H_{a/q} exactly, then checking it against a series.

Run:  python demos/01_gauss_decomposition.py

Harmonic numbers at rationals look transcendental and messy, but each one
is a short linear combination of 1, pi, log 2 and a few log sin(k pi/m)
with coefficients in a cyclotomic field.  Here we print a few and confirm
the symbolic value numerically with an evaluator that never sees the
closed form.
"""

import mpmath

from harmonic_span import (
    HarmonicIndex,
    PrecisionConfig,
    eval_symbolic,
    harmonic_numeric,
    harmonic_symbolic,
)

p = PrecisionConfig(60)

print("H_{1/2} is the classic 2 - 2 log 2:")
print("   ", harmonic_symbolic(HarmonicIndex(1, 2)))

# Denominators 3, 4 and 5 bring in sqrt(3), sqrt(2) and sqrt(5) through cot(pi a/q).
for a, q in [(1, 3), (1, 4), (2, 5), (7, 5), (-1, 4)]:
    idx = HarmonicIndex(a, q)
    value = harmonic_symbolic(idx)
    with mpmath.workdps(p.working):
        err = abs(eval_symbolic(value, p) - harmonic_numeric(idx, p))
    print(f"\nH_{{{idx}}} =")
    for atom, coeff in value.items():
        print(f"    ({coeff}) * {atom}")
    print(f"  series agrees to {mpmath.nstr(err, 2)}")

# Numerators outside (0, q) are handled by H_r = H_{r-1} + 1/r, so 7/5
# differs from 2/5 by an exact rational.
diff = harmonic_symbolic(HarmonicIndex(7, 5)) - harmonic_symbolic(HarmonicIndex(2, 5))
print("\nH_{7/5} - H_{2/5} =", diff, "  (= 5/7, exactly)")
