"""Span dimensions for prime denominators against sum phi(q)/2 + 2.

Run:  python demos/03_dimension_table.py

W_J is spanned by H_1 and H_{a/q} for q in J, 1 <= a < q.  For odd primes
the dimension is sum_{q in J} (q-1)/2 + 2.  At J = {2} the formula is not
an integer and the table reports the direct rank instead.
"""

import time

from harmonic_span import dim_W_report

rows = [[2], [3], [5], [7], [11], [13], [3, 5], [5, 7], [3, 7], [5, 11], [3, 5, 7]]

print(f"{'J':<14}{'dim':>5}{'formula':>10}  match   time")
for J in rows:
    t0 = time.perf_counter()
    rep = dim_W_report(J)
    label = "{" + ",".join(map(str, J)) + "}"
    print(f"{label:<14}{rep.dim:>5}{str(rep.formula):>10}  {str(rep.match):<6} {time.perf_counter() - t0:5.1f}s")
