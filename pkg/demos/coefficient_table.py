"""Partial sums of the alpha_f series at several truncation depths.

Convergence in kmax is not monotone; the last column is within a few
hundredths of the exact coefficient.
"""
from falsetheta import coeffs_f, coefficient_table
from falsetheta.rademacher import TABLE_KMAX, TABLE_ROWS

grid = coefficient_table()
exact = coeffs_f(max(TABLE_ROWS) + 1).coeffs

header = "  n  exact " + "".join(f"{'kmax=' + str(k):>14}" for k in TABLE_KMAX)
print(header)
for n in TABLE_ROWS:
    cells = "".join(f"{grid[(n, k)]:>14.6f}" for k in TABLE_KMAX)
    print(f"{n:>3} {exact[n]:>6} {cells}")

# error of the deepest column
worst = max(abs(grid[(n, TABLE_KMAX[-1])] - exact[n]) for n in TABLE_ROWS)
print(f"\nmax |alpha_f - exact| at kmax={TABLE_KMAX[-1]}: {worst:.4f}")
