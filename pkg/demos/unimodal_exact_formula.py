"""Unimodal sequence counts: integer series vs the convergent Bessel-type series.

u(n) = alpha_g(n) - alpha_f(n). Both pieces are computed from their
truncated k-sums and compared with the exact integers.
"""
from falsetheta import RademacherConfig, auluck_main, u_rademacher, unimodal_count

cfg = RademacherConfig(kmax=20)

print(f"{'n':>4} {'exact':>14} {'alpha_g':>18} {'alpha_f':>16} {'g - f':>18}")
for n in (1, 4, 9, 20, 35, 50):
    res = u_rademacher(n, cfg)
    print(f"{n:>4} {unimodal_count(n):>14} {res.alpha_g:>18.6f} {res.alpha_f:>16.6f} {res.approx:>18.6f}")

# how far the leading asymptotic is from the truth; the gap shrinks like n^(-1/2)
print()
for n in (25, 100, 400, 1600):
    ratio = unimodal_count(n) / auluck_main(n)
    print(f"n={n:>5}  u(n)/main term = {ratio:.6f}")
