"""
Relative oscillation for two different operators
================================================

The Wronskian of solutions of two *different* equations counts the
difference of their eigenvalue counts.  Every boundary convention comes with
its own spectral difference; ``verify_main`` evaluates all eight pairings
and compares them with an exact Sturm count.
"""

from fractions import Fraction

from relosc import random_coefficients, verify_main

c0 = random_coefficients(seed=1, N=9, a_range=(-4, "-1/2"), b_range=(-3, 3))
c1 = random_coefficients(seed=2, N=9, a_range=(-2, "-1/4"), b_range=(-1, 5))

lam0, lam1 = Fraction(-1), Fraction(9, 2)
for r in verify_main(c0, c1, lam0, lam1):
    status = "ok" if r.agree else "MISMATCH"
    print(f"{r.label:<18} {r.variant.spectral_label():<40} {r.wronskian_count:>3} {r.spectral_count:>3}  {status}")

# %%
# The count depends only on the interior coefficients: the boundary slots
# a(0), a(N-1), a(N), b(N) can be anything (with a < 0).
moved = c0.with_extension(a0="-7", aN="-1/3", bN=11)
print([r.wronskian_count for r in verify_main(moved, c1, lam0, lam1)])
