"""
Large instances in floating point
=================================

Solutions of the recurrence grow geometrically and overflow doubles after a
few hundred sites.  Float mode stores every value as mantissa and unbounded
exponent, and flags any sign decision that falls inside a relative zero band
instead of guessing.
"""

import time

from relosc import count_below, matrix_of, random_coefficients, solve_plus
from relosc.relative import count_in_interval_from_path, interval_path

c = random_coefficients(seed=42, N=500, a_range=(-8, -0.0625), b_range=(-8, 8), mode="float")

start = time.perf_counter()
path = interval_path(c, -1000.0, 1.5)
count = count_in_interval_from_path(path, False, False)
elapsed = time.perf_counter() - start
sturm = count_below(matrix_of(c), 1.5) - count_below(matrix_of(c), -1000.0, include_lambda=True)
print(f"eigenvalues in (-1000, 1.5): {count} by nodes, {sturm} by Sturm count, {elapsed * 1000:.1f} ms")

# %%
# The solution at -1000 reaches magnitudes far beyond the double range.
u = solve_plus(c, -1000.0)
print("largest |u(n)| ~ 2 **", max(x.e for x in u.values))
print("sign decisions inside the zero band:", len(path.uncertain | path.u0.uncertain | path.u1.uncertain))
