"""
Interval counts against a full eigensolver
==========================================

For a random rational Jacobi matrix the Wronskian node count for each kind of
interval is compared with the eigenvalues computed by LAPACK.
"""

from fractions import Fraction

import numpy as np

from relosc import count_in_interval, eig_all, matrix_of, random_coefficients

c = random_coefficients(seed=7, N=12, a_range=(-3, -1), b_range=(-2, 2))
eigs = np.array(eig_all(matrix_of(c)).eigenvalues)
print("spectrum:", np.round(eigs, 4))

# %%
# Put the left end exactly on a rational point and sweep the right end.
lo = Fraction(-1)
for hi in (Fraction(0), Fraction(1, 2), Fraction(2), Fraction(6)):
    by_nodes = count_in_interval(c, lo, hi)
    by_eigs = int(np.sum((eigs > lo) & (eigs < hi)))
    print(f"({lo}, {hi}):  nodes {by_nodes}   eigensolver {by_eigs}")

# %%
# Closed ends only matter when an endpoint is an eigenvalue.  The 2x2 matrix
# [[3, -2], [-2, 0]] has spectrum {-1, 4}.
from relosc import make_coefficients

small = make_coefficients([-2], [3, 0])
for left_closed in (False, True):
    for right_closed in (False, True):
        n = count_in_interval(small, -1, 4, left_closed, right_closed)
        print(("[" if left_closed else "(") + "-1, 4" + ("]" if right_closed else ")"), "->", n)
