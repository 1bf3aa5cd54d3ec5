"""
Counting eigenvalues with a Wronskian
=====================================

The free Jacobi matrix of size 3 has eigenvalues -sqrt(2), 0, sqrt(2).  We
count how many lie in (-1, 1) without computing any of them: take the
Dirichlet solution that vanishes on the right at lambda0 = -1, the one that
vanishes on the left at lambda1 = 1, and count the signed sign flips of
their Wronskian.
"""

from relosc import Convention, make_coefficients, solve_minus, solve_plus, wronskian_path, interval_count

# a = -1 everywhere, b = 0 everywhere; N = 4 gives a 3x3 matrix
c = make_coefficients([-1] * 5, [0] * 4)

u_plus = solve_plus(c, -1)
u_minus = solve_minus(c, 1)
print("u+(-1):", [int(x) for x in u_plus.values])
print("u-(1): ", [int(x) for x in u_minus.values])

# %%
# The Wronskian changes sign once, between sites 1 and 2, and the mark there
# is +1.
w = wronskian_path(c, c, u_plus, u_minus)
print("W:    ", [int(x) for x in w.W])
print("marks:", w.marks)

# %%
# Summing marks over (0, 4] gives the number of eigenvalues in (-1, 1).
print("eigenvalues in (-1, 1):", interval_count(w, 0, 4, Convention.LEFT_OPEN))
