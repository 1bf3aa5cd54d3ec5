"""
Discrete Pruefer angles
=======================

Each solution gets an angle sequence whose integer part (in units of pi)
steps up by one exactly at a node.  The relative angle of two solutions
does the same at the weighted nodes of their Wronskian.  All integer data is
derived from exact signs; ``approx`` is a float for display only.
"""

import math
from fractions import Fraction

from relosc import delta_path, is_node, pruefer_of, random_coefficients, solve_minus, solve_plus, wronskian_path
from relosc.wronskian import mark_via_pruefer

c = random_coefficients(seed=3, N=8)
u = solve_minus(c, Fraction(1, 2))
p = pruefer_of(c, u)
for n, angle in enumerate(p.angles):
    node = "node" if n <= c.N and is_node(c, u, n) else ""
    print(f"n={n:<2} ceil(theta/pi)={angle.c:<2} class={angle.gamma_class.value:<10} theta~{angle.approx / math.pi:6.3f} pi  {node}")

# %%
# Marks of the Wronskian agree with jumps of the relative angle.
w = wronskian_path(c, c, solve_plus(c, -1), solve_minus(c, 2))
d = delta_path(w)
print("marks:        ", list(w.marks))
print("angle jumps:  ", [mark_via_pruefer(d, n) for n in range(c.N)])
