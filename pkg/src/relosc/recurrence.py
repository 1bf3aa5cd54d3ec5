"""Solutions of the Jacobi difference equation and their nodes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffs import Coefficients
from .scalar import (
    EXACT,
    ScaledFloat,
    banded_difference,
    sign,
    to_scalar,
    zero_band_exponent,
)

MINUS = "minus"
PLUS = "plus"
CUSTOM = "custom"


@dataclass(frozen=True)
class SolutionPath:
    """Values ``u(0..N+1)`` of a solution of ``tau u = z u``.

    ``signs[n]`` is the sign used by every counting routine.  In exact mode it
    is the true sign; in float mode a value inside the relative zero band is
    given sign 0 and its index is recorded in ``uncertain``.
    """

    z: object
    values: tuple
    signs: tuple
    bc_tag: str
    coeffs: Coefficients
    uncertain: frozenset = frozenset()

    @property
    def N(self) -> int:
        return self.coeffs.N

    @property
    def mode(self) -> str:
        return self.coeffs.mode

    @property
    def sign_uncertain(self) -> bool:
        return bool(self.uncertain)

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def scaled(self, c) -> "SolutionPath":
        """The solution ``c * u`` for a nonzero constant ``c``."""
        c = to_scalar(c, self.mode)
        s = sign(c)
        if s == 0:
            raise ValueError("scaling by zero gives the trivial solution")
        if self.mode == EXACT:
            values = tuple(c * x for x in self.values)
        else:
            cs = ScaledFloat.of(c)
            values = tuple(cs * x for x in self.values)
        return SolutionPath(
            self.z, values, tuple(s * t for t in self.signs), self.bc_tag, self.coeffs, self.uncertain
        )


def _forward(coeffs, z, n, u_prev, u_cur, band):
    a, b = coeffs.a, coeffs.b
    if coeffs.mode == EXACT:
        return ((z - b[n]) * u_cur - a[n - 1] * u_prev) / a[n], None
    t1 = ScaledFloat(z - b[n]) * u_cur
    t2 = ScaledFloat(a[n - 1]) * u_prev
    value, s, unsure = banded_difference(t1, t2, band)
    return value / ScaledFloat(a[n]), (s * sign(a[n]), unsure)


def _backward(coeffs, z, n, u_cur, u_next, band):
    a, b = coeffs.a, coeffs.b
    if coeffs.mode == EXACT:
        return ((z - b[n]) * u_cur - a[n] * u_next) / a[n - 1], None
    t1 = ScaledFloat(z - b[n]) * u_cur
    t2 = ScaledFloat(a[n]) * u_next
    value, s, unsure = banded_difference(t1, t2, band)
    return value / ScaledFloat(a[n - 1]), (s * sign(a[n - 1]), unsure)


def step_forward(coeffs: Coefficients, z, n: int, u_prev, u_cur):
    """``u(n+1)`` from ``u(n-1), u(n)`` so that the equation holds at ``n``."""
    if not 1 <= n <= coeffs.N:
        raise IndexError(f"site {n} outside 1..{coeffs.N}")
    if sign(u_prev) == 0 and sign(u_cur) == 0:
        raise ValueError("(u(n-1), u(n)) = (0, 0) is the trivial solution")
    z = to_scalar(z, coeffs.mode)
    if coeffs.mode != EXACT:
        u_prev, u_cur = ScaledFloat.of(u_prev), ScaledFloat.of(u_cur)
    value, _ = _forward(coeffs, z, n, u_prev, u_cur, zero_band_exponent())
    return value


def step_backward(coeffs: Coefficients, z, n: int, u_cur, u_next):
    """``u(n-1)`` from ``u(n), u(n+1)`` so that the equation holds at ``n``."""
    if not 1 <= n <= coeffs.N:
        raise IndexError(f"site {n} outside 1..{coeffs.N}")
    if sign(u_cur) == 0 and sign(u_next) == 0:
        raise ValueError("(u(n), u(n+1)) = (0, 0) is the trivial solution")
    z = to_scalar(z, coeffs.mode)
    if coeffs.mode != EXACT:
        u_cur, u_next = ScaledFloat.of(u_cur), ScaledFloat.of(u_next)
    value, _ = _backward(coeffs, z, n, u_cur, u_next, zero_band_exponent())
    return value


def _initial(mode, x):
    if mode == EXACT:
        return Fraction(x)
    return ScaledFloat.of(x)


def _collect(coeffs, z, values, decisions, tag):
    signs = []
    uncertain = set()
    for n, (x, d) in enumerate(zip(values, decisions)):
        if d is None:
            signs.append(sign(x))
        else:
            s, unsure = d
            signs.append(s)
            if unsure:
                uncertain.add(n)
    return SolutionPath(z, tuple(values), tuple(signs), tag, coeffs, frozenset(uncertain))


def solve_custom(coeffs: Coefficients, z, u0, u1, tag: str = CUSTOM) -> SolutionPath:
    """Solution with prescribed ``u(0), u(1)``, propagated up to ``u(N+1)``."""
    mode = coeffs.mode
    z = to_scalar(z, mode)
    u = [_initial(mode, u0), _initial(mode, u1)]
    if sign(u[0]) == 0 and sign(u[1]) == 0:
        raise ValueError("initial pair (0, 0) gives the trivial solution")
    decisions = [None, None]
    band = zero_band_exponent()
    for n in range(1, coeffs.N + 1):
        value, d = _forward(coeffs, z, n, u[n - 1], u[n], band)
        u.append(value)
        decisions.append(d)
    return _collect(coeffs, z, u, decisions, tag)


def solve_minus(coeffs: Coefficients, z) -> SolutionPath:
    """The left Dirichlet solution with ``u(0) = 0, u(1) = 1``."""
    return solve_custom(coeffs, z, 0, 1, tag=MINUS)


def solve_plus(coeffs: Coefficients, z) -> SolutionPath:
    """The right Dirichlet solution with ``u(N) = 0, u(N+1) = 1``."""
    mode = coeffs.mode
    z = to_scalar(z, mode)
    N = coeffs.N
    u = [None] * (N + 2)
    decisions = [None] * (N + 2)
    u[N] = _initial(mode, 0)
    u[N + 1] = _initial(mode, 1)
    band = zero_band_exponent()
    for n in range(N, 0, -1):
        u[n - 1], decisions[n - 1] = _backward(coeffs, z, n, u[n], u[n + 1], band)
    return _collect(coeffs, z, u, decisions, PLUS)


def solve(coeffs: Coefficients, z, bc: str) -> SolutionPath:
    if bc == MINUS:
        return solve_minus(coeffs, z)
    if bc == PLUS:
        return solve_plus(coeffs, z)
    raise ValueError(f"unknown boundary condition {bc!r}")


def is_node(coeffs: Coefficients, u: SolutionPath, n: int) -> bool:
    """``u(n) = 0`` or ``a(n) u(n) u(n+1) > 0``."""
    if not 0 <= n <= coeffs.N:
        raise IndexError(f"site {n} outside 0..{coeffs.N}")
    s = u.signs
    return s[n] == 0 or sign(coeffs.a[n]) * s[n] * s[n + 1] > 0


def count_nodes(u: SolutionPath, m: int, l: int) -> int:
    """Number of nodes strictly between ``m`` and ``l``.

    The left endpoint ``m`` also counts when it is a node and ``u(m) != 0``;
    the right endpoint never counts.
    """
    if not 0 <= m < l <= u.N + 1:
        raise ValueError(f"need 0 <= m < l <= N+1, got m={m}, l={l}")
    coeffs = u.coeffs
    total = 0
    for n in range(m + 1, l):
        if is_node(coeffs, u, n):
            total += 1
    if u.signs[m] != 0 and is_node(coeffs, u, m):
        total += 1
    return total


def residuals(coeffs: Coefficients, u: SolutionPath) -> list:
    """``a(n)u(n+1) + a(n-1)u(n-1) + (b(n) - z)u(n)`` for ``n = 1..N``.

    Exact mode gives exact zeros; float mode returns the relative residual
    (residual over the sum of term magnitudes) as plain floats.
    """
    a, b, z = coeffs.a, coeffs.b, u.z
    out = []
    for n in range(1, coeffs.N + 1):
        if coeffs.mode == EXACT:
            out.append(a[n] * u[n + 1] + a[n - 1] * u[n - 1] + (b[n] - z) * u[n])
        else:
            terms = [
                ScaledFloat(a[n]) * u[n + 1],
                ScaledFloat(a[n - 1]) * u[n - 1],
                ScaledFloat(b[n] - z) * u[n],
            ]
            total = terms[0] + terms[1] + terms[2]
            scale = abs(terms[0]) + abs(terms[1]) + abs(terms[2])
            out.append(0.0 if scale.is_zero() else float(abs(total) / scale))
    return out
