"""Modified Wronskian of two solutions and its weighted nodes.

For solutions ``u0`` of ``tau_0`` and ``u1`` of ``tau_1``

    W_n(u0, u1) = u0(n) a_1(n) u1(n+1) - u1(n) a_0(n) u0(n+1),   n = 0..N.

A weighted node at ``n`` is a sign change of ``W`` between ``n`` and ``n+1``
(or a step onto/off zero) classified as +1 or -1 by the sign of
``W u0(n+1) u1(n+1)``.  Interval counts add endpoint corrections when ``W``
vanishes there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import Coefficients
from .pruefer import DeltaPath, delta_of, pruefer_of
from .recurrence import SolutionPath
from .scalar import EXACT, ScaledFloat, banded_difference, sign, zero_band_exponent


class Convention(enum.Enum):
    CLOSED = "[m,n]"
    LEFT_OPEN = "(m,n]"
    RIGHT_OPEN = "[m,n)"
    OPEN = "(m,n)"

    def label(self, m="m", n="n") -> str:
        left = "(" if self in (Convention.LEFT_OPEN, Convention.OPEN) else "["
        right = ")" if self in (Convention.RIGHT_OPEN, Convention.OPEN) else "]"
        return f"{left}{m},{n}{right}"


@dataclass(frozen=True)
class WronskianPath:
    W: tuple
    signs: tuple
    marks: tuple
    u0: SolutionPath
    u1: SolutionPath
    c0: Coefficients
    c1: Coefficients
    uncertain: frozenset = frozenset()

    @property
    def N(self) -> int:
        return self.c0.N

    @property
    def sign_uncertain(self) -> bool:
        return bool(self.uncertain or self.u0.uncertain or self.u1.uncertain)


def _w_site(c0, c1, u0, u1, n, band):
    if c0.mode == EXACT:
        value = u0[n] * c1.a[n] * u1[n + 1] - u1[n] * c0.a[n] * u0[n + 1]
        return value, sign(value), False
    t1 = u0[n] * ScaledFloat(c1.a[n]) * u1[n + 1]
    t2 = u1[n] * ScaledFloat(c0.a[n]) * u0[n + 1]
    return banded_difference(t1, t2, band)


def _mark(ws, s0, s1, n) -> int:
    w, w1 = ws[n], ws[n + 1]
    uu = s0[n + 1] * s1[n + 1]
    crossing = w * w1 < 0
    if w1 * uu > 0 and (crossing or (w == 0 and w1 != 0)):
        return 1
    if w * uu > 0 and (crossing or (w != 0 and w1 == 0)):
        return -1
    return 0


def wronskian_path(c0: Coefficients, c1: Coefficients, u0: SolutionPath, u1: SolutionPath) -> WronskianPath:
    """Wronskian ``W_0..W_N`` of ``u0`` (solving ``tau_0``) and ``u1`` (solving ``tau_1``).

    The two solutions may belong to different spectral parameters; nothing is
    shifted here.  Marks are evaluated once at construction.
    """
    if c0.N != c1.N:
        raise ValueError(f"operators differ in size: N={c0.N} vs N={c1.N}")
    if c0.mode != c1.mode or u0.mode != c0.mode or u1.mode != c1.mode:
        raise ValueError("mixed exact/float inputs")
    N = c0.N
    band = zero_band_exponent()
    W, signs, uncertain = [], [], set()
    for n in range(N + 1):
        value, s, unsure = _w_site(c0, c1, u0, u1, n, band)
        W.append(value)
        signs.append(s)
        if unsure:
            uncertain.add(n)
    marks = tuple(_mark(signs, u0.signs, u1.signs, n) for n in range(N))
    return WronskianPath(tuple(W), tuple(signs), marks, u0, u1, c0, c1, frozenset(uncertain))


def weighted_node_mark(path: WronskianPath, n: int) -> int:
    if not 0 <= n < path.N:
        raise IndexError(f"site {n} outside 0..{path.N - 1}")
    return _mark(path.signs, path.u0.signs, path.u1.signs, n)


def interval_count(path: WronskianPath, m: int, n: int, convention: Convention) -> int:
    """Weighted node count between ``m`` and ``n`` in the given convention."""
    if not 0 <= m < n <= path.N:
        raise ValueError(f"need 0 <= m < n <= N, got m={m}, n={n}")
    total = sum(path.marks[m:n])
    if convention in (Convention.LEFT_OPEN, Convention.OPEN) and path.signs[m] == 0:
        total -= 1
    if convention in (Convention.RIGHT_OPEN, Convention.OPEN) and path.signs[n] == 0:
        total += 1
    return total


# ---------------------------------------------------------------------------
# Green's formula


def _greens_terms(c0, c1, u0, u1, n, m):
    if u0.z != u1.z:
        raise ValueError("Green's formula needs both solutions at the same spectral parameter")
    if not 1 <= n <= m <= c0.N:
        raise ValueError(f"need 1 <= n <= m <= N, got n={n}, m={m}")
    exact = c0.mode == EXACT
    lift = (lambda x: x) if exact else ScaledFloat.of

    def wron(j):
        return lift(u0[j]) * lift(c1.a[j]) * lift(u1[j + 1]) - lift(u1[j]) * lift(c0.a[j]) * lift(u0[j + 1])

    terms = [wron(m), -wron(n - 1)]
    for j in range(n - 1, m):
        da = lift(c0.a[j] - c1.a[j])
        terms.append(-(da * (lift(u0[j + 1]) * lift(u1[j]) + lift(u0[j]) * lift(u1[j + 1]))))
    for j in range(n, m + 1):
        db = lift(c0.b[j] - c1.b[j])
        terms.append(-(db * lift(u0[j]) * lift(u1[j])))
    return terms


def greens_residual(c0, c1, u0, u1, n: int, m: int):
    """``W_m - W_{n-1}`` minus the coefficient-difference sums; zero in exact arithmetic."""
    terms = _greens_terms(c0, c1, u0, u1, n, m)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total


def greens_relative_residual(c0, c1, u0, u1, n: int, m: int) -> float:
    """``|residual| / sum |terms|`` as a float (0 when every term vanishes)."""
    terms = _greens_terms(c0, c1, u0, u1, n, m)
    if c0.mode == EXACT:
        num = abs(sum(terms, Fraction(0)))
        den = sum((abs(t) for t in terms), Fraction(0))
        return 0.0 if den == 0 else float(num / den)
    total = ScaledFloat(0.0)
    scale = ScaledFloat(0.0)
    for t in terms:
        total = total + t
        scale = scale + abs(t)
    return 0.0 if scale.is_zero() else float(abs(total) / scale)


# ---------------------------------------------------------------------------
# Pruefer route


def delta_path(path: WronskianPath) -> DeltaPath:
    """Relative Pruefer angle of the pair, built from each solution's own angles."""
    p0 = pruefer_of(path.c0, path.u0)
    p1 = pruefer_of(path.c1, path.u1)
    return delta_of(p0, p1, path.signs)


def mark_via_pruefer(delta: DeltaPath, n: int) -> int:
    """``ceil(Delta(n+1)/pi) - ceil(Delta(n)/pi)``."""
    return delta.ceil_pi(n + 1) - delta.ceil_pi(n)


def interval_count_via_delta(delta: DeltaPath, m: int, n: int, convention: Convention) -> int:
    """Interval counts written through ceilings and floors of ``Delta``."""
    if convention is Convention.CLOSED:
        return delta.ceil_pi(n) - delta.ceil_pi(m)
    if convention is Convention.LEFT_OPEN:
        return delta.ceil_pi(n) - delta.floor_pi(m) - 1
    if convention is Convention.RIGHT_OPEN:
        return delta.floor_pi(n) - delta.ceil_pi(m) + 1
    return delta.floor_pi(n) - delta.floor_pi(m)
