"""Discrete Pruefer angles with exact ceiling/floor bookkeeping.

For a solution ``u`` the angle ``theta(n)`` is defined up to the polar form

    u(n) = rho(n) sin theta(n),    -a(n) u(n+1) = rho(n) cos theta(n)

with ``rho > 0``.  Writing ``theta = (c - 1) pi + gamma`` with
``gamma in (0, pi]`` makes ``c = ceil(theta / pi)``.  The direction of the
vector ``(sin, cos)`` is fixed by two exact signs, which pins down the parity
of ``c - 1`` and the quadrant class of ``gamma``; the normalization
``ceil(theta(n)/pi) <= ceil(theta(n+1)/pi) <= ceil(theta(n)/pi) + 1`` then
leaves exactly one admissible ``c`` at each step.  No trigonometry is used
for any integer decision; ``approx`` is diagnostic only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .coeffs import Coefficients
from .recurrence import PLUS, SolutionPath
from .scalar import EXACT, ScaledFloat, SignUncertain, sign


class InconsistentSigns(ArithmeticError):
    """A supplied Wronskian sign contradicts the angle classes."""


class GammaClass(enum.Enum):
    """Where ``gamma in (0, pi]`` lies; the classes are ordered as sets."""

    LOW = "(0,pi/2)"
    HALF = "pi/2"
    HIGH = "(pi/2,pi)"
    PI = "pi"

    @property
    def rank(self) -> int:
        return _RANK[self]

    @property
    def is_point(self) -> bool:
        return self in (GammaClass.HALF, GammaClass.PI)


_RANK = {GammaClass.LOW: 0, GammaClass.HALF: 1, GammaClass.HIGH: 2, GammaClass.PI: 3}


@dataclass(frozen=True)
class PrueferAngle:
    c: int
    gamma_class: GammaClass
    approx: float

    @property
    def ceil_pi(self) -> int:
        return self.c

    @property
    def floor_pi(self) -> int:
        return self.c if self.gamma_class is GammaClass.PI else self.c - 1

    @property
    def k(self) -> int:
        return self.c - 1


@dataclass(frozen=True)
class PrueferPath:
    angles: tuple
    solution: SolutionPath

    def __getitem__(self, n) -> PrueferAngle:
        return self.angles[n]

    def __len__(self):
        return len(self.angles)


def direction(su: int, sw: int):
    """Parity of ``k`` and class of ``gamma`` from ``sign u(n)`` and ``sign(-a(n)u(n+1))``.

    Returns ``(parity, GammaClass)`` where parity is ``k mod 2``.
    """
    if su == 0:
        if sw == 0:
            raise ValueError("(u(n), u(n+1)) = (0, 0)")
        # cos theta = (-1)**k cos(pi) = -(-1)**k
        return (0 if sw < 0 else 1), GammaClass.PI
    parity = 0 if su > 0 else 1
    cg = sw if parity == 0 else -sw
    if cg > 0:
        return parity, GammaClass.LOW
    if cg == 0:
        return parity, GammaClass.HALF
    return parity, GammaClass.HIGH


def _approx(k, su_val, sw_val):
    # sin(gamma), cos(gamma) up to the common positive factor rho
    flip = -1 if k % 2 else 1
    s = ScaledFloat.of(su_val) * flip
    w = ScaledFloat.of(sw_val) * flip
    if s.is_zero():
        gamma = math.pi
    else:
        gamma = math.atan2(1.0, float(w / s))
    return k * math.pi + gamma


def _w_value(coeffs: Coefficients, u: SolutionPath, n: int):
    """``-a(n) u(n+1)`` and its sign; ``n = N+1`` uses a virtual extra site."""
    N = coeffs.N
    if n <= N:
        a = coeffs.a[n]
        val = -a * u[n + 1] if coeffs.mode == EXACT else ScaledFloat(-a) * u[n + 1]
        return val, -sign(a) * u.signs[n + 1]
    # one virtual step with a(N+1) = -1, b(N+1) = 0; ceil(theta(N+1)/pi) does
    # not depend on this choice, only the gamma class at N+1 does
    z = u.z
    aN = coeffs.a[N]
    if coeffs.mode == EXACT:
        nxt = -(z * u[N + 1] - aN * u[N])
        return nxt, sign(nxt)
    nxt = -(ScaledFloat(z) * u[N + 1] - ScaledFloat(aN) * u[N])
    return nxt, nxt.sign()


def _uncertain_check(u: SolutionPath, n: int):
    if u.uncertain and (n in u.uncertain or (n + 1) in u.uncertain):
        raise SignUncertain(f"Pruefer class at site {n} depends on a sign inside the zero band")


def _angle(coeffs, u, n, c_options):
    _uncertain_check(u, n)
    w_val, sw = _w_value(coeffs, u, n)
    parity, cls = direction(u.signs[n], sw)
    for c in c_options:
        if (c - 1) % 2 == parity:
            return PrueferAngle(c, cls, _approx(c - 1, u[n], w_val))
    raise AssertionError("no admissible ceiling")  # pragma: no cover


def pruefer_of(coeffs: Coefficients, u: SolutionPath) -> PrueferPath:
    """Normalized Pruefer angles of ``u`` on ``0..N+1``.

    Plus-solutions are anchored at ``N``; minus and custom solutions at 0.
    The anchor angle lies in ``(-pi, pi]``, i.e. ``c`` is 0 or 1.
    """
    N = coeffs.N
    angles = [None] * (N + 2)
    base = N if u.bc_tag == PLUS else 0
    angles[base] = _angle(coeffs, u, base, (0, 1))
    for n in range(base + 1, N + 2):
        c = angles[n - 1].c
        angles[n] = _angle(coeffs, u, n, (c, c + 1))
    for n in range(base - 1, -1, -1):
        c = angles[n + 1].c
        angles[n] = _angle(coeffs, u, n, (c - 1, c))
    return PrueferPath(tuple(angles), u)


def ceil_pi(path: PrueferPath, n: int) -> int:
    return path.angles[n].ceil_pi


def floor_pi(path: PrueferPath, n: int) -> int:
    return path.angles[n].floor_pi


def count_nodes_pruefer(path: PrueferPath, m: int, n: int) -> int:
    """``ceil(theta(n)/pi) - floor(theta(m)/pi) - 1``."""
    if not m < n:
        raise ValueError("need m < n")
    return ceil_pi(path, n) - floor_pi(path, m) - 1


# ---------------------------------------------------------------------------
# relative angles


@dataclass(frozen=True)
class DeltaPath:
    """``Delta = theta_1 - theta_0`` on ``0..N`` in exact integer form."""

    ceil: tuple
    multiple: tuple
    approx: tuple

    def ceil_pi(self, n: int) -> int:
        return self.ceil[n]

    def floor_pi(self, n: int) -> int:
        return self.ceil[n] if self.multiple[n] else self.ceil[n] - 1

    def __len__(self):
        return len(self.ceil)


def _gamma_order(c0: GammaClass, c1: GammaClass):
    """Sign of ``gamma_1 - gamma_0`` when the classes decide it, else None."""
    if c0 is not c1:
        return 1 if c1.rank > c0.rank else -1
    return 0 if c0.is_point else None


def delta_of(p0: PrueferPath, p1: PrueferPath, wronskian_signs) -> DeltaPath:
    """Relative angle path from two Pruefer paths and exact signs of ``W_n``.

    With ``theta_j = k_j pi + gamma_j`` and ``K = k_1 - k_0``,
    ``sign(gamma_1 - gamma_0) = (-1)**K sign(W_n)``, hence
    ``ceil(Delta/pi) = K + [gamma_1 > gamma_0]`` and ``Delta`` is a multiple of
    ``pi`` exactly when ``W_n = 0``.
    """
    n_sites = len(wronskian_signs)
    if len(p0) < n_sites or len(p1) < n_sites:
        raise ValueError("Pruefer paths shorter than the Wronskian")
    ceil, multiple, approx = [], [], []
    for n in range(n_sites):
        t0, t1 = p0[n], p1[n]
        K = t1.k - t0.k
        sw = wronskian_signs[n]
        dg = sw if K % 2 == 0 else -sw
        expected = _gamma_order(t0.gamma_class, t1.gamma_class)
        if expected is not None and expected != dg:
            raise InconsistentSigns(
                f"site {n}: classes {t0.gamma_class.value}, {t1.gamma_class.value} "
                f"force sign {expected}, Wronskian gives {dg}"
            )
        ceil.append(K + (1 if dg > 0 else 0))
        multiple.append(dg == 0)
        approx.append(t1.approx - t0.approx)
    return DeltaPath(tuple(ceil), tuple(multiple), tuple(approx))
