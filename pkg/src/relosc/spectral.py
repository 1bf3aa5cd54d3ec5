"""Independent spectral oracles for symmetric tridiagonal matrices.

* :func:`count_below` counts eigenvalues below a threshold from the signs of
  the leading principal minors of ``J - lambda``, carried as pivot ratios.
  This shares no code with the solution recurrences.
* :func:`eig_all` computes the full spectrum in floating point with LAPACK's
  root-free QL/QR rotation sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import LinAlgError, eigvalsh_tridiagonal

from .coeffs import JacobiMatrixView
from .scalar import EXACT, SignUncertain, to_scalar, zero_band_exponent

FLOAT_WINDOW = 1e-9
EIG_MAX_DIM = 2000


class NoConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple
    gaps: float

    def count_below(self, lam: float, include_lambda: bool = False) -> int:
        if include_lambda:
            return sum(1 for x in self.eigenvalues if x <= lam)
        return sum(1 for x in self.eigenvalues if x < lam)


@dataclass(frozen=True)
class WindowCount:
    lam: object
    closed: bool
    count: int


_INF = object()
_AFTER_INF = object()


def _exact_inertia(J: JacobiMatrixView, lam):
    """Return ``(negatives, zeros)`` of ``J - lam`` in exact arithmetic.

    A zero pivot followed by a nonzero coupling counts as an infinitesimally
    negative pivot (the next pivot is then ``+inf``).  A zero pivot at the
    end, or before a zero coupling, is a genuine eigenvalue at ``lam`` of the
    trailing-decoupled block and is reported in ``zeros``.
    """
    d, e = J.diag, J.off
    n = len(d)
    negatives = zeros = 0
    q = None  # previous pivot; None after a decoupled zero, INF after a coupled one
    for k in range(n):
        shift = d[k] - lam
        if q is _INF:
            # pivot after an infinitesimally negative one is +inf
            q = _AFTER_INF
            continue
        if q is None or q is _AFTER_INF:
            cur = shift
        else:
            cur = shift - e[k - 1] * e[k - 1] / q
        if cur != 0:
            negatives += cur < 0
            q = cur
        elif k < n - 1 and e[k] != 0:
            negatives += 1
            q = _INF
        else:
            zeros += 1
            q = None
    return negatives, zeros


def _float_negatives(d, e, lam, band_exp):
    """Negative pivot count in float; also reports whether a pivot hit the band."""
    shift0 = abs(lam) + 1.0
    tiny = math.ldexp(shift0, band_exp - 40)
    q = None
    negatives = 0
    unsure = False
    for k in range(len(d)):
        shift = d[k] - lam
        if q is None:
            cur = shift
            scale = max(abs(d[k]), abs(lam))
        else:
            corr = e[k - 1] * e[k - 1] / q
            cur = shift - corr
            scale = max(abs(d[k]), abs(lam), abs(corr))
        if abs(cur) <= math.ldexp(scale, band_exp):
            unsure = True
        if cur == 0.0:
            cur = -tiny
        if cur < 0:
            negatives += 1
        q = cur
    return negatives, unsure


def count_below(J: JacobiMatrixView, lam, include_lambda: bool = False) -> int:
    """Eigenvalues of ``J`` in ``(-inf, lam)`` (or ``(-inf, lam]``).

    Exact mode is exact, membership included.  Float mode evaluates the count
    at ``lam -/+ eps`` with ``eps = 1e-9 * ||J||``; if the two disagree, or a
    pivot falls in the zero band, :class:`SignUncertain` is raised with the
    bracketing ``low``/``high`` counts.
    """
    if J.mode == EXACT:
        lam = to_scalar(lam, EXACT)
        neg, zeros = _exact_inertia(J, lam)
        return neg + zeros if include_lambda else neg
    lam = float(lam)
    d = [float(x) for x in J.diag]
    e = [float(x) for x in J.off]
    band = zero_band_exponent()
    eps = FLOAT_WINDOW * max(J.norm(), 1e-300)
    lo, unsure_lo = _float_negatives(d, e, lam - eps, band)
    hi, unsure_hi = _float_negatives(d, e, lam + eps, band)
    if lo != hi or unsure_lo or unsure_hi:
        raise SignUncertain(
            f"eigenvalue count at {lam!r} undecided in float mode: between {lo} and {hi}",
            low=min(lo, hi),
            high=max(lo, hi),
        )
    return lo


def is_eigenvalue(J: JacobiMatrixView, lam) -> bool:
    """Exact membership ``lam in sigma(J)`` (exact mode only)."""
    if J.mode != EXACT:
        raise SignUncertain("membership is not decidable in float mode")
    return _exact_inertia(J, to_scalar(lam, EXACT))[1] > 0


def leading_minors(J: JacobiMatrixView, lam) -> list:
    """``p_0 .. p_{N-1}`` with ``p_k = det(J_k - lam)`` (exact, for small inputs)."""
    lam = to_scalar(lam, J.mode)
    p = [Fraction(1) if J.mode == EXACT else 1.0]
    for k, dk in enumerate(J.diag):
        if k == 0:
            nxt = (dk - lam) * p[0]
        else:
            nxt = (dk - lam) * p[k] - J.off[k - 1] ** 2 * p[k - 1]
        p.append(nxt)
    return p


def window_count(J: JacobiMatrixView, lam, closed: bool) -> WindowCount:
    return WindowCount(lam, closed, count_below(J, lam, include_lambda=closed))


def eig_all(J: JacobiMatrixView) -> Spectrum:
    """All eigenvalues, ascending.

    Raises
    ------
    NoConvergence
        If the rotation sweeps fail to converge.
    """
    n = J.dim
    if n > EIG_MAX_DIM:
        raise ValueError(f"dimension {n} exceeds {EIG_MAX_DIM}")
    d = np.array([float(x) for x in J.diag], dtype=float)
    e = np.array([float(x) for x in J.off], dtype=float)
    try:
        w = eigvalsh_tridiagonal(d, e, lapack_driver="sterf")
    except LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    w = np.sort(w)
    gaps = float(np.min(np.diff(w))) if n > 1 else math.inf
    return Spectrum(tuple(float(x) for x in w), gaps)


def count_window(J: JacobiMatrixView, lam0, lam1, include0: bool = False, include1: bool = False) -> int:
    """``E_(-inf, lam1)`` minus ``E_(-inf, lam0)``, each end open or closed.

    ``include0=True`` means ``lam0`` belongs to the subtracted half-line
    (so the window is open at ``lam0``), matching the eigenvalue-count
    differences of the relative oscillation identities.
    """
    if to_scalar(lam0, J.mode) > to_scalar(lam1, J.mode):
        raise ValueError("need lam0 <= lam1")
    return count_below(J, lam1, include1) - count_below(J, lam0, include0)
