"""Numeric scalars shared by every module.

Two realizations are used:

* exact mode: :class:`fractions.Fraction` (arbitrary precision, exact signs);
* float mode: :class:`ScaledFloat`, a double mantissa in ``[1, 2)`` with a
  separate unbounded integer base-2 exponent.

Solutions of three-term recurrences grow geometrically, so plain doubles
overflow long before ``N = 500``.  A ``ScaledFloat`` keeps the exponent out of
the double and never overflows.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Union

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

DEFAULT_ZERO_BAND_EXP = -40
ZERO_BAND_ENV = "RELOSC_ZERO_BAND"

# beyond this exponent gap the smaller addend is below one ulp
_ALIGN_LIMIT = 60


class SignUncertain(ArithmeticError):
    """A float-mode sign decision fell inside the zero band.

    ``low`` and ``high`` optionally bracket the count that could not be
    decided.
    """

    def __init__(self, message, low=None, high=None):
        super().__init__(message)
        self.low = low
        self.high = high


class ScaledFloat:
    """Signed value ``m * 2**e`` with ``1 <= |m| < 2`` (or ``m == 0``).

    Every arithmetic result is renormalized, so the mantissa stays a well
    scaled double and the exponent absorbs all growth.

    >>> x = ScaledFloat(3.0)
    >>> x.m, x.e
    (1.5, 1)
    >>> float(x * ScaledFloat(0.5))
    1.5
    """

    __slots__ = ("m", "e")

    def __init__(self, m=0.0, e=0):
        m = float(m)
        if m == 0.0:
            self.m = 0.0
            self.e = 0
            return
        if not math.isfinite(m):
            raise ValueError(f"non-finite mantissa {m!r}")
        fm, fe = math.frexp(m)
        self.m = fm * 2.0
        self.e = int(e) + fe - 1

    @classmethod
    def of(cls, x) -> "ScaledFloat":
        if isinstance(x, ScaledFloat):
            return x
        if isinstance(x, Fraction):
            return _fraction_to_scaled(x)
        return cls(float(x))

    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    def is_zero(self) -> bool:
        return self.m == 0.0

    def log2abs(self) -> float:
        if self.m == 0.0:
            return -math.inf
        return self.e + math.log2(abs(self.m))

    def __neg__(self):
        out = ScaledFloat.__new__(ScaledFloat)
        out.m = -self.m
        out.e = self.e
        return out

    def __abs__(self):
        out = ScaledFloat.__new__(ScaledFloat)
        out.m = abs(self.m)
        out.e = self.e
        return out

    def __mul__(self, other):
        other = ScaledFloat.of(other)
        return ScaledFloat(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ScaledFloat.of(other)
        if other.m == 0.0:
            raise ZeroDivisionError("ScaledFloat division by zero")
        return ScaledFloat(self.m / other.m, self.e - other.e)

    def __rtruediv__(self, other):
        return ScaledFloat.of(other) / self

    def __add__(self, other):
        other = ScaledFloat.of(other)
        if other.m == 0.0:
            return self
        if self.m == 0.0:
            return other
        d = self.e - other.e
        if d > _ALIGN_LIMIT:
            return self
        if d < -_ALIGN_LIMIT:
            return other
        if d >= 0:
            return ScaledFloat(self.m + math.ldexp(other.m, -d), self.e)
        return ScaledFloat(math.ldexp(self.m, d) + other.m, other.e)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-ScaledFloat.of(other))

    def __rsub__(self, other):
        return ScaledFloat.of(other) - self

    def __float__(self):
        try:
            return math.ldexp(self.m, self.e)
        except OverflowError:
            return math.copysign(math.inf, self.m)

    def __eq__(self, other):
        if isinstance(other, (int, float, Fraction)):
            other = ScaledFloat.of(other)
        if not isinstance(other, ScaledFloat):
            return NotImplemented
        return self.m == other.m and self.e == other.e

    def __hash__(self):
        return hash((self.m, self.e))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"ScaledFloat({self.m!r}, {self.e})"


def _fraction_to_scaled(x: Fraction) -> ScaledFloat:
    if x == 0:
        return ScaledFloat(0.0)
    p, q = x.numerator, x.denominator
    # shift so the quotient has ~64 significant bits before the float division
    shift = p.bit_length() - q.bit_length() - 64
    if shift > 0:
        q <<= shift
    else:
        p <<= -shift
    return ScaledFloat(p / q, shift)


Scalar = Union[Fraction, ScaledFloat]


def sign(x) -> int:
    """Sign of any supported scalar as ``-1``, ``0`` or ``+1``."""
    if isinstance(x, ScaledFloat):
        return x.sign()
    return (x > 0) - (x < 0)


def zero_band_exponent() -> int:
    """Base-2 exponent of the float zero band (``RELOSC_ZERO_BAND`` override)."""
    raw = os.environ.get(ZERO_BAND_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ZERO_BAND_EXP
    value = int(raw)
    if value >= 0:
        raise ValueError(f"{ZERO_BAND_ENV} must be a negative exponent, got {value}")
    return value


def within_band(x: ScaledFloat, scale: ScaledFloat, band_exp: int) -> bool:
    """``|x| <= 2**band_exp * |scale|``, decided on exponents and mantissas."""
    if x.m == 0.0:
        return True
    if scale.m == 0.0:
        return False
    lhs_e, rhs_e = x.e, scale.e + band_exp
    if lhs_e != rhs_e:
        return lhs_e < rhs_e
    return abs(x.m) <= abs(scale.m)


def banded_difference(t1: ScaledFloat, t2: ScaledFloat, band_exp: int):
    """Form ``t1 - t2`` and decide its sign against the relative zero band.

    Returns ``(value, sign, uncertain)``.  ``uncertain`` is true when the
    difference is not exactly zero yet lies within the band, in which case
    the reported sign is 0.
    """
    value = t1 - t2
    if value.m == 0.0:
        return value, 0, False
    big = t1 if t1.e >= t2.e else t2
    if within_band(value, big, band_exp):
        return value, 0, True
    return value, value.sign(), False


def to_scalar(x, mode: str):
    """Coerce user input (int, float, Fraction, ``"p/q"`` or decimal string)."""
    if mode == EXACT:
        if isinstance(x, ScaledFloat):
            raise TypeError("cannot convert ScaledFloat to an exact rational")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)
    if mode == FLOAT:
        if isinstance(x, str):
            return float(Fraction(x.strip()))
        if isinstance(x, ScaledFloat):
            return float(x)
        return float(x)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def format_scalar(x) -> str:
    """Serialize a scalar so exact values round-trip (``"p/q"``)."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, ScaledFloat):
        return repr(float(x))
    return repr(float(x))
