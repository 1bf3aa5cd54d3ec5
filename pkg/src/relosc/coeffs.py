"""Jacobi coefficient sequences, validation and the matrix view.

Public indices follow the usual convention for the difference equation
``a(n) u(n+1) + a(n-1) u(n-1) + b(n) u(n) = z u(n)``:
``a`` is indexed ``0..N`` and ``b`` is indexed ``1..N``.  The Jacobi matrix
of size ``N-1`` only reads ``a(1..N-2)`` and ``b(1..N-1)``; the remaining
entries ``a(0), a(N-1), a(N), b(N)`` are boundary extension values that the
solutions need but the spectrum does not see.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .scalar import EXACT, FLOAT, MODES, format_scalar, to_scalar

DEFAULT_EXTENSION = {"a0": -1, "aNm1": -1, "aN": -1, "bN": 0}


class OffsetSeq(tuple):
    """Tuple addressed by offset indices (``b[1]`` is the first entry of ``b``).

    Iteration, ``len`` and equality behave like a plain tuple.
    """

    def __new__(cls, values, start=0):
        obj = super().__new__(cls, values)
        obj.start = start
        return obj

    def __getitem__(self, i):
        if isinstance(i, slice):
            raise TypeError("OffsetSeq does not support slicing; use .values")
        j = i - self.start
        if j < 0 or j >= len(self):
            raise IndexError(f"index {i} outside {self.start}..{self.start + len(self) - 1}")
        return tuple.__getitem__(self, j)

    def __getnewargs__(self):
        return (tuple(self), self.start)

    @property
    def values(self) -> tuple:
        return tuple(self)

    @property
    def indices(self) -> range:
        return range(self.start, self.start + len(self))

    def __repr__(self):
        return f"OffsetSeq({tuple(self)!r}, start={self.start})"


# ---------------------------------------------------------------------------
# validation errors


class CoefficientIssue:
    """Base of the individual problems reported by :func:`validate`."""

    def __eq__(self, other):
        return type(self) is type(other) and vars(self) == vars(other)

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(vars(self).items()))))


class NonNegativeA(CoefficientIssue):
    def __init__(self, n):
        self.n = n

    def __repr__(self):
        return f"NonNegativeA({self.n})"


class LengthMismatch(CoefficientIssue):
    def __init__(self, name, expected, actual):
        self.name = name
        self.expected = expected
        self.actual = actual

    def __repr__(self):
        return f"LengthMismatch({self.name!r}, expected={self.expected}, actual={self.actual})"


class TooSmall(CoefficientIssue):
    def __init__(self, N):
        self.N = N

    def __repr__(self):
        return f"TooSmall(N={self.N})"


class InvalidCoefficients(ValueError):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("invalid coefficients: " + ", ".join(map(repr, self.issues)))


class InvalidRange(ValueError):
    pass


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class Coefficients:
    """Coefficient pair ``(a, b)`` of a Jacobi difference equation.

    ``a`` and ``b`` are stored as :class:`OffsetSeq` so ``c.a[n]`` and
    ``c.b[n]`` use the natural indices.  Construction does not validate; use
    :func:`make_coefficients` or :func:`validate`.
    """

    N: int
    a: OffsetSeq
    b: OffsetSeq
    mode: str = EXACT

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not isinstance(self.a, OffsetSeq) or self.a.start != 0:
            object.__setattr__(self, "a", OffsetSeq(tuple(self.a), 0))
        if not isinstance(self.b, OffsetSeq) or self.b.start != 1:
            object.__setattr__(self, "b", OffsetSeq(tuple(self.b), 1))

    @property
    def dim(self) -> int:
        return self.N - 1

    @property
    def extension(self) -> dict:
        N = self.N
        return {"a0": self.a[0], "aNm1": self.a[N - 1], "aN": self.a[N], "bN": self.b[N]}

    def with_extension(self, a0=None, aNm1=None, aN=None, bN=None) -> "Coefficients":
        """Copy with some boundary extension slots replaced."""
        N = self.N
        a = list(self.a)
        b = list(self.b)
        if a0 is not None:
            a[0] = to_scalar(a0, self.mode)
        if aNm1 is not None:
            a[N - 1] = to_scalar(aNm1, self.mode)
        if aN is not None:
            a[N] = to_scalar(aN, self.mode)
        if bN is not None:
            b[N - 1] = to_scalar(bN, self.mode)
        return Coefficients(N, OffsetSeq(a, 0), OffsetSeq(b, 1), self.mode)

    def shifted(self, dz) -> "Coefficients":
        """Coefficients with every ``b(n)`` lowered by ``dz``.

        A solution of ``tau u = z u`` is then a solution of the shifted
        equation at ``z - dz``.
        """
        dz = to_scalar(dz, self.mode)
        return Coefficients(self.N, self.a, OffsetSeq([x - dz for x in self.b], 1), self.mode)

    def to_mode(self, mode: str) -> "Coefficients":
        if mode == self.mode:
            return self
        if mode == EXACT:
            conv = Fraction
        else:
            conv = float
        return Coefficients(
            self.N,
            OffsetSeq([conv(x) for x in self.a], 0),
            OffsetSeq([conv(x) for x in self.b], 1),
            mode,
        )

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "a": [format_scalar(x) for x in self.a],
            "b": [format_scalar(x) for x in self.b],
            "mode": self.mode,
        }


def make_coefficients(a, b, mode: str = EXACT, extension: dict | None = None) -> Coefficients:
    """Build and validate coefficients.

    ``a`` may be given either in full (``N+1`` entries, indices ``0..N``) or
    as the interior only (``N-2`` entries, indices ``1..N-2``); likewise ``b``
    in full (``N`` entries) or interior (``N-1`` entries).  Missing extension
    slots are taken from ``extension`` or :data:`DEFAULT_EXTENSION`.

    Raises
    ------
    InvalidCoefficients
        If any invariant fails.
    """
    a = [to_scalar(x, mode) for x in a]
    b = [to_scalar(x, mode) for x in b]
    ext = dict(DEFAULT_EXTENSION)
    if extension:
        ext.update(extension)
    if len(b) == len(a) - 1:
        N = len(b)
    elif len(b) == len(a) + 1:
        # interior form
        N = len(b) + 1
        a = [ext["a0"], *a, ext["aNm1"], ext["aN"]]
        b = [*b, ext["bN"]]
        a = [to_scalar(x, mode) for x in a]
        b = [to_scalar(x, mode) for x in b]
    else:
        raise InvalidCoefficients([LengthMismatch("a/b", len(b) + 1, len(a))])
    c = Coefficients(N, OffsetSeq(a, 0), OffsetSeq(b, 1), mode)
    issues = validate(c)
    if issues:
        raise InvalidCoefficients(issues)
    return c


def validate(coeffs: Coefficients) -> list:
    """Return the list of violated invariants; empty means valid."""
    issues = []
    N = coeffs.N
    if N < 2:
        issues.append(TooSmall(N))
    if len(coeffs.a) != N + 1:
        issues.append(LengthMismatch("a", N + 1, len(coeffs.a)))
    if len(coeffs.b) != N:
        issues.append(LengthMismatch("b", N, len(coeffs.b)))
    for n, x in zip(coeffs.a.indices, coeffs.a):
        if not x < 0:
            issues.append(NonNegativeA(n))
    return issues


@dataclass(frozen=True)
class JacobiMatrixView:
    """Symmetric tridiagonal matrix given by its diagonal and off-diagonal.

    ``diag[i-1] = b(i)`` for ``i = 1..N-1`` and ``off[i-1] = a(i)`` for
    ``i = 1..N-2``.  The spectral routines accept any symmetric tridiagonal
    here, including off-diagonals that are not negative (order certificates
    use ``J1 - J2``).
    """

    diag: tuple
    off: tuple
    mode: str = EXACT

    @property
    def dim(self) -> int:
        return len(self.diag)

    def dense(self) -> list:
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for i, d in enumerate(self.diag):
            rows[i][i] = d
        for i, e in enumerate(self.off):
            rows[i][i + 1] = e
            rows[i + 1][i] = e
        return rows

    def as_array(self):
        import numpy as np

        return np.array([[float(x) for x in row] for row in self.dense()], dtype=float)

    def norm(self) -> float:
        """Max absolute row sum, an upper bound on the spectral radius."""
        best = 0.0
        n = self.dim
        for i in range(n):
            s = abs(float(self.diag[i]))
            if i > 0:
                s += abs(float(self.off[i - 1]))
            if i < n - 1:
                s += abs(float(self.off[i]))
            best = max(best, s)
        return best

    def __sub__(self, other: "JacobiMatrixView") -> "JacobiMatrixView":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return JacobiMatrixView(
            tuple(x - y for x, y in zip(self.diag, other.diag)),
            tuple(x - y for x, y in zip(self.off, other.off)),
            self.mode,
        )


def matrix_of(coeffs: Coefficients) -> JacobiMatrixView:
    N = coeffs.N
    diag = tuple(coeffs.b[i] for i in range(1, N))
    off = tuple(coeffs.a[i] for i in range(1, N - 1))
    return JacobiMatrixView(diag, off, coeffs.mode)


# ---------------------------------------------------------------------------
# random instances


def _random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int) -> Fraction:
    while True:
        q = rng.randint(1, max_den)
        p_lo = math.ceil(lo * q)
        p_hi = math.floor(hi * q)
        if p_lo <= p_hi:
            return Fraction(rng.randint(p_lo, p_hi), q)


def random_scalar(rng: random.Random, value_range, mode: str = EXACT, max_den: int = 16):
    lo, hi = value_range
    if mode == EXACT:
        return _random_rational(rng, Fraction(lo), Fraction(hi), max_den)
    return rng.uniform(float(lo), float(hi))


def random_coefficients(
    seed,
    N: int,
    a_range=(-3, -1),
    b_range=(-2, 2),
    mode: str = EXACT,
    max_den: int = 16,
    random_extension: bool = False,
) -> Coefficients:
    """Deterministic random coefficients for a given ``seed``.

    ``seed`` may also be a :class:`random.Random` instance, which is then
    advanced.  Exact mode draws rationals with denominators ``<= max_den``.
    With ``random_extension`` the boundary slots are drawn too; otherwise
    they keep their defaults.
    """
    lo, hi = (Fraction(x) for x in a_range)
    if hi >= 0 or lo > hi:
        raise InvalidRange(f"a-range {a_range!r} must lie strictly below 0")
    if Fraction(b_range[0]) > Fraction(b_range[1]):
        raise InvalidRange(f"empty b-range {b_range!r}")
    if N < 2:
        raise InvalidCoefficients([TooSmall(N)])
    if mode == EXACT and not any(
        math.ceil(lo * q) <= math.floor(hi * q) for q in range(1, max_den + 1)
    ):
        raise InvalidRange(f"a-range {a_range!r} holds no rational with denominator <= {max_den}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)

    def draw_a():
        x = random_scalar(rng, (lo, hi), mode, max_den)
        while mode == FLOAT and x >= 0:
            x = random_scalar(rng, (lo, hi), mode, max_den)
        return x

    a = [to_scalar(DEFAULT_EXTENSION["a0"], mode)]
    a += [draw_a() for _ in range(1, N - 1)]
    a += [to_scalar(DEFAULT_EXTENSION["aNm1"], mode), to_scalar(DEFAULT_EXTENSION["aN"], mode)]
    b = [random_scalar(rng, b_range, mode, max_den) for _ in range(1, N)]
    b.append(to_scalar(DEFAULT_EXTENSION["bN"], mode))
    c = Coefficients(N, OffsetSeq(a, 0), OffsetSeq(b, 1), mode)
    if random_extension:
        c = c.with_extension(
            a0=draw_a(), aNm1=draw_a(), aN=draw_a(), bN=random_scalar(rng, b_range, mode, max_den)
        )
    return c


# ---------------------------------------------------------------------------
# JSON


class CoefficientFormatError(ValueError):
    pass


def coefficients_from_dict(obj, mode: str | None = None) -> Coefficients:
    """Parse the JSON coefficient schema ``{"N", "a", "b", "mode"}``."""
    if not isinstance(obj, dict):
        raise CoefficientFormatError("coefficient record must be a JSON object")
    try:
        N = obj["N"]
        a = obj["a"]
        b = obj["b"]
    except KeyError as exc:
        raise CoefficientFormatError(f"missing field {exc.args[0]!r}") from None
    file_mode = obj.get("mode", EXACT)
    if file_mode not in MODES:
        raise CoefficientFormatError(f"unknown mode {file_mode!r}")
    mode = mode or file_mode
    if not isinstance(N, int) or not isinstance(a, list) or not isinstance(b, list):
        raise CoefficientFormatError("N must be an integer and a, b lists")
    try:
        a_vals = [to_scalar(x if isinstance(x, str) else str(x), EXACT) for x in a]
        b_vals = [to_scalar(x if isinstance(x, str) else str(x), EXACT) for x in b]
    except (ValueError, ZeroDivisionError) as exc:
        raise CoefficientFormatError(f"bad number: {exc}") from None
    c = Coefficients(N, OffsetSeq(a_vals, 0), OffsetSeq(b_vals, 1), EXACT)
    issues = validate(c)
    if issues:
        raise InvalidCoefficients(issues)
    return c.to_mode(mode)


def coefficients_to_json(coeffs: Coefficients) -> str:
    return json.dumps(coeffs.to_json_dict(), sort_keys=True)


def coefficients_from_json(text: str, mode: str | None = None) -> Coefficients:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CoefficientFormatError(f"malformed JSON: {exc}") from None
    return coefficients_from_dict(obj, mode)
