"""Relative oscillation: eigenvalue-count differences from Wronskian nodes.

For two Jacobi operators with the same ``N`` and spectral parameters
``lam0``, ``lam1`` the four identities below are checked, each for both
orientations of the Dirichlet solution pair::

    V1  E(-inf,lam1)(J1) - E(-inf,lam0](J0) = #(0,N](u0+, u1-) = #(0,N](u0-, u1+)
    V2  E(-inf,lam1)(J1) - E(-inf,lam0)(J0) = #[0,N](u0+, u1-) = #(0,N)(u0-, u1+)
    V3  E(-inf,lam1](J1) - E(-inf,lam0](J0) = #(0,N)(u0+, u1-) = #[0,N](u0-, u1+)
    V4  E(-inf,lam1](J1) - E(-inf,lam0)(J0) = #[0,N)(u0+, u1-) = #[0,N)(u0-, u1+)

Here ``u0+`` solves the first equation at ``lam0`` with ``u(N) = 0`` and
``u1-`` the second at ``lam1`` with ``u(0) = 0``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coeffs import Coefficients, matrix_of, random_scalar
from .recurrence import MINUS, PLUS, SolutionPath, count_nodes, solve
from .scalar import EXACT, to_scalar
from .spectral import count_below
from .wronskian import Convention, WronskianPath, interval_count, wronskian_path


class Orientation(enum.Enum):
    PLUS_MINUS = "(+,-)"
    MINUS_PLUS = "(-,+)"

    @property
    def bcs(self):
        return (PLUS, MINUS) if self is Orientation.PLUS_MINUS else (MINUS, PLUS)

    @property
    def flipped(self) -> "Orientation":
        return Orientation.MINUS_PLUS if self is Orientation.PLUS_MINUS else Orientation.PLUS_MINUS


class MainVariant(enum.Enum):
    V1 = (False, True, Convention.LEFT_OPEN, Convention.LEFT_OPEN)
    V2 = (False, False, Convention.CLOSED, Convention.OPEN)
    V3 = (True, True, Convention.OPEN, Convention.CLOSED)
    V4 = (True, False, Convention.RIGHT_OPEN, Convention.RIGHT_OPEN)

    @property
    def include1(self) -> bool:
        """Whether ``lam1`` itself is counted for ``J1``."""
        return self.value[0]

    @property
    def include0(self) -> bool:
        """Whether ``lam0`` itself is counted for ``J0``."""
        return self.value[1]

    def convention(self, orientation: Orientation) -> Convention:
        return self.value[2] if orientation is Orientation.PLUS_MINUS else self.value[3]

    def spectral_label(self) -> str:
        r1 = "]" if self.include1 else ")"
        r0 = "]" if self.include0 else ")"
        return f"E(-inf,lam1{r1}(J1) - E(-inf,lam0{r0}(J0)"


@dataclass
class CountReport:
    variant: MainVariant
    orientation: Orientation
    wronskian_count: int
    spectral_count: int
    mode: str
    diagnostics: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.wronskian_count == self.spectral_count

    @property
    def label(self) -> str:
        conv = self.variant.convention(self.orientation).label("0", "N")
        return f"{self.variant.name} {self.orientation.value} #{conv}"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "variant": self.variant.name,
            "orientation": self.orientation.value,
            "wronskian_count": self.wronskian_count,
            "spectral_count": self.spectral_count,
            "agree": self.agree,
            "mode": self.mode,
            "diagnostics": self.diagnostics,
        }


class PreconditionUnverified(ValueError):
    """An operator-order hypothesis could not be certified from the data."""


@dataclass(frozen=True)
class CheckOutcome:
    holds: bool
    vacuous: bool = False
    detail: str = ""

    def __bool__(self):
        return self.holds


def _check_pair(c0: Coefficients, c1: Coefficients):
    if c0.N != c1.N:
        raise ValueError(f"operators differ in size: N={c0.N} vs N={c1.N}")
    if c0.mode != c1.mode:
        raise ValueError("operators use different modes")


def boundary_solutions(c0, c1, lam0, lam1, orientation: Orientation):
    bc0, bc1 = orientation.bcs
    return solve(c0, lam0, bc0), solve(c1, lam1, bc1)


def boundary_path(c0, c1, lam0, lam1, orientation: Orientation) -> WronskianPath:
    _check_pair(c0, c1)
    u0, u1 = boundary_solutions(c0, c1, lam0, lam1, orientation)
    return wronskian_path(c0, c1, u0, u1)


def count_from_path(path: WronskianPath, variant: MainVariant, orientation: Orientation) -> int:
    return interval_count(path, 0, path.N, variant.convention(orientation))


def relative_count(c0, c1, lam0, lam1, variant: MainVariant, orientation: Orientation) -> int:
    """Wronskian side of one identity."""
    path = boundary_path(c0, c1, lam0, lam1, orientation)
    return count_from_path(path, variant, orientation)


def spectral_difference(c0, c1, lam0, lam1, variant: MainVariant) -> int:
    """Eigenvalue side of one identity, from the Sturm oracle."""
    e1 = count_below(matrix_of(c1), lam1, variant.include1)
    e0 = count_below(matrix_of(c0), lam0, variant.include0)
    return e1 - e0


def verify_main(c0, c1, lam0, lam1) -> list:
    """All eight identities (four variants, two orientations) as reports."""
    _check_pair(c0, c1)
    J0, J1 = matrix_of(c0), matrix_of(c1)
    e0 = {inc: count_below(J0, lam0, inc) for inc in (False, True)}
    e1 = {inc: count_below(J1, lam1, inc) for inc in (False, True)}
    reports = []
    for orientation in Orientation:
        path = boundary_path(c0, c1, lam0, lam1, orientation)
        diag = {"W_signs": list(path.signs), "marks": list(path.marks)}
        for variant in MainVariant:
            reports.append(
                CountReport(
                    variant,
                    orientation,
                    count_from_path(path, variant, orientation),
                    e1[variant.include1] - e0[variant.include0],
                    c0.mode,
                    diag,
                )
            )
    return reports


def wronskian_counts(c0, c1, lam0, lam1) -> dict:
    """``{(variant, orientation): count}`` from the Wronskian side only."""
    out = {}
    for orientation in Orientation:
        path = boundary_path(c0, c1, lam0, lam1, orientation)
        for variant in MainVariant:
            out[variant, orientation] = count_from_path(path, variant, orientation)
    return out


_INTERVAL_VARIANT = {
    (False, False): MainVariant.V1,  # (lam0, lam1)
    (True, False): MainVariant.V2,  # [lam0, lam1)
    (False, True): MainVariant.V3,  # (lam0, lam1]
    (True, True): MainVariant.V4,  # [lam0, lam1]
}


def count_in_interval(c: Coefficients, lam0, lam1, left_closed: bool = False, right_closed: bool = False) -> int:
    """Eigenvalues of ``J`` in an interval, by Wronskian nodes only (``J0 = J1``)."""
    if not to_scalar(lam0, c.mode) < to_scalar(lam1, c.mode):
        raise ValueError("need lam0 < lam1")
    variant = _INTERVAL_VARIANT[left_closed, right_closed]
    return relative_count(c, c, lam0, lam1, variant, Orientation.PLUS_MINUS)


def interval_path(c: Coefficients, lam0, lam1) -> WronskianPath:
    return boundary_path(c, c, lam0, lam1, Orientation.PLUS_MINUS)


def count_in_interval_from_path(path: WronskianPath, left_closed: bool, right_closed: bool) -> int:
    variant = _INTERVAL_VARIANT[left_closed, right_closed]
    return count_from_path(path, variant, Orientation.PLUS_MINUS)


# ---------------------------------------------------------------------------
# inequalities and comparison results


def _check_convention(convention, allowed):
    if convention not in allowed:
        names = ", ".join(c.value for c in allowed)
        raise ValueError(f"convention {convention.value} not supported here; use one of {names}")


def _solutions_at(coeff_list, lam, bcs):
    return [solve(c, lam, bc) for c, bc in zip(coeff_list, bcs)]


def triangle_slack(c0, c1, c2, lam, convention=Convention.CLOSED, bcs=(PLUS, MINUS, PLUS), m=0, n=None) -> int:
    """``#(u0,u2) - (#(u0,u1) + #(u1,u2))`` for solutions at a common ``lam``."""
    _check_convention(convention, (Convention.CLOSED, Convention.LEFT_OPEN))
    for c in (c1, c2):
        _check_pair(c0, c)
    n = c0.N if n is None else n
    u0, u1, u2 = _solutions_at((c0, c1, c2), lam, bcs)
    w02 = wronskian_path(c0, c2, u0, u2)
    w01 = wronskian_path(c0, c1, u0, u1)
    w12 = wronskian_path(c1, c2, u1, u2)
    return interval_count(w02, m, n, convention) - (
        interval_count(w01, m, n, convention) + interval_count(w12, m, n, convention)
    )


def triangle_check(c0, c1, c2, lam, convention=Convention.CLOSED, bcs=(PLUS, MINUS, PLUS), m=0, n=None) -> bool:
    """Triangle inequality for Wronskian node counts (closed or left-open)."""
    return abs(triangle_slack(c0, c1, c2, lam, convention, bcs, m, n)) <= 1


def nodes_vs_wronskian_slack(c0, c1, u0: SolutionPath, u1: SolutionPath, m: int, n: int, convention=Convention.CLOSED) -> int:
    _check_convention(convention, (Convention.CLOSED, Convention.LEFT_OPEN, Convention.RIGHT_OPEN))
    path = wronskian_path(c0, c1, u0, u1)
    return interval_count(path, m, n, convention) - (count_nodes(u1, m, n) - count_nodes(u0, m, n))


def nodes_vs_wronskian_check(c0, c1, u0, u1, m: int, n: int, convention=Convention.CLOSED) -> bool:
    """``|#W(u0,u1) - (#(u1) - #(u0))| <= 1`` on the window ``m < n``."""
    if not m < n:
        raise ValueError("need m < n")
    return abs(nodes_vs_wronskian_slack(c0, c1, u0, u1, m, n, convention)) <= 1


def certify_order(c1: Coefficients, c2: Coefficients):
    """Certificate that ``J1 >= J2``, or None.

    Either equal off-diagonals with pointwise dominating diagonal, or an
    exact check that ``J1 - J2`` has no negative eigenvalue.
    """
    J1, J2 = matrix_of(c1), matrix_of(c2)
    if J1.off == J2.off and all(x >= y for x, y in zip(J1.diag, J2.diag)):
        return "diagonal-dominance"
    if c1.mode == EXACT and count_below(J1 - J2, 0) == 0:
        return "psd-difference"
    return None


def comparison_I_check(c0, c1, c2, lam, convention=Convention.CLOSED, orientation=Orientation.PLUS_MINUS) -> bool:
    """``J1 >= J2`` implies ``#(u0, u2) >= #(u0, u1)`` at a common ``lam``.

    Raises
    ------
    PreconditionUnverified
        When the order ``J1 >= J2`` cannot be certified.
    """
    if certify_order(c1, c2) is None:
        raise PreconditionUnverified("J1 >= J2 is not certified by the coefficients")
    bc0, bc1 = orientation.bcs
    u0 = solve(c0, lam, bc0)
    p1 = wronskian_path(c0, c1, u0, solve(c1, lam, bc1))
    p2 = wronskian_path(c0, c2, u0, solve(c2, lam, bc1))
    N = c0.N
    return interval_count(p2, 0, N, convention) >= interval_count(p1, 0, N, convention)


def _condition_b(c0, c1, c2, through: int) -> bool:
    if not (tuple(c0.a) == tuple(c1.a) == tuple(c2.a)):
        return False
    return all(c0.b[j] >= c1.b[j] >= c2.b[j] for j in range(1, through + 1))


def _condition_a(w01: WronskianPath, w12: WronskianPath, last: int) -> bool:
    for j in range(last + 1):
        if w01.signs[j] * w01.u0.signs[j + 1] * w01.u1.signs[j + 1] > 0:
            return False
        if w12.signs[j] * w12.u0.signs[j + 1] * w12.u1.signs[j + 1] > 0:
            return False
    return True


def comparison_II_check(c0, c1, c2, lam, orientation=Orientation.PLUS_MINUS) -> CheckOutcome:
    """Positive nodes of ``W(u0,u1)`` at ``0`` and ``N-2`` force one for ``W(u0,u2)``.

    The hypothesis (condition A on the products ``W u u``, or condition B:
    equal ``a`` and ``b0 >= b1 >= b2``) is checked from the data; if it or
    the antecedent fails the outcome is vacuous.
    """
    N = c0.N
    last = N - 2
    if last < 1:
        return CheckOutcome(True, True, "N < 3: nodes at 0 and N-2 coincide")
    bc0, bc1 = orientation.bcs
    u0, u1 = solve(c0, lam, bc0), solve(c1, lam, bc1)
    w01 = wronskian_path(c0, c1, u0, u1)
    if not (w01.marks[0] == 1 and w01.marks[last] == 1):
        return CheckOutcome(True, True, "antecedent false")
    u2 = solve(c2, lam, bc1)
    if _condition_b(c0, c1, c2, N - 1):
        cond = "B"
    elif _condition_a(w01, wronskian_path(c1, c2, u1, u2), last):
        cond = "A"
    else:
        return CheckOutcome(True, True, "neither condition A nor B holds")
    w02 = wronskian_path(c0, c2, u0, u2)
    holds = any(w02.marks[j] == 1 for j in range(last + 1))
    return CheckOutcome(holds, False, f"condition {cond}")


def corollary_two_nodes_check(c0, c1, c2, lam, orientation=Orientation.PLUS_MINUS, last: int | None = None) -> CheckOutcome:
    """Equal ``a`` and monotone ``b``: positive nodes at 0 and ``last`` give two for ``W(u0,u2)``.

    ``last`` defaults to ``N-1``.  For Dirichlet pairs with equal ``a`` the
    Wronskian satisfies ``W_N = W_{N-1}``, so that reading is always vacuous;
    ``last = N-2`` gives the non-degenerate variant.
    """
    N = c0.N
    last = N - 1 if last is None else last
    if not _condition_b(c0, c1, c2, N - 1):
        return CheckOutcome(True, True, "condition B fails")
    if last < 1:
        return CheckOutcome(True, True, "nodes at 0 and last coincide")
    bc0, bc1 = orientation.bcs
    u0 = solve(c0, lam, bc0)
    w01 = wronskian_path(c0, c1, u0, solve(c1, lam, bc1))
    if not (w01.marks[0] == 1 and w01.marks[last] == 1):
        return CheckOutcome(True, True, "antecedent false")
    w02 = wronskian_path(c0, c2, u0, solve(c2, lam, bc1))
    positives = sum(1 for x in w02.marks if x == 1)
    return CheckOutcome(positives >= 2, False, f"{positives} positive nodes")


def concatenation_check(c0, c1, c2, c3, lam) -> bool:
    """Swap identity and the two three-operator concatenation identities at ``lam``."""
    for c in (c1, c2, c3):
        _check_pair(c0, c)
    N = c0.N
    sol = {}

    def u(j, bc):
        key = (j, bc)
        if key not in sol:
            sol[key] = solve((c0, c1, c2, c3)[j], lam, bc)
        return sol[key]

    cs = (c0, c1, c2, c3)

    def count(i, bi, j, bj, convention):
        return interval_count(wronskian_path(cs[i], cs[j], u(i, bi), u(j, bj)), 0, N, convention)

    C, L, R = Convention.CLOSED, Convention.LEFT_OPEN, Convention.RIGHT_OPEN
    ok = True
    for b0, b1 in ((PLUS, MINUS), (MINUS, PLUS)):
        ok &= count(0, b0, 1, b1, C) == -count(1, b0, 0, b1, C)
    ok &= count(0, PLUS, 3, MINUS, C) == (
        count(0, PLUS, 1, MINUS, R) + count(1, MINUS, 2, PLUS, C) + count(2, PLUS, 3, MINUS, L)
    )
    ok &= count(0, MINUS, 3, PLUS, C) == (
        count(0, MINUS, 1, PLUS, L) + count(1, PLUS, 2, MINUS, C) + count(2, MINUS, 3, PLUS, R)
    )
    return bool(ok)


def extension_draws(c: Coefficients, rng: random.Random, draws: int = 8, max_den: int = 16):
    """Copies of ``c`` with redrawn boundary extension slots (first draw is ``c``)."""
    a_range, b_range = (Fraction(-8), Fraction(-1, 16)), (Fraction(-8), Fraction(8))
    out = [c]
    while len(out) < draws:
        out.append(
            c.with_extension(
                a0=random_scalar(rng, a_range, c.mode, max_den),
                aNm1=random_scalar(rng, a_range, c.mode, max_den),
                aN=random_scalar(rng, a_range, c.mode, max_den),
                bN=random_scalar(rng, b_range, c.mode, max_den),
            )
        )
    return out


def extension_invariance_check(c0, c1, lam0, lam1, draws: int = 8, seed=0) -> bool:
    """Every Wronskian-side count is unchanged under redrawn extension slots."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    reference = wronskian_counts(c0, c1, lam0, lam1)
    for d0, d1 in zip(extension_draws(c0, rng, draws), extension_draws(c1, rng, draws)):
        if wronskian_counts(d0, d1, lam0, lam1) != reference:
            return False
    return True


def scaling_invariance_check(c0, c1, lam0, lam1, scales=((-3, 1), (2, "-1/7"), (-1, -1))) -> bool:
    """Every count is unchanged when either boundary solution is rescaled."""
    for orientation in Orientation:
        u0, u1 = boundary_solutions(c0, c1, lam0, lam1, orientation)
        base = wronskian_path(c0, c1, u0, u1)
        for s0, s1 in scales:
            scaled = wronskian_path(c0, c1, u0.scaled(s0), u1.scaled(s1))
            if scaled.marks != base.marks:
                return False
            for variant in MainVariant:
                if count_from_path(scaled, variant, orientation) != count_from_path(base, variant, orientation):
                    return False
    return True
