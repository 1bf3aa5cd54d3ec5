"""Randomized property portfolio used by ``relosc fuzz`` and the test suite.

Each checker takes a :class:`FuzzCase` and returns a list of violation
strings (empty when the property holds).  Cases are drawn deterministically
from ``(seed, trial)`` so any violation can be replayed in isolation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coeffs import Coefficients, OffsetSeq, matrix_of, random_coefficients, random_scalar
from .pruefer import count_nodes_pruefer, pruefer_of
from .recurrence import MINUS, PLUS, count_nodes, solve, solve_custom
from .relative import (
    MainVariant,
    Orientation,
    comparison_I_check,
    comparison_II_check,
    concatenation_check,
    corollary_two_nodes_check,
    extension_invariance_check,
    nodes_vs_wronskian_slack,
    scaling_invariance_check,
    triangle_slack,
    verify_main,
)
from .scalar import EXACT, SignUncertain, format_scalar, to_scalar
from .spectral import count_below, leading_minors
from .wronskian import (
    Convention,
    delta_path,
    greens_relative_residual,
    greens_residual,
    interval_count,
    interval_count_via_delta,
    mark_via_pruefer,
    wronskian_path,
)

A_RANGE = (Fraction(-8), Fraction(-1, 16))
B_RANGE = (Fraction(-8), Fraction(8))
LAMBDA_RANGE = (Fraction(-8), Fraction(8))
MAX_DEN = 16
GREEN_FLOAT_TOL = 1e-10


@dataclass
class FuzzCase:
    trial: int
    ops: tuple  # four operators of equal N
    lam0: object
    lam1: object
    lam: object
    rng_state: int = 0

    @property
    def N(self) -> int:
        return self.ops[0].N

    @property
    def mode(self) -> str:
        return self.ops[0].mode

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "ops": [c.to_json_dict() for c in self.ops],
            "lam0": format_scalar(self.lam0),
            "lam1": format_scalar(self.lam1),
            "lam": format_scalar(self.lam),
        }


def random_lambda(rng: random.Random, mode: str = EXACT):
    return random_scalar(rng, LAMBDA_RANGE, mode, MAX_DEN)


def random_operator(rng: random.Random, N: int, mode: str = EXACT, random_extension: bool = True) -> Coefficients:
    return random_coefficients(rng, N, A_RANGE, B_RANGE, mode, MAX_DEN, random_extension)


def case_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"relosc:{seed}:{trial}")


def draw_case(seed: int, trial: int, n_min: int = 2, n_max: int = 12, mode: str = EXACT) -> FuzzCase:
    rng = case_rng(seed, trial)
    N = rng.randint(n_min, n_max)
    ops = tuple(random_operator(rng, N, mode) for _ in range(4))
    lam0, lam1, lam = (random_lambda(rng, mode) for _ in range(3))
    # occasionally reuse operators or parameters to reach degenerate paths
    r = rng.random()
    if r < 0.1:
        ops = (ops[0], ops[0], ops[2], ops[3])
    elif r < 0.2:
        lam1 = lam0
    return FuzzCase(trial, ops, lam0, lam1, lam, rng.getrandbits(32))


def truncate(c: Coefficients, N: int) -> Coefficients:
    """The operator on ``0..N`` keeping the leading interior entries and the old extension."""
    if not 2 <= N <= c.N:
        raise ValueError("can only truncate to 2 <= N <= current N")
    ext = c.extension
    a = [c.a[n] for n in range(0, N - 1)] + [ext["aNm1"], ext["aN"]]
    b = [c.b[n] for n in range(1, N)] + [ext["bN"]]
    return Coefficients(N, OffsetSeq(a, 0), OffsetSeq(b, 1), c.mode)


# ---------------------------------------------------------------------------
# individual properties


def check_main(case: FuzzCase) -> list:
    c0, c1 = case.ops[0], case.ops[1]
    return [
        f"{r.label}: wronskian {r.wronskian_count} != spectral {r.spectral_count}"
        for r in verify_main(c0, c1, case.lam0, case.lam1)
        if not r.agree
    ]


def check_classical(case: FuzzCase) -> list:
    c = case.ops[0]
    lam = case.lam0
    expected = count_below(matrix_of(c), lam)
    out = []
    for bc in (MINUS, PLUS):
        got = count_nodes(solve(c, lam, bc), 0, c.N)
        if got != expected:
            out.append(f"nodes of u_{bc} on (0,N): {got} != {expected}")
    return out


def _random_solution(rng: random.Random, c: Coefficients, lam):
    choice = rng.random()
    if choice < 0.35:
        return solve(c, lam, MINUS)
    if choice < 0.7:
        return solve(c, lam, PLUS)
    u0 = random_scalar(rng, (-2, 2), c.mode, 4)
    u1 = random_scalar(rng, (-2, 2), c.mode, 4)
    if u0 == 0 and u1 == 0:
        u1 = to_scalar(1, c.mode)
    return solve_custom(c, lam, u0, u1)


def check_pruefer(case: FuzzCase) -> list:
    """Marks, interval counts and solution node counts agree with the angle route."""
    rng = random.Random(case.rng_state)
    c0, c1 = case.ops[0], case.ops[1]
    u0 = _random_solution(rng, c0, case.lam0)
    u1 = _random_solution(rng, c1, case.lam1)
    path = wronskian_path(c0, c1, u0, u1)
    delta = delta_path(path)
    out = []
    N = case.N
    for n in range(N):
        if path.marks[n] != mark_via_pruefer(delta, n):
            out.append(f"site {n}: mark {path.marks[n]} != angle jump {mark_via_pruefer(delta, n)}")
    m = rng.randrange(0, N)
    n = rng.randrange(m + 1, N + 1)
    for conv in Convention:
        if interval_count(path, m, n, conv) != interval_count_via_delta(delta, m, n, conv):
            out.append(f"{conv.label(m, n)}: marks and angles disagree")
    for u, c in ((u0, c0), (u1, c1)):
        pu = pruefer_of(c, u)
        l = rng.randrange(m + 1, N + 2)
        if count_nodes(u, m, l) != count_nodes_pruefer(pu, m, l):
            out.append(f"nodes of {u.bc_tag} solution on ({m},{l}) disagree with angles")
    return out


def mark_sites(case: FuzzCase) -> int:
    """Number of sites :func:`check_pruefer` compares marks at."""
    return case.N


def check_green(case: FuzzCase) -> list:
    rng = random.Random(case.rng_state + 1)
    c0 = case.ops[0]
    c1 = case.ops[1].shifted(to_scalar(case.lam1, case.mode) - to_scalar(case.lam0, case.mode))
    u0 = _random_solution(rng, c0, case.lam0)
    u1 = _random_solution(rng, c1, case.lam0)
    N = case.N
    n = rng.randint(1, N)
    m = rng.randint(n, N)
    if case.mode == EXACT:
        r = greens_residual(c0, c1, u0, u1, n, m)
        return [] if r == 0 else [f"window {n}..{m}: residual {r}"]
    r = greens_relative_residual(c0, c1, u0, u1, n, m)
    return [] if r <= GREEN_FLOAT_TOL else [f"window {n}..{m}: relative residual {r:.3e}"]


def check_triangle(case: FuzzCase) -> list:
    rng = random.Random(case.rng_state + 2)
    N = case.N
    m = rng.randrange(0, N)
    n = rng.randrange(m + 1, N + 1)
    bcs = tuple(rng.choice((PLUS, MINUS)) for _ in range(3))
    out = []
    for conv in (Convention.CLOSED, Convention.LEFT_OPEN):
        slack = triangle_slack(*case.ops[:3], case.lam, conv, bcs, m, n)
        if abs(slack) > 1:
            out.append(f"{conv.label(m, n)} bcs={bcs}: slack {slack}")
    return out


def check_nodes_vs_wronskian(case: FuzzCase) -> list:
    rng = random.Random(case.rng_state + 3)
    c0, c1 = case.ops[0], case.ops[1]
    u0 = _random_solution(rng, c0, case.lam0)
    u1 = _random_solution(rng, c1, case.lam1)
    N = case.N
    m = rng.randrange(0, N)
    n = rng.randrange(m + 1, N + 1)
    out = []
    for conv in (Convention.CLOSED, Convention.LEFT_OPEN, Convention.RIGHT_OPEN):
        slack = nodes_vs_wronskian_slack(c0, c1, u0, u1, m, n, conv)
        if abs(slack) > 1:
            out.append(f"{conv.label(m, n)}: slack {slack}")
    return out


def ordered_pair(rng: random.Random, c: Coefficients):
    """``(J1, J2)`` with ``J1 >= J2`` by construction: same ``a``, ``b`` raised on some sites."""
    N = c.N
    b = list(c.b)
    kind = rng.random()
    if kind < 0.3:
        j = rng.randint(1, N - 1)
        b[j - 1] += random_scalar(rng, (0, 4), c.mode, MAX_DEN)
    elif kind < 0.6:
        b = [x + 1 for x in b[:-1]] + [b[-1]]
    else:
        b = [x + random_scalar(rng, (0, 2), c.mode, MAX_DEN) for x in b[:-1]] + [b[-1]]
    return Coefficients(N, c.a, OffsetSeq(b, 1), c.mode), c


def check_comparison_I(case: FuzzCase) -> list:
    rng = random.Random(case.rng_state + 4)
    c1, c2 = ordered_pair(rng, case.ops[2])
    out = []
    for orientation in Orientation:
        for conv in Convention:
            if not comparison_I_check(case.ops[0], c1, c2, case.lam, conv, orientation):
                out.append(f"{orientation.value} {conv.label('0', 'N')}")
    return out


def monotone_family(rng: random.Random, c: Coefficients, concentrated: bool = False):
    """Three operators sharing ``a`` with ``b0 >= b1 >= b2`` on ``1..N-1``.

    With ``concentrated`` the drop from ``b0`` to ``b1`` sits at the first and
    last interior sites, where it can make ``W(u0, u1)`` change sign.
    """
    N = c.N
    b0 = list(c.b)
    if concentrated:
        b1 = list(b0)
        b1[0] -= random_scalar(rng, (2, 12), c.mode, 4)
        b1[N - 2] -= random_scalar(rng, (2, 12), c.mode, 4)
    else:
        b1 = [x - random_scalar(rng, (0, 2), c.mode, MAX_DEN) for x in b0[:-1]] + [b0[-1]]
    b2 = [x - random_scalar(rng, (0, 2), c.mode, MAX_DEN) for x in b1[:-1]] + [b1[-1]]
    return tuple(Coefficients(N, c.a, OffsetSeq(b, 1), c.mode) for b in (b0, b1, b2))


LAMBDA_GRID = tuple(Fraction(k, 2) for k in range(-24, 25))


def _antecedent_lambda(family, lam, mode, orientation):
    """A parameter where ``W(u0, u1)`` has positive nodes at 0 and ``N-2``, trying ``lam`` first."""
    c0, c1 = family[0], family[1]
    last = c0.N - 2
    if last < 1:
        return lam
    bc0, bc1 = orientation.bcs
    for x in (lam,) + tuple(to_scalar(g, mode) for g in LAMBDA_GRID):
        marks = wronskian_path(c0, c1, solve(c0, x, bc0), solve(c1, x, bc1)).marks
        if marks[0] == 1 and marks[last] == 1:
            return x
    return lam


def _tally(stats, name, outcome):
    entry = stats.setdefault(name, {"decided": 0, "vacuous": 0})
    entry["vacuous" if outcome.vacuous else "decided"] += 1


def check_comparison_II(case: FuzzCase, stats: dict | None = None) -> list:
    """Comparison II and the corollary on monotone families.

    For families whose ``b`` drop is placed to make the antecedent reachable,
    ``lam`` is searched over a grid first.  Vacuous and decided outcomes are
    tallied separately in ``stats``.
    """
    rng = random.Random(case.rng_state + 5)
    concentrated = rng.random() < 0.7
    family = monotone_family(rng, case.ops[3], concentrated)
    stats = {} if stats is None else stats
    out = []
    for orientation in Orientation:
        lam = case.lam
        if concentrated:
            lam = _antecedent_lambda(family, lam, case.mode, orientation)
        runs = (
            ("comparison II", comparison_II_check(*family, lam, orientation)),
            # literal reading: never fires since W_N = W_{N-1} for these pairs
            ("corollary", corollary_two_nodes_check(*family, lam, orientation)),
            ("corollary (last node N-2)", corollary_two_nodes_check(*family, lam, orientation, case.N - 2)),
        )
        for name, outcome in runs:
            _tally(stats, name, outcome)
            if not outcome.holds:
                out.append(f"{name} {orientation.value}: {outcome.detail}")
    # unrelated triple: only condition A can make it non-vacuous
    outcome = comparison_II_check(*case.ops[:3], case.lam)
    _tally(stats, "comparison II (random triple)", outcome)
    if not outcome.holds:
        out.append(f"comparison II random triple: {outcome.detail}")
    return out


def check_concatenation(case: FuzzCase) -> list:
    return [] if concatenation_check(*case.ops, case.lam) else ["concatenation identities fail"]


def check_extension(case: FuzzCase) -> list:
    ok = extension_invariance_check(case.ops[0], case.ops[1], case.lam0, case.lam1, 8, case.rng_state)
    return [] if ok else ["counts change under redrawn extension slots"]


def check_scaling(case: FuzzCase) -> list:
    ok = scaling_invariance_check(case.ops[0], case.ops[1], case.lam0, case.lam1)
    return [] if ok else ["counts change under solution rescaling"]


PORTFOLIO = {
    "main": check_main,
    "classical": check_classical,
    "pruefer": check_pruefer,
    "green": check_green,
    "triangle": check_triangle,
    "nodes_vs_wronskian": check_nodes_vs_wronskian,
    "comparison_I": check_comparison_I,
    "comparison_II": check_comparison_II,
    "concatenation": check_concatenation,
    "extension": check_extension,
    "scaling": check_scaling,
}


# ---------------------------------------------------------------------------
# minimization and the suite runner


def _truncated_case(case: FuzzCase, N: int) -> FuzzCase:
    return FuzzCase(case.trial, tuple(truncate(c, N) for c in case.ops), case.lam0, case.lam1, case.lam, case.rng_state)


def minimize(case: FuzzCase, checker) -> FuzzCase:
    """Smallest truncation of ``case`` (by ``N``) on which ``checker`` still fails."""
    best = case
    for N in range(2, case.N):
        smaller = _truncated_case(case, N)
        try:
            if checker(smaller):
                best = smaller
                break
        except SignUncertain:
            continue
    return best


@dataclass
class SuiteResult:
    trials: int
    checks: dict = field(default_factory=dict)  # name -> {"ran", "violations", "uncertain"}
    violations: list = field(default_factory=list)
    vacuous: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "passed": self.passed,
            "checks": self.checks,
            "comparison_II_outcomes": self.vacuous,
            "violations": self.violations,
        }


def run_suite(seed: int, trials: int, n_min: int = 2, n_max: int = 12, mode: str = EXACT, checks=None) -> SuiteResult:
    names = list(PORTFOLIO) if checks is None else list(checks)
    result = SuiteResult(trials, {name: {"ran": 0, "violations": 0, "uncertain": 0} for name in names})
    for trial in range(trials):
        case = draw_case(seed, trial, n_min, n_max, mode)
        for name in names:
            fn = PORTFOLIO[name]
            entry = result.checks[name]
            try:
                problems = fn(case, result.vacuous) if name == "comparison_II" else fn(case)
            except SignUncertain:
                entry["uncertain"] += 1
                continue
            entry["ran"] += 1
            if problems:
                entry["violations"] += 1
                small = minimize(case, PORTFOLIO[name])
                result.violations.append(
                    {"check": name, "trial": trial, "problems": problems, "reproducer": small.to_dict()}
                )
    return result


# ---------------------------------------------------------------------------
# crafted spectral membership


_PYTHAGOREAN = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29))


def _two_by_two(rng: random.Random):
    """A 2x2 Jacobi block with rational eigenvalues ``mu1 < mu2``."""
    p, q, r = rng.choice(_PYTHAGOREAN)
    if rng.random() < 0.5:
        p, q = q, p
    c, s = Fraction(p, r), Fraction(q, r)
    mu1 = random_scalar(rng, (-6, 6), EXACT, 8)
    mu2 = mu1 + random_scalar(rng, (Fraction(1, 8), 6), EXACT, 8)
    b1 = c * c * mu1 + s * s * mu2
    b2 = s * s * mu1 + c * c * mu2
    a1 = c * s * (mu1 - mu2)
    return (b1, b2), a1, (mu1, mu2)


def with_eigenvalue(rng: random.Random, N: int, lam) -> Coefficients:
    """Random exact operator whose matrix has ``lam`` as an eigenvalue.

    The last diagonal entry is solved for so that ``det(J - lam) = 0``.
    """
    lam = Fraction(lam)
    while True:
        c = random_operator(rng, N, EXACT)
        if N == 2:
            b = [lam, c.b[N]]
            return Coefficients(N, c.a, OffsetSeq(b, 1), EXACT)
        p = leading_minors(matrix_of(c), lam)
        k = N - 1  # dimension
        if p[k - 1] == 0:
            continue
        a_last = c.a[N - 2]
        b = list(c.b)
        b[k - 1] = lam + a_last * a_last * p[k - 2] / p[k - 1]
        return Coefficients(N, c.a, OffsetSeq(b, 1), EXACT)


def membership_case(rng: random.Random, index: int):
    """``(c0, c1, lam0, lam1)`` with at least one parameter inside a spectrum.

    Cycles through 1x1 blocks, 2x2 blocks with rational spectra (including the
    fixed example ``b = (3, 0)``, ``a(1) = -2``) and larger operators with a
    solved-for diagonal entry.
    """
    kind = index % 4
    if kind == 0:
        lam0 = random_lambda(rng)
        c0 = with_eigenvalue(rng, 2, lam0)
        c1 = c0 if rng.random() < 0.5 else random_operator(rng, 2)
        lam1 = lam0 if rng.random() < 0.5 else random_lambda(rng)
        return c0, c1, lam0, lam1
    if kind == 1:
        if index % 8 == 1:
            b, a1, mus = (Fraction(3), Fraction(0)), Fraction(-2), (Fraction(-1), Fraction(4))
        else:
            b, a1, mus = _two_by_two(rng)
        a = [Fraction(-1), a1, Fraction(-1), Fraction(-1)]
        c0 = Coefficients(3, OffsetSeq(a, 0), OffsetSeq([b[0], b[1], Fraction(0)], 1), EXACT)
        lam0 = rng.choice(mus)
        if rng.random() < 0.5:
            return c0, c0, lam0, rng.choice(mus)
        lam1 = random_lambda(rng)
        return c0, with_eigenvalue(rng, 3, lam1), lam0, lam1
    N = rng.randint(3, 10)
    lam0, lam1 = random_lambda(rng), random_lambda(rng)
    if kind == 3:
        lam1 = lam0
    c0 = with_eigenvalue(rng, N, lam0)
    c1 = with_eigenvalue(rng, N, lam1) if rng.random() < 0.7 else random_operator(rng, N)
    return c0, c1, lam0, lam1
