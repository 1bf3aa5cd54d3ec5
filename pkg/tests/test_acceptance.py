"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the
terminal output) or directly with ``python tests/test_acceptance.py``.
"""

import json
import math
import random
import time
from fractions import Fraction

import pytest

from relosc.cli import main as cli_main
from relosc.coeffs import make_coefficients, matrix_of, random_coefficients
from relosc.properties import (
    check_classical,
    check_comparison_I,
    check_comparison_II,
    check_concatenation,
    check_extension,
    check_green,
    check_main,
    check_nodes_vs_wronskian,
    check_pruefer,
    check_scaling,
    check_triangle,
    draw_case,
    mark_sites,
    membership_case,
)
from relosc.recurrence import solve_minus, solve_plus
from relosc.relative import MainVariant, Orientation, verify_main
from relosc.spectral import count_below, eig_all, is_eigenvalue
from relosc.wronskian import Convention, interval_count, wronskian_path

SEED = 20240611

# pinned thresholds
C1_PAIRS, C1_NMAX, C1_SECONDS = 5000, 40, 180.0
C2_CASES = 200
C3_CASES = 5000
C4_SITES = 10**5
C5_WINDOWS, C5_FLOAT_TOL = 5000, 1e-10
C6_TRIALS = 10**4
C7_PAIRS, C7_DRAWS = 10**3, 8
C8_TRIALS, C8_MARGIN = 10**4, 1e-6
C10_N, C10_SECONDS = 500, 1.0

_reporter = None


@pytest.fixture(autouse=True)
def _terminal(capsys):
    global _reporter
    _reporter = capsys
    yield
    _reporter = None


def report(k: int, ok: bool, detail: str):
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    if _reporter is not None:
        with _reporter.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def _run(check, cases):
    violations = []
    for case in cases:
        problems = check(case)
        if problems:
            violations.append((case.trial, problems))
    return violations


def test_criterion_01_main_identity():
    start = time.perf_counter()
    cases = (draw_case(SEED, t, 2, C1_NMAX) for t in range(C1_PAIRS))
    violations = _run(check_main, cases)
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed <= C1_SECONDS
    detail = f"{C1_PAIRS} pairs x 8 identities, N in [2,{C1_NMAX}], {len(violations)} violations, {elapsed:.1f}s"
    assert report(1, ok, detail), violations[:3]


def test_criterion_02_membership():
    rng = random.Random(SEED)
    violations = 0
    on_sigma = {"lam0": 0, "lam1": 0}
    seen = set()
    for i in range(C2_CASES):
        c0, c1, lam0, lam1 = membership_case(rng, i)
        in0 = is_eigenvalue(matrix_of(c0), lam0)
        in1 = is_eigenvalue(matrix_of(c1), lam1)
        assert in0 or in1
        on_sigma["lam0"] += in0
        on_sigma["lam1"] += in1
        for r in verify_main(c0, c1, lam0, lam1):
            seen.add((r.variant, r.orientation, in0, in1))
            violations += not r.agree
    # every variant and orientation must have met a parameter on the spectrum
    covered = all(
        any((v, o, True, x) in seen for x in (False, True)) and any((v, o, x, True) in seen for x in (False, True))
        for v in MainVariant
        for o in Orientation
    )
    ok = violations == 0 and covered
    detail = (
        f"{C2_CASES} crafted cases ({on_sigma['lam0']} with lam0 in sigma(J0), {on_sigma['lam1']} with lam1 in sigma(J1)), "
        f"all 8 variants covered: {covered}, {violations} violations"
    )
    assert report(2, ok, detail)


def test_criterion_03_classical_oscillation():
    cases = (draw_case(SEED + 3, t, 2, C1_NMAX) for t in range(C3_CASES))
    violations = _run(check_classical, cases)
    assert report(3, not violations, f"{C3_CASES} (J, lam), nodes of u_- and u_+ vs Sturm, {len(violations)} violations"), violations[:3]


def test_criterion_04_counting_methods():
    sites = trials = 0
    violations = []
    while sites < C4_SITES:
        case = draw_case(SEED + 4, trials, 2, C1_NMAX)
        problems = check_pruefer(case)
        if problems:
            violations.append((case.trial, problems))
        sites += mark_sites(case)
        trials += 1
    detail = f"{sites} sites over {trials} pairs, Wronskian marks vs relative angle jumps, {len(violations)} violations"
    assert report(4, not violations, detail), violations[:3]


def test_criterion_05_greens_formula():
    exact = _run(check_green, (draw_case(SEED + 5, t, 2, C1_NMAX) for t in range(C5_WINDOWS)))
    floats = _run(check_green, (draw_case(SEED + 50, t, 2, C1_NMAX, "float") for t in range(C5_WINDOWS)))
    ok = not exact and not floats
    detail = (
        f"{C5_WINDOWS} exact windows residual == 0 ({len(exact)} violations); "
        f"{C5_WINDOWS} float windows rel. residual <= {C5_FLOAT_TOL:g} ({len(floats)} violations)"
    )
    assert report(5, ok, detail), (exact[:2], floats[:2])


def test_criterion_06_inequalities():
    checks = {
        "triangle": check_triangle,
        "nodes_vs_wronskian": check_nodes_vs_wronskian,
        "comparison_I": check_comparison_I,
        "concatenation": check_concatenation,
    }
    per_check = C6_TRIALS // 5
    tallies = {}
    violations = []
    trials = 0
    for name, fn in checks.items():
        for t in range(per_check):
            case = draw_case(SEED + 6, t, 2, 14)
            problems = fn(case)
            trials += 1
            if problems:
                violations.append((name, t, problems))
    for t in range(per_check):
        case = draw_case(SEED + 6, t, 3, 14)
        problems = check_comparison_II(case, tallies)
        trials += 1
        if problems:
            violations.append(("comparison_II", t, problems))
    decided = tallies["comparison II"]["decided"]
    alt = tallies["corollary (last node N-2)"]["decided"]
    literal = tallies["corollary"]
    ok = not violations and trials >= C6_TRIALS and decided > 0 and alt > 0
    detail = (
        f"{trials} trials, {len(violations)} non-vacuous violations; comparison II decided {decided} "
        f"(vacuous {tallies['comparison II']['vacuous']} excluded); corollary literal reading decided "
        f"{literal['decided']} / vacuous {literal['vacuous']}, last-node N-2 reading decided {alt}"
    )
    assert report(6, ok, detail), violations[:3]


def test_criterion_07_invariance():
    cases = [draw_case(SEED + 7, t, 2, 20) for t in range(C7_PAIRS)]
    ext = _run(check_extension, cases)
    scale = _run(check_scaling, cases)
    ok = not ext and not scale
    detail = f"{C7_PAIRS} pairs x {C7_DRAWS} extension draws, plus solution rescaling; {len(ext) + len(scale)} changes"
    assert report(7, ok, detail)


def test_criterion_08_oracle_cross_check():
    rng = random.Random(SEED + 8)
    compared = skipped = mismatches = 0
    simple = True
    instances = 0
    while compared < C8_TRIALS:
        N = rng.randint(2, 30)
        J = matrix_of(random_coefficients(rng, N, (-8, "-1/16"), (-8, 8)))
        spec = eig_all(J)
        instances += 1
        simple &= spec.gaps > 0
        margin = C8_MARGIN * J.norm()
        for _ in range(4):
            if rng.random() < 0.2:
                # land close to a computed eigenvalue to exercise the margin rule
                lam = Fraction(rng.choice(spec.eigenvalues)) + Fraction(rng.randint(-4, 4), 10**7)
            else:
                lam = Fraction(rng.randint(-30 * 16, 30 * 16), 16)
            if min(abs(float(lam) - x) for x in spec.eigenvalues) < margin:
                skipped += 1
                continue
            compared += 1
            mismatches += count_below(J, lam) != spec.count_below(float(lam))
    ok = mismatches == 0 and simple
    detail = (
        f"{compared} comparisons on {instances} matrices ({skipped} within margin skipped), "
        f"{mismatches} mismatches, all spectra simple: {simple}"
    )
    assert report(8, ok, detail)


def test_criterion_09_worked_instance():
    c = make_coefficients([-1] * 5, [0] * 4)
    u0, u1 = solve_plus(c, -1), solve_minus(c, 1)
    w = wronskian_path(c, c, u0, u1)
    count = interval_count(w, 0, 4, Convention.LEFT_OPEN)
    J = matrix_of(c)
    e1, e0 = count_below(J, 1), count_below(J, -1, include_lambda=True)
    ok = (
        u0.values == (1, 0, -1, -1, 0, 1)
        and u1.values == (0, 1, -1, 0, 1, -1)
        and w.W == (-1, -1, 1, 1, 1)
        and w.marks == (0, 1, 0, 0)
        and count == 1
        and (e1, e0) == (2, 1)
    )
    detail = f"W = {tuple(int(x) for x in w.W)}, marks {w.marks}, #(0,4] = {count} = {e1} - {e0}"
    assert report(9, ok, detail)


def test_criterion_10_scale(tmp_path, capsys):
    rng = random.Random(SEED + 10)
    c = random_coefficients(rng, C10_N, (-8, "-1/16"), (-8, 8), mode="float")
    path = tmp_path / "big.json"
    path.write_text(json.dumps(c.to_json_dict()))
    # lam0 far below the spectrum makes u_+ grow past the double range
    lam0, lam1 = "-1000", "3/2"
    start = time.perf_counter()
    code = cli_main(["eigcount", str(path), "--lambda0", lam0, "--lambda1", lam1, "--emit", "json"])
    elapsed = time.perf_counter() - start
    out = json.loads(capsys.readouterr().out)
    u0 = solve_plus(c, -1000.0)
    max_exp = max(x.e for x in u0.values)
    finite = all(math.isfinite(x.m) for x in u0.values)
    ok = code == 0 and out["agree"] and elapsed < C10_SECONDS and max_exp > 1024 and finite
    detail = (
        f"N={C10_N} float eigcount in {elapsed:.3f}s, count {out.get('wronskian_count')} "
        f"(Sturm {out.get('spectral_count')}), max solution exponent 2^{max_exp} tracked without overflow, "
        f"sign_uncertain rate {out['sign_uncertain_rate']:.4f}"
    )
    assert report(10, ok, detail)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
