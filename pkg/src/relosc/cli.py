"""``relosc`` command line: eigcount, verify, fuzz, spectrum, gen.

Exit codes: 0 success, 1 disagreement or property violation, 2 usage, parse
or validation error, 3 undecidable sign (float mode) or eigensolver failure.
Wall time goes to stderr so stdout reports are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import (
    CoefficientFormatError,
    InvalidCoefficients,
    InvalidRange,
    coefficients_from_dict,
    matrix_of,
)
from .properties import draw_case, run_suite
from .relative import count_in_interval_from_path, interval_path, verify_main
from .scalar import EXACT, FLOAT, MODES, SignUncertain, ZERO_BAND_ENV, format_scalar, to_scalar
from .spectral import NoConvergence, count_below, count_window, eig_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNCERTAIN = 0, 1, 2, 3
N_LIMIT = (2, 2000)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    mode: str = EXACT
    seed: int = 0
    trials: int = 100
    n_min: int = 2
    n_max: int = 12
    emit: str = "human"
    zero_band: int | None = None

    def check(self):
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if not (N_LIMIT[0] <= self.n_min <= self.n_max <= N_LIMIT[1]):
            raise UsageError(f"need {N_LIMIT[0]} <= --n-min <= --n-max <= {N_LIMIT[1]}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if self.zero_band is not None and self.zero_band >= 0:
            raise UsageError("--zero-band must be a negative exponent")

    def to_dict(self) -> dict:
        return dict(vars(self))


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CoefficientFormatError(f"{path}: malformed JSON: {exc}") from None


def _parse_lambda(text, mode):
    try:
        return to_scalar(text, mode)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse spectral parameter {text!r}") from None


# ---------------------------------------------------------------------------
# output


def _emit(report: dict, fmt: str, rows=None, human=None):
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    elif fmt == "csv":
        rows = rows or []
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print("\n".join(human or []))


def _report(command, config, **body):
    return {"command": command, "config": config.to_dict(), **body}


# ---------------------------------------------------------------------------
# commands


def cmd_eigcount(args, config):
    c = coefficients_from_dict(_load_json(args.file), config.mode)
    config.mode = c.mode
    lam0 = _parse_lambda(args.lambda0, c.mode)
    lam1 = _parse_lambda(args.lambda1, c.mode)
    if not lam0 < lam1:
        raise UsageError("need --lambda0 < --lambda1")
    left_closed, right_closed = (b == "closed" for b in args.bounds)
    path = interval_path(c, lam0, lam1)
    uncertain_sites = len(path.uncertain | path.u0.uncertain | path.u1.uncertain)
    sites = 3 * (c.N + 1)
    rate = uncertain_sites / sites
    J = matrix_of(c)
    left = "[" if left_closed else "("
    right = "]" if right_closed else ")"
    interval = f"{left}{format_scalar(lam0)}, {format_scalar(lam1)}{right}"
    base = {"interval": interval, "N": c.N, "sign_uncertain_rate": rate}
    try:
        if path.sign_uncertain:
            raise SignUncertain(f"{uncertain_sites} sign decisions fell inside the zero band")
        wcount = count_in_interval_from_path(path, left_closed, right_closed)
        scount = count_window(J, lam0, lam1, include0=not left_closed, include1=right_closed)
    except SignUncertain as exc:
        report = _report("eigcount", config, **base, error=str(exc), low=exc.low, high=exc.high)
        low = "?" if exc.low is None else exc.low
        high = "?" if exc.high is None else exc.high
        _emit(report, config.emit, [base | {"error": str(exc)}], [f"undecided: {exc}", f"range: {low}..{high}"])
        return EXIT_UNCERTAIN
    agree = wcount == scount
    report = _report("eigcount", config, **base, wronskian_count=wcount, spectral_count=scount, agree=agree)
    row = {"interval": interval, "wronskian_count": wcount, "spectral_count": scount, "agree": agree}
    human = [
        f"eigenvalues in {interval}: {wcount} (Wronskian nodes), {scount} (Sturm count)",
        "agree" if agree else "DISAGREE",
    ]
    if c.mode == FLOAT:
        human.append(f"sign_uncertain rate: {rate:.4f}")
    _emit(report, config.emit, [row], human)
    return EXIT_OK if agree else EXIT_FAIL


def _load_pair(path, mode):
    obj = _load_json(path)
    if not isinstance(obj, dict) or "J0" not in obj or "J1" not in obj:
        raise CoefficientFormatError("pair file needs fields 'J0' and 'J1'")
    c0 = coefficients_from_dict(obj["J0"], mode)
    c1 = coefficients_from_dict(obj["J1"], mode or c0.mode)
    if c0.N != c1.N:
        raise CoefficientFormatError(f"J0 and J1 differ in size: N={c0.N} vs N={c1.N}")
    return c0, c1


def cmd_verify(args, config):
    c0, c1 = _load_pair(args.file, config.mode)
    config.mode = c0.mode
    lam0 = _parse_lambda(args.lambda0, c0.mode)
    lam1 = _parse_lambda(args.lambda1, c0.mode)
    try:
        reports = verify_main(c0, c1, lam0, lam1)
    except SignUncertain as exc:
        report = _report("verify", config, error=str(exc), low=exc.low, high=exc.high)
        _emit(report, config.emit, [{"error": str(exc)}], [f"undecided: {exc}"])
        return EXIT_UNCERTAIN
    rows = []
    for r in reports:
        d = r.to_dict()
        d.pop("diagnostics")
        rows.append(d)
    ok = all(r.agree for r in reports)
    report = _report(
        "verify", config, lambda0=format_scalar(lam0), lambda1=format_scalar(lam1), cases=rows, passed=ok
    )
    human = [
        f"{r.label:<22} {r.variant.spectral_label():<40} {r.wronskian_count:>4} {r.spectral_count:>4}  "
        + ("ok" if r.agree else "DISAGREE")
        for r in reports
    ]
    human.append(f"{sum(r.agree for r in reports)}/{len(reports)} agree")
    _emit(report, config.emit, rows, human)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fuzz(args, config):
    result = run_suite(config.seed, config.trials, config.n_min, config.n_max, config.mode)
    report = _report("fuzz", config, **result.to_dict())
    rows = [{"check": name, **entry} for name, entry in result.checks.items()]
    human = [f"{name:<20} ran {e['ran']:>6}  violations {e['violations']:>4}  uncertain {e['uncertain']:>4}" for name, e in result.checks.items()]
    for name, e in result.vacuous.items():
        human.append(f"  {name}: {e['decided']} decided, {e['vacuous']} vacuous (not counted as passes)")
    for v in result.violations:
        human.append(f"VIOLATION {v['check']} trial {v['trial']}: {'; '.join(v['problems'])}")
        human.append("  reproducer: " + json.dumps(v["reproducer"], sort_keys=True))
    human.append("PASS" if result.passed else "FAIL")
    _emit(report, config.emit, rows, human)
    return EXIT_OK if result.passed else EXIT_FAIL


def _midpoint_checks(J, eigs, mode):
    points = [eigs[0] - 1.0] + [(x + y) / 2 for x, y in zip(eigs, eigs[1:])] + [eigs[-1] + 1.0]
    out = []
    for expected, p in enumerate(points):
        lam = Fraction(p) if mode == EXACT else p
        got = count_below(J, lam)
        out.append({"lambda": p, "expected": expected, "sturm": got, "agree": got == expected})
    return out


def cmd_spectrum(args, config):
    c = coefficients_from_dict(_load_json(args.file), config.mode)
    config.mode = c.mode
    J = matrix_of(c)
    try:
        spec = eig_all(J)
    except NoConvergence as exc:
        _emit(_report("spectrum", config, error=str(exc)), config.emit, [{"error": str(exc)}], [f"no convergence: {exc}"])
        return EXIT_UNCERTAIN
    try:
        checks = _midpoint_checks(J, spec.eigenvalues, c.mode)
    except SignUncertain as exc:
        _emit(_report("spectrum", config, error=str(exc)), config.emit, [{"error": str(exc)}], [f"undecided: {exc}"])
        return EXIT_UNCERTAIN
    ok = all(x["agree"] for x in checks)
    report = _report(
        "spectrum",
        config,
        eigenvalues=list(spec.eigenvalues),
        min_gap=spec.gaps if spec.gaps != float("inf") else None,
        sturm_checks=checks,
        agree=ok,
    )
    rows = [{"index": i, "eigenvalue": repr(x)} for i, x in enumerate(spec.eigenvalues)]
    human = [f"{i:>4}  {x:.12g}" for i, x in enumerate(spec.eigenvalues)]
    human.append("Sturm counts at midpoints: " + ("agree" if ok else "DISAGREE"))
    _emit(report, config.emit, rows, human)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args, config):
    case = draw_case(config.seed, 0, config.n_min, config.n_max, config.mode)
    if args.single:
        obj = case.ops[0].to_json_dict()
    else:
        obj = {
            "J0": case.ops[0].to_json_dict(),
            "J1": case.ops[1].to_json_dict(),
            "lambda0": format_scalar(case.lam0),
            "lambda1": format_scalar(case.lam1),
        }
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default=None, help="arithmetic (default: from file, else exact)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--n-min", type=int, default=2)
    common.add_argument("--n-max", type=int, default=12)
    common.add_argument("--emit", choices=("json", "csv", "human"), default="human")
    common.add_argument("--zero-band", type=int, default=None, help="float zero band exponent (default -40)")

    parser = argparse.ArgumentParser(prog="relosc", description="Relative oscillation counts for Jacobi matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigcount", parents=[common], help="eigenvalues in an interval by Wronskian nodes")
    p.add_argument("file")
    p.add_argument("--lambda0", required=True)
    p.add_argument("--lambda1", required=True)
    p.add_argument("--bounds", nargs=2, choices=("open", "closed"), default=("open", "open"), metavar=("LEFT", "RIGHT"))
    p.set_defaults(func=cmd_eigcount)

    p = sub.add_parser("verify", parents=[common], help="check all eight identities on a pair file")
    p.add_argument("file")
    p.add_argument("--lambda0", default=None)
    p.add_argument("--lambda1", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", parents=[common], help="run the randomized property portfolio")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("spectrum", parents=[common], help="all eigenvalues with Sturm cross-checks")
    p.add_argument("file")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("gen", parents=[common], help="write a random pair (or single) coefficient file")
    p.add_argument("--single", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def _fill_verify_lambdas(args):
    if args.command != "verify" or (args.lambda0 is not None and args.lambda1 is not None):
        return
    obj = _load_json(args.file)
    for name in ("lambda0", "lambda1"):
        if getattr(args, name) is None:
            if not isinstance(obj, dict) or name not in obj:
                raise UsageError(f"--{name} is required unless the pair file provides it")
            setattr(args, name, str(obj[name]))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        mode=args.mode or EXACT,
        seed=args.seed,
        trials=args.trials,
        n_min=args.n_min,
        n_max=args.n_max,
        emit=args.emit,
        zero_band=args.zero_band,
    )
    start = time.perf_counter()
    saved_band = os.environ.get(ZERO_BAND_ENV)
    try:
        config.check()
        if config.zero_band is not None:
            os.environ[ZERO_BAND_ENV] = str(config.zero_band)
        if args.command in ("eigcount", "verify", "spectrum") and args.mode is None:
            config.mode = None  # let the file decide
        _fill_verify_lambdas(args)
        code = args.func(args, config)
    except (UsageError, CoefficientFormatError, InvalidCoefficients, InvalidRange) as exc:
        print(f"relosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SignUncertain as exc:
        print(f"relosc: undecided: {exc}", file=sys.stderr)
        return EXIT_UNCERTAIN
    except NoConvergence as exc:
        print(f"relosc: no convergence: {exc}", file=sys.stderr)
        return EXIT_UNCERTAIN
    finally:
        if saved_band is None:
            os.environ.pop(ZERO_BAND_ENV, None)
        else:
            os.environ[ZERO_BAND_ENV] = saved_band
    print(f"wall time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
