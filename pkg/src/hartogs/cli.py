"""Command-line front end.

    hartogs info --type V
    hartogs coeffs --type VI --mu 9/14
    hartogs conjecture --type V --grid 1/100:1/100:69/100 --expect all-positive
    hartogs ke solve --type IV --param 3 --k 1 --mu 3/4 --grid 0:0.1:0.9
    hartogs ke eval-g --type IV --param 3 --k 1 --mu 3/4 --points pts.json --residual
    hartogs verify --suite all --seed 0

Exit status: 0 on success, 1 when a verification or residual check fails,
2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import bergman, domains, kemetric, verify
from .exact import format_rational, parse_rational
from .numerics import QuadratureSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _mu_arg(text: str) -> Fraction:
    try:
        mu = parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if mu <= 0:
        raise argparse.ArgumentTypeError("mu must be positive")
    return mu


def parse_grid(spec: str) -> tuple:
    """``start:step:end`` as exact rationals (decimals allowed), end inclusive."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must look like start:step:end, got {spec!r}")
    try:
        start, step, end = (Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad grid {spec!r}: {exc}") from None
    if step <= 0 or end < start:
        raise UsageError("grid needs step > 0 and end >= start")
    return tuple(bergman.rational_grid(start, step, end))


def _descriptor(args) -> domains.DomainDescriptor:
    params = []
    for chunk in args.param or []:
        params += [p for p in chunk.split(",") if p.strip()]
    try:
        return domains.make_descriptor(args.type, *params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _tolerances(args):
    if getattr(args, "tolerance", None) is None:
        return {}
    t = args.tolerance
    return {"quadrature": QuadratureSpec(abs_tol=t, rel_tol=t), "root_tol": t}


def _problem(args):
    desc = _descriptor(args)
    mu = args.mu if args.mu is not None else desc.mu0
    try:
        return kemetric.build_problem(desc, args.k, mu, **_tolerances(args))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# ----------------------------------------------------------------------------
# subcommands

def cmd_info(args) -> int:
    _emit(json.dumps(_descriptor(args).as_dict(), indent=2), args.output)
    return EXIT_OK


def cmd_coeffs(args) -> int:
    desc = _descriptor(args)
    mu = args.mu if args.mu is not None else desc.mu0
    _emit(json.dumps(bergman.coefficient_table(desc, mu).as_dict(), indent=2), args.output)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    desc = _descriptor(args)
    if args.grid:
        mus = parse_grid(args.grid)
        if mus[0] <= 0:
            raise UsageError("mu grid must be positive")
    else:
        mus = (args.mu if args.mu is not None else desc.mu0,)
    reports = bergman.conjecture_scan(desc, mus)
    _emit(json.dumps([r.as_dict() for r in reports], indent=2), args.output)
    if args.expect == "all-positive":
        return EXIT_OK if all(r.all_positive for r in reports) else EXIT_FAIL
    if args.expect == "critical":
        return EXIT_OK if all(r.matches_critical_pattern for r in reports) else EXIT_FAIL
    return EXIT_OK


def cmd_ke_solve(args) -> int:
    problem = _problem(args)
    grid = [float(x) for x in parse_grid(args.grid)]
    if grid[0] < 0 or grid[-1] >= 1:
        raise UsageError("KE grid must lie in [0, 1)")
    profile = kemetric.solve_profile(problem, grid)
    _emit(profile.to_json() if args.format == "json" else profile.to_csv(), args.output)
    return EXIT_OK


def _complex_entry(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
        return complex(v[0], v[1])
    raise UsageError(f"coordinate must be a number or [re, im], got {v!r}")


def _shape(desc):
    p = desc.params
    return {"I": tuple(p), "II": (p[0], p[0]) if p else None, "III": (p[0], p[0]) if p else None,
            "IV": (p[0],) if p else None, "V": (16,), "VI": (27,)}[desc.family]


def read_points(desc, k, path) -> list:
    """Points file: a JSON list of {"z": [...], "Z": [...]}, with z flattened row-major."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read points from {path}: {exc}") from None
    if not isinstance(raw, list):
        raise UsageError("points file must hold a JSON list")
    shape = _shape(desc)
    out = []
    for i, item in enumerate(raw):
        try:
            z = np.array([_complex_entry(v) for v in item["z"]], dtype=complex)
            Z = np.array([_complex_entry(v) for v in item["Z"]], dtype=complex)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"point {i}: expected keys 'z' and 'Z' ({exc})") from None
        if z.size != int(np.prod(shape)) or Z.size != k:
            raise UsageError(f"point {i}: need {int(np.prod(shape))} base and {k} fiber coordinates")
        out.append((z.reshape(shape), Z))
    return out


def cmd_ke_eval_g(args) -> int:
    problem = _problem(args)
    desc = problem.desc
    if args.closed_form and problem.mu != desc.mu0:
        raise UsageError("--closed-form needs mu = mu0")
    gen = kemetric.GeneratingFunction(problem, closed_form=args.closed_form)
    rows, failed = [], False
    for i, (z, Z) in enumerate(read_points(desc, problem.k, args.points)):
        if not domains.hartogs_contains(desc, problem.k, problem.mu, z, Z):
            raise UsageError(f"point {i} is outside the Hartogs domain")
        N = domains.generic_norm_self(desc, z)
        row = {"index": i, "N": N, "X": float(np.vdot(Z, Z).real) / N ** float(problem.mu), "g": gen(z, Z)}
        if args.residual:
            res = kemetric.ma_residual(gen, z, Z, step=args.step)
            row["residual"] = res
            row["pass"] = res <= args.max_residual
            failed |= not row["pass"]
        rows.append(row)
    _emit(json.dumps(rows, indent=2), args.output)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify(args) -> int:
    try:
        names = verify.checks_in(args.suite)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    results = verify.run_suite(args.suite, seed=args.seed, trials=args.trials,
                               workers=kemetric.worker_count())
    for r in results:
        print(r.line())
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(names)} passed")
    return EXIT_OK if passed == len(names) else EXIT_FAIL


# ----------------------------------------------------------------------------

def _domain_flags(p, mu=True, k=False):
    p.add_argument("--type", required=True, help="family: I, II, III, IV, V, VI")
    p.add_argument("--param", action="append", help="family parameters, e.g. --param 2,3")
    if mu:
        p.add_argument("--mu", type=_mu_arg, help="exact rational exponent (default mu0)")
    if k:
        p.add_argument("--k", type=int, default=1, help="fiber dimension")
        p.add_argument("--tolerance", type=float, help="quadrature and root-finding tolerance")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hartogs", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="descriptor invariants as JSON")
    _domain_flags(p, mu=False)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("coeffs", help="exact Bergman coefficients as JSON")
    _domain_flags(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("conjecture", help="sign patterns of the coefficients over a mu grid")
    _domain_flags(p)
    p.add_argument("--grid", help="rational grid start:step:end, e.g. 1/100:1/100:69/100")
    p.add_argument("--expect", choices=("critical", "all-positive"),
                   help="exit 1 unless every report has this pattern")
    p.set_defaults(func=cmd_conjecture)

    ke = sub.add_parser("ke", help="Kähler-Einstein potential")
    kesub = ke.add_subparsers(dest="ke_command", required=True)
    p = kesub.add_parser("solve", help="profile X, Y0, Y, h on a grid")
    _domain_flags(p, k=True)
    p.add_argument("--grid", required=True, help="start:step:end inside [0, 1)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_ke_solve)

    p = kesub.add_parser("eval-g", help="potential g at points read from JSON")
    _domain_flags(p, k=True)
    p.add_argument("--points", required=True, help='JSON list of {"z": [...], "Z": [...]}')
    p.add_argument("--closed-form", action="store_true", help="use the critical closed form")
    p.add_argument("--residual", action="store_true", help="also report the Monge-Ampère residual")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--max-residual", type=float, default=5e-3)
    p.set_defaults(func=cmd_ke_eval_g)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", default="all", help="all, " + ", ".join(verify.suites()))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, help="override the per-check trial count")
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hartogs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except domains.DomainError as exc:
        print(f"hartogs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
