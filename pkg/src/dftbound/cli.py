"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 input or domain error,
3 internal numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .core import CONTINUOUS, Pmf, SymmetricSupport, ft_report
from .curves import BoundViolation, bound_curve, figure1_table, figure2_table
from .errors import DftBoundError, QuadratureFailure
from .maximal import bound_continuous, bound_discrete, maximal_distribution
from .models import (
    BosonicParams,
    NanoParams,
    bosonic_pmf,
    composite_swap_pmf,
    gaussian_density,
    nano_density,
    swap_pmf,
)
from .quadrature import DEFAULT_QUADRATURE
from .sde import (
    SdeRunConfig,
    empirical_dft_check,
    sample_entropy_production,
    validate_against_eq22,
    validate_against_sde_law,
    write_batch_csv,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

DFT_TOL, IFT_TOL, IDENTITY_TOL, BOUND_TOL = 1e-10, 1e-8, 1e-8, 1e-9


class UsageError(DftBoundError, ValueError):
    pass


def parse_values(text: str) -> list[float]:
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    if ":" in text:
        try:
            start, stop, step = (float(t) for t in text.split(":"))
        except ValueError:
            raise UsageError(f"bad range {text!r}; expected start:stop:step")
        if step <= 0 or stop < start:
            raise UsageError(f"bad range {text!r}")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [start + k * step for k in range(n)]
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad value list {text!r}")


def parse_params(text: str | None) -> dict[str, str]:
    out = {}
    for item in (text or "").split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not key=value")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def write_csv(path, columns, rows) -> None:
    rows = sorted(rows, key=lambda r: r["mean"]) if rows and "mean" in rows[0] else rows
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])


def write_manifest(out_path, argv, seed=None) -> None:
    manifest = {
        "command_line": ["dftbound", *argv],
        "seed": seed,
        "tolerances": {
            "quadrature_rel_tol": DEFAULT_QUADRATURE.rel_tol,
            "quadrature_abs_tol": DEFAULT_QUADRATURE.abs_tol,
            "max_halfwidth": DEFAULT_QUADRATURE.max_halfwidth,
            "dft": DFT_TOL,
            "ift": IFT_TOL,
            "identity": IDENTITY_TOL,
            "bound": BOUND_TOL,
        },
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    with open(f"{out_path}.manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _support_from_args(args):
    if args.support == "continuous":
        return CONTINUOUS
    if args.support == "lattice":
        return SymmetricSupport.lattice(args.delta)
    if not args.support_file:
        raise UsageError("--support file needs --support-file")
    values = np.loadtxt(args.support_file, delimiter=",", ndmin=1).ravel()
    return SymmetricSupport.finite(values)


def cmd_bound_curve(args, argv) -> int:
    support = _support_from_args(args)
    means = parse_values(args.means)
    rows = bound_curve(support, means)
    write_csv(args.out, ["mean", "lambda", "bound_nats"], rows)
    write_manifest(args.out, argv)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_figure(args, argv) -> int:
    try:
        if args.which == 1:
            rows = figure1_table()
            columns = ["mean", "H_bosonic", "M_bound"]
        else:
            rows = figure2_table()
            columns = ["mean", "h_nano_d1", "h_nano_d2", "h_nano_d3", "h_gauss", "m_bound"]
    except DftBoundError as exc:
        # the figure grids are fixed, so any solver error here is internal
        raise QuadratureFailure(f"figure {args.which}: {exc}") from exc
    write_csv(args.out, columns, rows)
    write_manifest(args.out, argv)
    print(f"wrote figure {args.which} ({len(rows)} rows) to {args.out}")
    return EXIT_OK


def _get(params, key, cast=float, default=None):
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key!r}")
        return default
    try:
        return cast(params[key])
    except ValueError:
        raise UsageError(f"bad value for {key!r}: {params[key]!r}")


def build_model(model: str, params: dict):
    """Distribution and bound evaluator for ``verify``."""
    if model == "bosonic":
        delta = _get(params, "delta", default=1.0)
        dist = bosonic_pmf(BosonicParams(delta, _get(params, "alpha")))
        return dist, lambda m: bound_discrete(SymmetricSupport.lattice(delta), m).bound_nats
    if model == "gaussian":
        return gaussian_density(_get(params, "mean")), lambda m: bound_continuous(m).bound_nats
    if model == "nano":
        dist = nano_density(NanoParams(_get(params, "d", int), _get(params, "alpha")))
        return dist, lambda m: bound_continuous(m).bound_nats
    if model in ("swap", "swap-composite"):
        if model == "swap":
            dist = swap_pmf(_get(params, "a"))
        else:
            dist = composite_swap_pmf(_get(params, "b"))
        return dist, lambda m: bound_discrete(dist.support, m).bound_nats
    if model == "maximal":
        lam = _get(params, "lambda")
        kind = params.get("support", "continuous")
        if kind == "continuous":
            return maximal_distribution(CONTINUOUS, lam), lambda m: bound_continuous(m).bound_nats
        if kind == "lattice":
            support = SymmetricSupport.lattice(_get(params, "delta", default=1.0))
        else:
            raise UsageError("maximal support must be 'continuous' or 'lattice'")
        return maximal_distribution(support, lam), lambda m: bound_discrete(support, m).bound_nats
    raise UsageError(f"unknown model {model!r}")


def verify_report(model: str, params: dict) -> dict:
    dist, bound_of = build_model(model, params)
    rep = ft_report(dist)
    bound = bound_of(rep.mean)
    gap = bound - rep.entropy
    passed = rep.passes(DFT_TOL, IFT_TOL, IDENTITY_TOL) and gap >= -BOUND_TOL
    return {
        "model": model,
        "params": params,
        "max_dft_violation": rep.max_dft_violation,
        "ift_value": rep.ift_value,
        "identity_gap": rep.identity_gap,
        "mean": rep.mean,
        "entropy": rep.entropy,
        "bound": bound,
        "gap_to_bound": gap,
        "kind": "discrete" if isinstance(dist, Pmf) else "continuous",
        "passed": bool(passed),
    }


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, default=float))
        return
    for key, value in report.items():
        if isinstance(value, float):
            value = f"{value:.12g}"
        print(f"{key:>18}: {value}")


def cmd_verify(args, argv) -> int:
    report = verify_report(args.model, parse_params(args.params))
    _print_report(report, args.json)
    return EXIT_OK if report["passed"] else EXIT_CHECK


def cmd_simulate(args, argv) -> int:
    cfg = SdeRunConfig(
        d=args.d,
        T1=args.T1,
        T2=args.T2,
        gamma_t=args.gamma_t,
        n_samples=args.n,
        seed=args.seed,
        method=args.method,
        dt=args.dt,
    )
    batch = sample_entropy_production(cfg)
    write_batch_csv(batch, args.out)
    write_manifest(args.out, argv, seed=args.seed)
    report = {"n_samples": cfg.n_samples, "mean": float(np.mean(batch.sigma_values))}
    if cfg.degenerate:
        print("warning: T1 == T2, every sample is zero; fit skipped", file=sys.stderr)
        report["degenerate"] = True
        _print_report(report, args.json)
        return EXIT_OK
    dft = empirical_dft_check(batch)
    fit = (validate_against_eq22 if args.law == "nano" else validate_against_sde_law)(batch)
    report.update(
        {
            "dft_max_violation": dft.max_violation,
            "dft_standard_error": dft.standard_error,
            "dft_max_z": dft.max_z,
            "dft_bin_pairs": dft.n_pairs,
            "law": args.law,
            "bessel_order": fit.order,
            "alpha": fit.alpha,
            "chi2": fit.statistic,
            "dof": fit.dof,
            "p_value": fit.p_value,
            "fit_accepted": fit.accepted,
            "dft_accepted": dft.within(3.0),
        }
    )
    _print_report(report, args.json)
    return EXIT_OK if fit.accepted and dft.within(3.0) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dftbound",
        description="Entropy bounds for entropy production under the detailed fluctuation theorem.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound-curve", help="sweep the maximal-entropy bound over means")
    p.add_argument("--support", choices=["continuous", "lattice", "file"], default="continuous")
    p.add_argument("--delta", type=float, default=1.0, help="lattice spacing")
    p.add_argument("--support-file", help="comma/newline separated symmetric support values")
    p.add_argument("--means", required=True, help="start:stop:step or comma list")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bound_curve)

    p = sub.add_parser("figure", help="write figure data as CSV")
    p.add_argument("--which", type=int, choices=[1, 2], required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="fluctuation-theorem checks and bound gap for a model")
    p.add_argument(
        "--model",
        required=True,
        choices=["bosonic", "gaussian", "nano", "swap", "swap-composite", "maximal"],
    )
    p.add_argument("--params", default="", help="key=value pairs, comma separated")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo oracle for the nanoparticle model")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--T1", type=float, required=True)
    p.add_argument("--T2", type=float, required=True)
    p.add_argument("--gamma-t", type=float, required=True)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=["exact_transition", "euler_maruyama"], default="exact_transition")
    p.add_argument("--dt", type=float)
    p.add_argument(
        "--law",
        choices=["nano", "sde"],
        default="nano",
        help="Bessel order d+1/2 (nano) or d-1/2 (sde) for the goodness-of-fit test",
    )
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, argv)
    except (QuadratureFailure, BoundViolation) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DftBoundError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
