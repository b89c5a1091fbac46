"""Command line interface.

Subcommands: distance | variance | clt | figure1 | intensity | sine |
sample. Report commands write delimited tables (stdout, or --out CSV
with a PNG rendering alongside; --no-plot suppresses the PNG). Exit
codes: 0 success, 2 invalid input, 3 violated inequality.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import __version__, figures
from .arcset import make_arcset, symmetric_arc
from .counting import (
    BoundViolation,
    CHAIN_SLACK,
    count_distribution,
    distance_report,
    sine_comparison,
    variance_bounds,
    variance_by_formula,
    variance_difference,
)
from .intensity import conjugation_audit, intensity_audit
from .kernels import KernelSpec
from .nystrom import SpectrumError, build_quadrature, spectrum
from .sampler import count_in_window, sample_cue, write_batch
from .stats import DEFAULT_FIGURE_SEED, exact_gaussian_ks, reproduce_figure1

# agreement target between independent routes to the same quantity
AGREE_TOL = 1e-6

DEFAULT_AUDIT_SEED = 7


def _seed_value(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit int")
    return value


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(fh, header, rows) -> None:
    writer = csv.writer(fh)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _emit(args, header, rows, summary, plot=None) -> None:
    if args.out is not None:
        out = Path(args.out)
        with open(out, "w", newline="") as fh:
            _write_rows(fh, header, rows)
        if args.json or getattr(args, "always_json", False):
            with open(out.with_suffix(".json"), "w") as fh:
                json.dump(summary, fh, indent=2)
                fh.write("\n")
        if plot is not None and not args.no_plot:
            plot(out.with_suffix(".png"))
    elif args.json:
        print(json.dumps(summary, indent=2))
    else:
        _write_rows(sys.stdout, header, rows)


def _resolve_window(args, limit: float = math.pi):
    has_theta = getattr(args, "theta", None) is not None
    has_set = getattr(args, "set", None) is not None
    if has_theta == has_set:
        raise ValueError("give exactly one of --theta or --set")
    if has_theta:
        return symmetric_arc(args.theta)
    return make_arcset(json.loads(args.set), limit=limit)


def _cmd_distance(args) -> int:
    window = _resolve_window(args)
    rep = distance_report(args.n, args.m, window, order_hint=args.quad_order)
    header = [
        "n", "m", "window", "quad_order", "tv", "w1",
        "coupling", "cs", "hs", "closed_form",
    ]
    row = [
        rep.n, rep.m, rep.window.to_json(), rep.quadrature_order,
        rep.tv_exact, rep.w1_exact, rep.coupling_bound, rep.cs_bound,
        rep.hs_bound, rep.closed_form_bound,
    ]
    summary = dict(zip(header, row))
    _emit(args, header, [row], summary, lambda p: figures.save_distance_chain(rep, p))
    return 0


def _cmd_variance(args) -> int:
    rows = []
    dict_rows = []
    for theta in args.theta:
        window = symmetric_arc(theta)
        quad = build_quadrature(window, args.n * args.m, args.quad_order)
        dist = count_distribution(spectrum(KernelSpec.cue(args.n, args.m), window, quad))
        var_pmf = dist.variance
        var_formula = variance_by_formula(args.m * args.n, theta / args.m)
        lower, upper = variance_bounds(args.n, args.m, theta)
        if args.m > 1:
            diff_integral = variance_difference(args.n, args.m, window)
            plain = count_distribution(spectrum(KernelSpec.cue(args.n, 1), window))
            diff_pmf = var_pmf - plain.variance
        else:
            diff_integral = 0.0
            diff_pmf = 0.0
        if abs(var_formula - var_pmf) > AGREE_TOL:
            raise BoundViolation(
                f"variance routes disagree at theta={theta:g}: "
                f"formula {var_formula!r} vs spectrum {var_pmf!r}"
            )
        if lower is not None and var_formula < lower - CHAIN_SLACK:
            raise BoundViolation(f"variance below lower bound at theta={theta:g}")
        if var_formula > upper + CHAIN_SLACK:
            raise BoundViolation(f"variance above upper bound at theta={theta:g}")
        if abs(diff_integral - diff_pmf) > AGREE_TOL:
            raise BoundViolation(
                f"variance-difference routes disagree at theta={theta:g}: "
                f"integral {diff_integral!r} vs spectra {diff_pmf!r}"
            )
        cap = window.measure**2 / (4.0 * math.pi**2)
        rows.append([
            args.n, args.m, theta, var_formula, var_pmf,
            lower, upper, diff_integral, diff_pmf, cap,
        ])
        dict_rows.append({
            "n": args.n, "m": args.m, "theta": theta,
            "var_formula": var_formula, "var_pmf": var_pmf,
            "lower": lower, "upper": upper,
        })
    header = [
        "n", "m", "theta", "var_formula", "var_pmf", "lower", "upper",
        "diff_integral", "diff_pmf", "diff_cap",
    ]
    summary = {"rows": [dict(zip(header, r)) for r in rows]}
    _emit(args, header, rows, summary,
          lambda p: figures.save_variance_sweep(dict_rows, p))
    return 0


def _cmd_clt(args) -> int:
    reports = []
    for n in args.n:
        rep = exact_gaussian_ks(n, args.theta)
        if rep.in_hypothesis:
            if not (rep.lower_bound - CHAIN_SLACK
                    <= rep.exact_ks
                    <= rep.upper_bound + CHAIN_SLACK):
                raise BoundViolation(
                    f"KS sandwich failed at n={n}: "
                    f"{rep.lower_bound!r} <= {rep.exact_ks!r} <= {rep.upper_bound!r}"
                )
        reports.append(rep)
    header = ["n", "theta", "exact_ks", "lower", "upper", "in_hypothesis"]
    rows = [
        [r.n, r.theta, r.exact_ks, r.lower_bound, r.upper_bound, r.in_hypothesis]
        for r in reports
    ]
    summary = {"rows": [dict(zip(header, row)) for row in rows]}
    _emit(args, header, rows, summary,
          lambda p: figures.save_clt_sweep(reports, p))
    return 0


def _cmd_figure1(args) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_FIGURE_SEED
    result = reproduce_figure1(
        n=args.n, theta=args.theta, m=args.m,
        trials=args.trials, seed=seed, workers=args.workers,
    )
    header = ["t", "cdf_plain", "cdf_stretched", "gauss_cdf"]
    rows = result.curve_rows()
    args.always_json = True
    _emit(args, header, rows, result.summary(),
          lambda p: figures.save_figure1(result, p))
    return 0


def _cmd_intensity(args) -> int:
    seed = args.seed if args.seed is not None else DEFAULT_AUDIT_SEED
    rows, worst = intensity_audit(args.queries, seed)
    conj_max = conjugation_audit(args.conjugation_queries, seed + 1)
    header = ["n", "m", "k", "points", "rho_plain", "rho_stretched", "margin"]
    out_rows = [
        [n, m, k, json.dumps(list(pts)), plain, stretched, margin]
        for n, m, k, pts, plain, stretched, margin in rows
    ]
    summary = {
        "queries": args.queries,
        "seed": seed,
        "worst_margin": worst,
        "conjugation_queries": args.conjugation_queries,
        "conjugation_max_error": conj_max,
    }
    _emit(args, header, out_rows, summary,
          lambda p: figures.save_intensity_scatter(rows, p))
    return 0


def _cmd_sine(args) -> int:
    rows = []
    dict_rows = []
    for n in args.n:
        window = make_arcset([[-args.half, args.half]], limit=0.5 * n)
        w1, bound = sine_comparison(n, window)
        rows.append([n, window.measure, window.diam, w1, bound, w1 / bound])
        dict_rows.append({"n": n, "w1": w1, "bound": bound})
    header = ["n", "measure", "diam", "w1", "bound", "ratio"]
    summary = {"rows": [dict(zip(header, r)) for r in rows]}
    _emit(args, header, rows, summary,
          lambda p: figures.save_sine_sweep(dict_rows, p))
    return 0


def _cmd_sample(args) -> int:
    seed = args.seed if args.seed is not None else 0
    batch = sample_cue(args.dim, args.trials, seed, workers=args.workers)
    if args.theta is not None:
        window = symmetric_arc(args.theta)
        counts = count_in_window(batch, window, args.m)
    else:
        counts = None
    if args.out is not None:
        out = Path(args.out)
        write_batch(batch, out, out.with_suffix(".json"))
        if counts is not None:
            counts_path = out.with_name(out.stem + "_counts.csv")
            with open(counts_path, "w", newline="") as fh:
                _write_rows(fh, ["trial", "count"], list(enumerate(counts.tolist())))
        if not args.no_plot:
            figures.save_angle_histogram(batch, out.with_suffix(".png"))
    else:
        if counts is not None:
            _write_rows(sys.stdout, ["trial", "count"], list(enumerate(counts.tolist())))
        else:
            _write_rows(
                sys.stdout,
                ["trial", "angle"],
                [
                    (t, float(a))
                    for t in range(batch.trials)
                    for a in batch.angles[t]
                ],
            )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuecount",
        description="Counting statistics of circular-ensemble eigenvalue processes",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed_value, default=None,
                        help="unsigned 64-bit master seed")
    common.add_argument("--out", type=Path, default=None,
                        help="CSV output path (PNG/JSON siblings derived from it)")
    common.add_argument("--quad-order", type=int, default=None,
                        help="per-interval quadrature order override")
    common.add_argument("--json", action="store_true",
                        help="JSON summary instead of (or alongside) CSV")
    common.add_argument("--no-plot", action="store_true",
                        help="skip the PNG rendering")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("distance", parents=[common],
                       help="count-distance chain between plain and stretched windows")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--set", type=str, default=None,
                   help='window as JSON [[lo, hi], ...]')
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("variance", parents=[common],
                       help="count variance: formula vs spectrum, with bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--theta", type=float, nargs="+", required=True)
    p.set_defaults(func=_cmd_variance)

    p = sub.add_parser("clt", parents=[common],
                       help="exact KS distance from the Gaussian with rate bounds")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(func=_cmd_clt)

    p = sub.add_parser("figure1", parents=[common],
                       help="Monte Carlo CDF overlay of plain vs stretched counts")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--theta", type=float, default=0.2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_figure1)

    p = sub.add_parser("intensity", parents=[common],
                       help="joint-intensity domination and conjugation audits")
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--conjugation-queries", type=int, default=100)
    p.set_defaults(func=_cmd_intensity)

    p = sub.add_parser("sine", parents=[common],
                       help="bulk-limit count comparison with its rate bound")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--half", type=float, default=1.0,
                   help="window is [-half, half) in bulk-scale units")
    p.set_defaults(func=_cmd_sine)

    p = sub.add_parser("sample", parents=[common],
                       help="draw Haar eigenangle samples; optionally count a window")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=_cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except BoundViolation as exc:
        print(f"inequality violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, SpectrumError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
