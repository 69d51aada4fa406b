"""effdiff command line: effect, ratio-curve, iris-demo, verify.

Exit codes: 0 success, 1 verification FAIL, 2 usage error, 3 data/parse
error, 4 numerical failure (degenerate input, domain error, search failure).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import _backend
from .confidence import CiRequest, with_ci
from .curves import CurveGridSpec, ratio_curve, write_svg
from .effect_sizes import EffectKind, estimate
from .errors import EffDiffError
from .io import ParseError, parse_inline, parse_number, parse_summary, read_column, read_groups, write_columns
from .iris import iris_table
from .verify_mc import (
    PopulationSpec,
    consistency_passes,
    run_bias_check,
    run_consistency_check,
    run_coverage_check,
    run_variance_check,
)

EXIT_FAIL, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 1, 2, 3, 4

_KINDS = {
    ("glass", False): EffectKind.GLASS_DELTA,
    ("glass", True): EffectKind.GLASS_DELTA,
    ("d", False): EffectKind.HEDGES_D,
    ("d", True): EffectKind.HEDGES_G,
    ("e", False): EffectKind.E,
    ("e", True): EffectKind.E_BIASED,
    ("c", False): EffectKind.C,
    ("c", True): EffectKind.C_BIASED,
}


class UsageError(Exception):
    pass


def _fmt15(v) -> str:
    return "NA" if v is None else f"{v:.15g}"


def format_result(result, fmt: str) -> str:
    if fmt == "vector":
        lo, hi = result.ci if result.ci is not None else (None, None)
        return " ".join("NA" if v is None else f"{v:.7f}" for v in (result.estimate, result.variance, lo, hi))
    if fmt == "json":
        return json.dumps(result.as_dict())
    rows = [
        ("kind", result.kind.value),
        ("estimate", _fmt15(result.estimate)),
        ("variance", _fmt15(result.variance)),
    ]
    if result.ci is not None:
        rows.append(("CI", f"[ {_fmt15(result.ci[0])} , {_fmt15(result.ci[1])} ]"))
        rows.append(("alpha", f"{result.alpha:g}"))
    rows.append(("df", _fmt15(result.df)))
    for d in result.diagnostics:
        rows.append(("note", d))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _load_inputs(args, kind: EffectKind):
    one_sample = kind.one_sample
    if one_sample and args.constant is None:
        raise UsageError("c and c-prime need --constant")
    if not one_sample and args.constant is not None:
        raise UsageError("--constant only applies to c and c-prime")

    if args.csv:
        if args.group_col:
            if not args.groups or len(args.groups) != (1 if one_sample else 2):
                raise UsageError("--groups needs one label for c kinds, two otherwise")
            if not args.value_col:
                raise UsageError("--group-col needs --value-col")
            groups = read_groups(args.csv, args.value_col, args.group_col, args.groups)
            a = groups[0]
            b = groups[1] if len(groups) > 1 else None
        else:
            if args.col_a is None:
                raise UsageError("--csv needs --col-a (or --group-col/--value-col/--groups)")
            a = read_column(args.csv, args.col_a)
            b = read_column(args.csv, args.col_b) if args.col_b is not None else None
    else:
        if args.a is None:
            raise UsageError("give --a (and --b), or --csv")
        parse = parse_summary if args.summary else parse_inline
        a = parse(args.a)
        b = parse(args.b) if args.b is not None else None

    if one_sample:
        if b is not None:
            raise UsageError("c kinds take one group plus --constant")
        return a, parse_number(args.constant, " (--constant)")
    if b is None:
        raise UsageError("two-sample kinds need a second group")
    return a, b


def cmd_effect(args) -> int:
    if args.kind == "c-prime":
        kind = EffectKind.C_PRIME
    else:
        kind = _KINDS[(args.kind, args.biased)]
    a, other = _load_inputs(args, kind)
    if kind is EffectKind.C_PRIME:
        from .effect_sizes import effect_c

        result = effect_c(a, other, unbiased=not args.biased, reverse=True)
    else:
        result = estimate(kind, a, other)
    if kind is not EffectKind.GLASS_DELTA:
        result = with_ci(result, a, other, CiRequest(alpha=args.alpha))
    print(format_result(result, args.format))
    return 0


def cmd_ratio_curve(args) -> int:
    grid = CurveGridSpec(
        mean1=args.mean1,
        mean2=args.mean2,
        n2=args.n2,
        s1_sq=args.s1_sq,
        s2_sq_range=(args.s2_start, args.s2_stop, args.s2_step),
        n1_values=tuple(int(v) for v in parse_inline(args.n1)),
    )
    curve = ratio_curve(grid)
    write_columns(args.out, {k: list(v) for k, v in curve.items()})
    if args.svg:
        write_svg(args.svg, curve)
    print(f"wrote {len(curve['s2_sq'])} rows to {args.out}")
    return 0


def cmd_iris_demo(args) -> int:
    rows = iris_table()
    if args.format == "csv":
        print("characteristic,pair,d,e,d_over_e,sd_ratio")
        for r in rows:
            print(",".join([r["characteristic"], r["pair"]] + [repr(r[k]) for k in ("d", "e", "d_over_e", "sd_ratio")]))
        return 0
    print(f"{'characteristic':<14} {'pair':<24} {'d':>10} {'e':>10} {'d/e':>8} {'sd ratio':>9}")
    for r in rows:
        print(
            f"{r['characteristic']:<14} {r['pair']:<24} {r['d']:>10.4f} {r['e']:>10.4f} "
            f"{r['d_over_e']:>8.4f} {r['sd_ratio']:>9.4f}"
        )
    return 0


def _verdict(passed) -> str:
    return "PASS" if passed else ("FAIL" if passed is False else "N/A")


def cmd_verify(args) -> int:
    kind = {"d": EffectKind.HEDGES_D, "e": EffectKind.E, "c": EffectKind.C, "c-prime": EffectKind.C_PRIME}[args.kind]
    mu2 = args.constant if kind.one_sample and args.constant is not None else args.mu2
    spec = PopulationSpec(
        mu1=args.mu1,
        mu2=mu2,
        sigma1_sq=args.var1,
        sigma2_sq=args.var2,
        n1=args.n1,
        n2=args.n2,
        replications=args.reps,
        seed=args.seed,
    )
    if args.check == "consistency":
        schedule = [int(v) for v in parse_inline(args.schedule)]
        reports = run_consistency_check(spec, kind, schedule, args.threshold)
        for r in reports:
            print(json.dumps(r.as_dict()))
        ok = consistency_passes(reports, args.threshold)
        for r in reports:
            print(f"n1={r.n1} n2={r.n2} mse={r.mse:.6g} se={r.standard_errors['mse']:.3g}")
        print(f"{_verdict(ok)} consistency {kind.value}: MSE strictly decreasing over {schedule}")
        return 0 if ok else EXIT_FAIL
    if args.check == "bias":
        rep = run_bias_check(spec, kind)
        line = f"mean={rep.mean_estimate:.6g} target={rep.target_parameter:.6g} se={rep.standard_errors['mean']:.3g}"
    elif args.check == "variance":
        rep = run_variance_check(spec, kind)
        fv = rep.formula_variance_mean
        line = f"empirical={rep.empirical_variance:.6g} formula={'NA' if fv is None else f'{fv:.6g}'}"
    else:
        rep = run_coverage_check(spec, kind, args.alpha)
        line = f"coverage={rep.ci_coverage:.4f} nominal={1 - args.alpha:.4f} se={rep.standard_errors['coverage']:.3g}"
    print(json.dumps(rep.as_dict()))
    print(f"{_verdict(rep.passed)} {args.check} {kind.value}: {line}")
    return 0 if rep.passed is not False else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="effdiff", description="Effect sizes of mean differences with noncentral-t CIs")
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({_backend.NAME} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("effect", help="effect size, variance and CI for data or summaries")
    e.add_argument("--kind", choices=["glass", "d", "e", "c", "c-prime"], default="e")
    e.add_argument("--biased", action="store_true", help="report g / e_biased / c_biased instead")
    e.add_argument("--alpha", type=float, default=0.05)
    e.add_argument("--format", choices=["table", "json", "vector"], default="table")
    e.add_argument("--a", help="group 1 values '0,1,2' (or 'mean,var,n' with --summary)")
    e.add_argument("--b", help="group 2, same form as --a")
    e.add_argument("--summary", action="store_true", help="--a/--b are mean,variance,n triples")
    e.add_argument("--constant", help="known constant C for c and c-prime")
    e.add_argument("--csv", help="comma-separated input file")
    e.add_argument("--col-a", help="column (name or 0-based index) for group 1")
    e.add_argument("--col-b", help="column for group 2")
    e.add_argument("--value-col", help="value column of a long-format file")
    e.add_argument("--group-col", help="group label column of a long-format file")
    e.add_argument("--groups", nargs="+", help="group labels to compare, in order")
    e.set_defaults(func=cmd_effect)

    r = sub.add_parser("ratio-curve", help="d/e over a grid of s2^2 and n1, as CSV")
    r.add_argument("--out", required=True)
    r.add_argument("--svg", help="also write an SVG polyline plot")
    r.add_argument("--mean1", type=float, default=1.0)
    r.add_argument("--mean2", type=float, default=0.0)
    r.add_argument("--n2", type=int, default=10)
    r.add_argument("--s1-sq", type=float, default=10.0)
    r.add_argument("--s2-start", type=float, default=0.0)
    r.add_argument("--s2-stop", type=float, default=50.0)
    r.add_argument("--s2-step", type=float, default=0.01)
    r.add_argument("--n1", default="14,12,10,8,6")
    r.set_defaults(func=cmd_ratio_curve)

    i = sub.add_parser("iris-demo", help="d vs e on Fisher's Iris data")
    i.add_argument("--format", choices=["table", "csv"], default="table")
    i.set_defaults(func=cmd_iris_demo)

    v = sub.add_parser("verify", help="Monte Carlo check of an estimator's properties")
    v.add_argument("--check", choices=["bias", "variance", "consistency", "coverage"], required=True)
    v.add_argument("--kind", choices=["d", "e", "c", "c-prime"], default="c")
    v.add_argument("--mu1", type=float, default=1.0)
    v.add_argument("--mu2", type=float, default=0.0)
    v.add_argument("--constant", type=float, help="C for c kinds (overrides --mu2)")
    v.add_argument("--var1", type=float, default=1.0)
    v.add_argument("--var2", type=float, default=1.0)
    v.add_argument("--n1", type=int, default=10)
    v.add_argument("--n2", type=int, default=10)
    v.add_argument("--reps", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=20200101)
    v.add_argument("--alpha", type=float, default=0.05)
    v.add_argument("--schedule", default="5,20,80,320")
    v.add_argument("--threshold", type=float)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ParseError, OSError) as exc:
        print(f"effdiff: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except EffDiffError as exc:
        print(f"effdiff: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
