"""Command-line front end: volume tables, boundary ratios, verify suites.

Exit codes: 0 success, 1 computation or check failure, 2 usage error.
All parameters live on the command line; only the default cache path may
come from the WPEXACT_CACHE environment variable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import asympt as asympt_mod
from . import bounds as bounds_mod
from . import cache as cache_mod
from .curvature import e_g, eg_csv
from .intersect import MemoTable, TauSpec, fill_layer, dilaton_check, string_check
from .rationals import format_rat
from .volumes import table_to_csv, volume_table

__all__ = ["main"]


def _add_common(parser):
    parser.add_argument(
        "--cache",
        default=os.environ.get("WPEXACT_CACHE"),
        help="cache file path (default: $WPEXACT_CACHE)",
    )
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--format", choices=["table", "csv"], default="table")
    parser.add_argument("--output", help="write to file instead of stdout")
    parser.add_argument(
        "--precision", type=int, default=12, help="significant float digits"
    )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="wpexact",
        description="Exact Weil-Petersson volumes and curvature checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volumes", help="exact volume table")
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--n", default="0,1,2", help="comma-separated puncture counts")
    _add_common(p)

    p = sub.add_parser("eg", help="boundary-ratio breakdown per genus")
    p.add_argument("--g-max", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite", required=True, choices=["st", "briwu", "asymp1", "middle", "dvv"]
    )
    p.add_argument("--g-max", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("fit", help="extrapolate the large-genus constant")
    p.add_argument("--target", required=True, choices=["cmz"])
    p.add_argument("--g-min", type=int, required=True)
    p.add_argument("--g-max", type=int, required=True)
    p.add_argument("--n", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("asympt", help="asymptotic residual report")
    p.add_argument("--sequence", required=True, choices=["eg", "g12"])
    p.add_argument("--g-max", type=int, required=True)
    _add_common(p)

    return parser


def _load_memo(args) -> MemoTable:
    if args.cache and os.path.exists(args.cache):
        return cache_mod.load(args.cache)
    return MemoTable()


def _save_memo(args, memo: MemoTable) -> None:
    if args.cache:
        cache_mod.save(memo, args.cache)


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _fmt_float(x: float, digits: int) -> str:
    return format(x, f".{digits}g")


def _cmd_volumes(args) -> int:
    memo = _load_memo(args)
    n_set = sorted({int(x) for x in args.n.split(",") if x.strip() != ""})
    if args.g_max < 0 or not n_set:
        print("error: need g-max >= 0 and a non-empty n set", file=sys.stderr)
        return 2
    try:
        records = volume_table(args.g_max, n_set, memo)
    except Exception as exc:
        print(f"error: volume computation failed: {exc}", file=sys.stderr)
        return 1
    if args.format == "csv":
        _emit(args, table_to_csv(records))
    else:
        lines = [f"{'g':>3} {'n':>3}  value"]
        for rec in records:
            lines.append(f"{rec.genus:>3} {rec.punctures:>3}  {format_rat(rec.value)}")
        _emit(args, "\n".join(lines) + "\n")
    _save_memo(args, memo)
    return 0


def _cmd_eg(args) -> int:
    if args.g_max < 2:
        print("error: eg needs --g-max >= 2", file=sys.stderr)
        return 2
    memo = _load_memo(args)
    csv_text = eg_csv(args.g_max, memo, float_digits=args.precision)
    if args.format == "csv":
        _emit(args, csv_text)
    else:
        lines = []
        for g in range(2, args.g_max + 1):
            breakdown = e_g(g, memo)
            terms = " + ".join(
                f"d{j}={format_rat(v)}" for j, v in breakdown.terms()
            )
            avg = float(13 + breakdown.total) / (4 * math.pi)
            lines.append(
                f"g={g}  E_g={format_rat(breakdown.total)}  [{terms}]  "
                f"avg/(g-1)={_fmt_float(avg, args.precision)}"
            )
        _emit(args, "\n".join(lines) + "\n")
    _save_memo(args, memo)
    return 0


def _verify_dvv(args, memo, out_lines) -> bool:
    fill_layer(args.g_max, 3 * args.g_max, memo, workers=max(1, args.workers))
    ok = True
    for g, d in sorted(memo.keys()):
        spec = TauSpec(g, d)
        good = dilaton_check(spec, memo)
        if 0 in d and 2 * g - 2 + len(d) - 1 > 0:
            base = list(d)
            base.remove(0)
            good = good and string_check(TauSpec.of(g, base), memo)
        if not good:
            ok = False
            out_lines.append(f"FAIL dvv identities at (g={g}, d={d})")
    out_lines.append(
        f"dvv sweep over {memo.entry_count} entries: {'pass' if ok else 'FAIL'}"
    )
    return ok


def _verify_st(args, memo, out_lines) -> bool:
    report = bounds_mod.st_report(args.g_max, memo)
    for entry in report.entries:
        status = "pass" if entry.passed else "FAIL"
        out_lines.append(
            f"g={entry.g}: {status}  lhs={format_rat(entry.lhs)}  "
            f"rhs={format_rat(entry.rhs)}"
        )
    return report.all_passed


def _verify_briwu(args, memo, out_lines) -> bool:
    c_emp, big_c, rows = bounds_mod.briwu_scan(args.g_max, memo)
    for g, r in rows:
        out_lines.append(f"g={g}: ratio={_fmt_float(r, args.precision)}")
    spread = big_c / c_emp
    ok = 0 < c_emp <= big_c and math.isfinite(big_c) and spread <= 4
    out_lines.append(
        f"c_emp={_fmt_float(c_emp, args.precision)} "
        f"C_emp={_fmt_float(big_c, args.precision)} spread={spread:.3f} "
        f"{'pass' if ok else 'FAIL'}"
    )
    return ok


def _verify_asymp1(args, memo, out_lines) -> bool:
    ok = True
    for n in (0, 1):
        lo, hi, rows = bounds_mod.asymp1_ratios(args.g_max, n, memo)
        good = 0 < lo <= hi and math.isfinite(hi)
        ok = ok and good
        out_lines.append(
            f"n={n}: ratio interval [{_fmt_float(lo, args.precision)}, "
            f"{_fmt_float(hi, args.precision)}] {'pass' if good else 'FAIL'}"
        )
    return ok


def _verify_middle(args, memo, out_lines) -> bool:
    previous = None
    ok = True
    for g in range(4, args.g_max + 1):
        total, relative = bounds_mod.middle_term_bound(g, memo)
        share = total / e_g(g, memo).total
        out_lines.append(
            f"g={g}: middle_sum={format_rat(total)} "
            f"share_of_Eg={_fmt_float(float(share), args.precision)}"
        )
        if g >= 7 and previous is not None and share >= previous:
            ok = False
            out_lines.append(f"FAIL middle-term share not decreasing at g={g}")
        previous = share
    return ok


def _cmd_verify(args) -> int:
    if args.g_max < 2:
        print("error: verify needs --g-max >= 2", file=sys.stderr)
        return 2
    memo = _load_memo(args)
    runners = {
        "dvv": _verify_dvv,
        "st": _verify_st,
        "briwu": _verify_briwu,
        "asymp1": _verify_asymp1,
        "middle": _verify_middle,
    }
    out_lines = []
    ok = runners[args.suite](args, memo, out_lines)
    out_lines.append(f"suite {args.suite}: {'PASS' if ok else 'FAIL'}")
    _emit(args, "\n".join(out_lines) + "\n")
    _save_memo(args, memo)
    return 0 if ok else 1


def _cmd_fit(args) -> int:
    if args.g_max - args.g_min < 2:
        print("error: fit needs at least 3 genera (g-max >= g-min + 2)",
              file=sys.stderr)
        return 1
    memo = _load_memo(args)
    records = [
        rec
        for rec in volume_table(args.g_max, {args.n}, memo)
        if rec.genus >= args.g_min
    ]
    try:
        estimate, per_g = asympt_mod.fit_cmz(records, args.g_min)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    lines = [
        f"g={g}: estimate={_fmt_float(v, args.precision)}" for g, v in per_g
    ]
    conjecture = 1 / math.sqrt(math.pi)
    lines.append(
        f"extrapolated constant: {_fmt_float(estimate, args.precision)} "
        f"(conjectured 1/sqrt(pi) = {_fmt_float(conjecture, args.precision)})"
    )
    _emit(args, "\n".join(lines) + "\n")
    _save_memo(args, memo)
    return 0


def _cmd_asympt(args) -> int:
    if args.g_max < 4:
        print("error: asympt needs --g-max >= 4", file=sys.stderr)
        return 1
    memo = _load_memo(args)
    if args.sequence == "eg":
        report = asympt_mod.eg_report(args.g_max, memo)
    else:
        report = asympt_mod.g12_report(args.g_max, memo)
    text = report.to_csv(float_digits=args.precision)
    text += (
        f"# extrapolated limit of g*{report.name}: "
        f"{_fmt_float(report.limit, args.precision)}\n"
    )
    _emit(args, text)
    _save_memo(args, memo)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    commands = {
        "volumes": _cmd_volumes,
        "eg": _cmd_eg,
        "verify": _cmd_verify,
        "fit": _cmd_fit,
        "asympt": _cmd_asympt,
    }
    try:
        return commands[args.command](args)
    except cache_mod.CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
