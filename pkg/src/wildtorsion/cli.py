"""``torsion`` command line front end."""

from __future__ import annotations

import argparse
import logging
import sys

from .cohomology import MAX_DIM
from .errors import InputError, TorsionError
from .report import Grid, JobSpec, Report, exit_status, render_json, render_text, run_job, summarize, sweep


def _precision(text: str):
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("precision must be 'auto' or an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("precision must be positive")
    return value


def _int_list(text: str) -> tuple[int, ...]:
    """'1,3,5' or '1-20' or a mix such as '1-4,7'."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return tuple(out)


def _common(sub: argparse.ArgumentParser):
    sub.add_argument("--format", choices=("text", "json-lines"), default="text")
    sub.add_argument("--precision", type=_precision, default="auto")
    sub.add_argument("--max-dim", type=int, default=MAX_DIM)
    sub.add_argument("--timing", action="store_true", help="record elapsed_ms (makes output nondeterministic)")
    sub.add_argument("--recheck", action="store_true", help="recompute each oracle result 3 levels deeper")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsion", description="Torsion of H^1(G, R') by formula and by brute force.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    subs = parser.add_subparsers(dest="command", required=True)

    p_as = subs.add_parser("as", help="Artin-Schreier extension y^p - y = s^-m, optionally composed with s^d = t")
    p_as.add_argument("--p", type=int, required=True)
    p_as.add_argument("--m", type=int, required=True)
    p_as.add_argument("--d", type=int, default=1)
    p_as.add_argument("--mode", choices=("formula", "oracle", "both"), default="both")
    _common(p_as)

    p_tame = subs.add_parser("tame", help="tame Kummer extension s^d = t")
    p_tame.add_argument("--p", type=int, required=True)
    p_tame.add_argument("--d", type=int, required=True)
    p_tame.add_argument("--mode", choices=("formula", "oracle", "both"), default="both")
    _common(p_tame)

    p_formula = subs.add_parser("formula", help="closed formula from explicit lower breaks")
    p_formula.add_argument("--p", type=int, required=True)
    p_formula.add_argument("--n", type=int, default=1)
    p_formula.add_argument("--d", type=int, default=1)
    p_formula.add_argument("--breaks", type=_int_list, required=True)
    _common(p_formula)

    p_sweep = subs.add_parser("sweep", help="run a grid of Artin-Schreier (and compositum) instances")
    p_sweep.add_argument("--p", type=_int_list, default=(2, 3, 5))
    p_sweep.add_argument("--m", type=_int_list, default=tuple(range(1, 21)))
    p_sweep.add_argument("--d", type=_int_list, default=(1,))
    p_sweep.add_argument("--mode", choices=("formula", "oracle", "both"), default="both")
    p_sweep.add_argument("--workers", type=int, default=1)
    _common(p_sweep)

    p_self = subs.add_parser("selftest", help="quick consistency checks")
    p_self.add_argument("--format", choices=("text", "json-lines"), default="text")
    return parser


def _emit(reports: list[Report], fmt: str, out) -> None:
    render = render_json if fmt == "json-lines" else render_text
    for r in reports:
        out.write(render(r) + "\n")


def _job(args, **kw) -> JobSpec:
    return JobSpec(precision=args.precision, max_dim=args.max_dim, timing=args.timing, recheck=args.recheck, **kw)


SELFTEST_JOBS = (
    dict(mode="both", p=3, m=4),
    dict(mode="both", p=2, m=1),
    dict(mode="both", p=5, m=7),
    dict(mode="both", p=7, m=None, tame_d=3),
    dict(mode="both", p=2, m=3, tame_d=3),
    dict(mode="formula", p=2, n=2, breaks=(1, 3)),
)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "as":
            reports = [run_job(_job(args, mode=args.mode, p=args.p, m=args.m, tame_d=args.d))]
        elif args.command == "tame":
            reports = [run_job(_job(args, mode=args.mode, p=args.p, m=None, tame_d=args.d))]
        elif args.command == "formula":
            reports = [run_job(_job(args, mode="formula", p=args.p, n=args.n, tame_d=args.d, breaks=args.breaks))]
        elif args.command == "sweep":
            grid = Grid(args.p, args.m, args.d, args.mode, args.precision, args.max_dim, args.timing)
            reports = sweep(grid, args.workers)
        else:
            reports = [run_job(JobSpec(**kw)) for kw in SELFTEST_JOBS]
    except TorsionError as exc:
        print(f"torsion: error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status

    _emit(reports, args.format, out)
    if args.command in ("sweep", "selftest") and args.format == "text":
        s = summarize(reports)
        out.write(f"# {s['points']} points: {s['agree']} agree, {s['mismatch']} mismatch, {s['errors']} errors\n")
    return exit_status(reports)


if __name__ == "__main__":
    sys.exit(main())
