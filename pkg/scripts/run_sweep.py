"""Run a formula-vs-oracle sweep and write the json-lines table plus a summary."""

import argparse
import sys
from pathlib import Path

from wildtorsion.cli import _int_list
from wildtorsion.report import Grid, exit_status, render_json, summarize, sweep

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=_int_list, default=(2, 3, 5))
    ap.add_argument("--m", type=_int_list, default=tuple(range(1, 21)))
    ap.add_argument("--d", type=_int_list, default=(1, 2, 3))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=ROOT / "reports" / "sweep.jsonl")
    args = ap.parse_args()

    reports = sweep(Grid(args.p, args.m, args.d), workers=args.workers)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text("".join(render_json(r) + "\n" for r in reports))
    s = summarize(reports)
    print(f"{s['points']} points: {s['agree']} agree, {s['mismatch']} mismatch, {s['errors']} errors -> {args.out}")
    for r in reports:
        if r.status == "mismatch":
            print(f"  mismatch p={r.p} d={r.d} m={r.m}: formula {r.formula_partition} oracle {r.oracle_partition}")
        elif r.status != "ok":
            print(f"  {r.status} p={r.p} d={r.d} m={r.m}")
    return exit_status(reports)


if __name__ == "__main__":
    sys.exit(main())
