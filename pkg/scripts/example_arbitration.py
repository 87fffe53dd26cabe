"""Write reports/example_arbitration.jsonl: displayed closed form vs formula vs oracle."""

import argparse
import json
import math
from pathlib import Path

from wildtorsion.report import example_arbitration

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3,5")
    ap.add_argument("--max-m", type=int, default=20)
    ap.add_argument("--out", type=Path, default=ROOT / "reports" / "example_arbitration.jsonl")
    args = ap.parse_args()

    rows = []
    for p in (int(x) for x in args.primes.split(",")):
        for m in range(1, args.max_m + 1):
            if math.gcd(m, p) == 1:
                rows.append(example_arbitration(p, m))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    disagree = [(r["p"], r["m"]) for r in rows if not r["displayed_agrees"]]
    broken = [(r["p"], r["m"]) for r in rows if not r["formula_agrees_with_oracle"]]
    print(f"{len(rows)} instances written to {args.out}")
    print(f"displayed form differs from the formula at {len(disagree)}: {disagree}")
    print(f"formula differs from the oracle at {len(broken)}: {broken}")


if __name__ == "__main__":
    main()
