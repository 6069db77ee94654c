"""Infer c(2) from full censuses at n = 6 over F_11 and F_13.

Writes the adjudication record as JSON (default results/adjudicate_m2_n6.json).
"""

import argparse
import json
import sys
from pathlib import Path

from ramification.cli import adjudicate
from ramification.field import field_make


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--primes", default="11,13")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="results/adjudicate_m2_n6.json")
    args = ap.parse_args()
    fields = [field_make(int(p)) for p in args.primes.split(",")]
    record, code, timings = adjudicate(args.m, args.n, fields, jobs=args.jobs)
    record["timings"] = timings
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    for q, c in record["inferred_c"].items():
        print(f"q={q:>3}  count={record['counts'][q]:>10}  (q^n - count)/q^(n-m) = {c}")
    print(f"verdict: {record['verdict']}  (eq12 -> {record['conventions']['eq12']}, multiset -> {record['conventions']['multiset']})")
    sys.exit(code)


if __name__ == "__main__":
    main()
