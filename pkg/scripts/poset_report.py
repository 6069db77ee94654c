"""Structural report for the stratum-poset model at several n."""

import argparse
import json
import time

from ramification.cli import CHECKS, poset_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="2,3,4")
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--checks", default=",".join(CHECKS))
    ap.add_argument("--json", action="store_true", help="dump full reports")
    args = ap.parse_args()
    checks = tuple(args.checks.split(","))
    for n in map(int, args.ns.split(",")):
        t0 = time.perf_counter()
        rep, code = poset_report(n, args.m, checks)
        dt = time.perf_counter() - t0
        if args.json:
            print(json.dumps(rep, indent=2, sort_keys=True))
            continue
        ch = rep["checks"]
        line = [f"n={n}", f"|P|={rep['elements']}", f"ranks={rep['rank_sizes']}"]
        for name in ("graded", "semimodular", "euler-mobius"):
            if name in ch:
                line.append(f"{name}={'ok' if ch[name]['pass'] else 'FAIL'}")
        if "vanishing" in ch:
            line.append(f"vanishing={'ok' if ch['vanishing']['pass'] else 'FAIL'}")
        if "orbits" in ch:
            line.append(f"orbits={ch['orbits']['count_by_length']}")
        if "invariants" in ch:
            nz = [r for r in ch["invariants"]["rows"] if r["top_degree_invariants"]]
            line.append(f"nonzero-invariant-orbits={len(nz)}/{len(ch['invariants']['rows'])}")
        line.append(f"({dt:.1f}s)")
        print("  ".join(line))
        if "semimodular" in ch and not ch["semimodular"]["pass"]:
            print("    semimodularity counterexample:", ch["semimodular"]["counterexample"])


if __name__ == "__main__":
    main()
