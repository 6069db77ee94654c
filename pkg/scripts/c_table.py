"""Table of c(m) under both conventions, with admissibility minima."""

import argparse

from ramification.ramtypes import c_of_m, enumerate_types, minimal_admissible_n


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=8)
    args = ap.parse_args()
    print(f"{'m':>3} {'eq12':>8} {'multiset':>9} {'#types':>7} {'n_comb':>7} {'n_aff':>6}")
    for m in range(1, args.max_m + 1):
        print(
            f"{m:>3} {c_of_m(m, 'eq12'):>8} {c_of_m(m, 'multiset'):>9} {len(enumerate_types(m)):>7}"
            f" {minimal_admissible_n(m, 'combinatorial'):>7} {minimal_admissible_n(m, 'affine'):>6}"
        )


if __name__ == "__main__":
    main()
