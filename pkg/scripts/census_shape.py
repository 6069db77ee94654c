"""Fit #{f in M_n(F_q) : length(f) < m} as a polynomial in q.

For each n the census is run over enough primes p > n + 1 to interpolate a
degree-n polynomial exactly over Q, plus one extra prime as a holdout.  The
fitted coefficients are compared with q^n - c q^(n-m).
"""

import argparse
import json
from fractions import Fraction

from ramification.census import census
from ramification.field import field_make, is_prime


def lagrange(xs, ys):
    """Exact coefficients (ascending) of the interpolating polynomial."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def show(coeffs):
    terms = []
    for k in reversed(range(len(coeffs))):
        c = coeffs[k]
        if c:
            terms.append(f"{c}*q^{k}" if k else f"{c}")
    return " + ".join(terms).replace("+ -", "- ")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="3,4,5")
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--out", default="results/census_shape.json")
    args = ap.parse_args()
    report = {}
    for n in map(int, args.ns.split(",")):
        primes = [p for p in range(n + 2, 200) if is_prime(p)][: n + 2]
        counts = {p: census(n, args.m, field_make(p)).count for p in primes}
        fit_p, hold = primes[:-1], primes[-1]
        coeffs = lagrange(fit_p, [Fraction(counts[p]) for p in fit_p])
        pred = sum(c * hold**k for k, c in enumerate(coeffs))
        ok = pred == counts[hold]
        print(f"n={n} m={args.m}: {show(coeffs)}   holdout q={hold}: {'ok' if ok else 'MISMATCH'}")
        report[n] = {
            "counts": {str(p): str(v) for p, v in counts.items()},
            "coefficients": [str(c) for c in coeffs],
            "holdout_ok": ok,
        }
    from pathlib import Path

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report, indent=2) + "\n")


if __name__ == "__main__":
    main()
