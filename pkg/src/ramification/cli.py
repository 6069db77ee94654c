"""Command-line front end.

    python -m ramification <verb> [options]

Verbs: pcount, cofm, types, admissible, poset, census, verify, adjudicate.
JSON goes to stdout; diagnostics (timings, progress) go to stderr.  Exit
codes: 0 success, 1 verification mismatch, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Sequence

from .census import (
    DEFAULT_BUDGET,
    PreconditionError,
    census,
    infer_c,
    range_flags,
    verify_count,
)
from .field import field_from_q, field_make, is_prime
from .partitions import partition_count
from .poset import (
    interval_cohomology,
    invariant_cohomology,
    is_locally_semimodular,
    mobius,
)
from .ramtypes import (
    CONVENTIONS,
    admissibility,
    c_of_m,
    enumerate_types,
    minimal_admissible_n,
)
from .strata import build_poset, check_vanishing, orbit_decomposition, symmetric_action

log = logging.getLogger("ramification")

VERBS = ("pcount", "cofm", "types", "admissible", "poset", "census", "verify", "adjudicate")
CHECKS = ("graded", "semimodular", "vanishing", "euler-mobius", "orbits", "invariants")
MAX_POSET_N = 6

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int(s: str) -> int:
    # accepts 10**10 written as 1e10
    try:
        return int(s)
    except ValueError:
        v = float(s)
        if v != int(v):
            raise argparse.ArgumentTypeError(f"not an integer: {s}")
        return int(v)


def _int_list(s: str) -> list[int]:
    return [_int(x) for x in s.split(",") if x]


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ramification", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("--n", type=_int)
    ap.add_argument("--m", type=_int)
    ap.add_argument("--p", type=_int_list, help="prime, or comma-separated primes for adjudicate")
    ap.add_argument("--d", type=_int, default=1)
    ap.add_argument("--q", type=_int_list, help="field size(s); shorthand for --p/--d")
    ap.add_argument("--convention", choices=CONVENTIONS + ("both",), default="both")
    ap.add_argument(
        "--histogram", nargs="?", const="json", choices=("json", "csv"),
        help="include the length histogram; 'csv' prints it as CSV instead of JSON",
    )
    ap.add_argument("--jobs", type=_int, default=1)
    ap.add_argument("--budget", type=_int, default=DEFAULT_BUDGET)
    ap.add_argument("--out", help="also write the full record (with timings) to this file")
    ap.add_argument("--checks", default="all", help="comma-separated subset of " + ",".join(CHECKS))
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _need(args, *names):
    missing = [f"--{k}" for k in names if getattr(args, k) is None]
    if missing:
        raise UsageError(f"{args.verb} needs {' '.join(missing)}")


def _fields(args) -> list:
    if args.q is not None and args.p is not None:
        raise UsageError("give --p/--d or --q, not both")
    if args.q is not None:
        return [field_from_q(q) for q in args.q]
    if args.p is None:
        raise UsageError(f"{args.verb} needs --p or --q")
    for p in args.p:
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
    return [field_make(p, args.d) for p in args.p]


def _one_field(args):
    fields = _fields(args)
    if len(fields) != 1:
        raise UsageError(f"{args.verb} takes a single field")
    return fields[0]


# --- verbs ------------------------------------------------------------------


def _pcount(args):
    _need(args, "n")
    if args.n < 0:
        raise PreconditionError("--n must be >= 0")
    return {"n": args.n, "partitions": partition_count(args.n)}, EXIT_OK


def _cofm(args):
    _need(args, "m")
    if args.m < 1:
        raise PreconditionError("c(m) is defined for m >= 1")
    convs = CONVENTIONS if args.convention == "both" else (args.convention,)
    out = {"m": args.m}
    for conv in convs:
        out[conv] = c_of_m(args.m, conv)
    return out, EXIT_OK


def _types(args):
    _need(args, "m")
    if args.m < 0:
        raise PreconditionError("--m must be >= 0")
    types = enumerate_types(args.m)
    out = {"m": args.m, "count": len(types), "types": [t.to_json() for t in types]}
    return out, EXIT_OK


def _admissible(args):
    _need(args, "m")
    if args.m < 1:
        raise PreconditionError("--m must be >= 1")
    out = {
        "m": args.m,
        "minimal_n": {
            "combinatorial": minimal_admissible_n(args.m, "combinatorial"),
            "affine": minimal_admissible_n(args.m, "affine"),
        },
    }
    if args.n is not None:
        rows = []
        for t in enumerate_types(args.m):
            rep = admissibility(t, args.n)
            rows.append(
                {
                    "type": t.to_json(),
                    "combinatorial": rep.combinatorial,
                    "affine": rep.affine,
                    "reasons": list(rep.reasons),
                }
            )
        out["n"] = args.n
        out["types"] = rows
    return out, EXIT_OK


def _census(args):
    _need(args, "n")
    F = _one_field(args)
    m = args.m if args.m is not None else 1
    rec = census(args.n, m, F, jobs=args.jobs, budget=args.budget)
    print(f"census: {F.q}^{args.n} polynomials in {rec.wall_time:.2f}s", file=sys.stderr)
    if args.histogram == "csv":
        return rec.histogram_csv(), EXIT_OK
    out = rec.to_json(with_histogram=bool(args.histogram))
    out["flags"] = range_flags(args.n, m, F.p)
    return out, EXIT_OK, {"wall_time": rec.wall_time, "shards": rec.shard_count}


def _verify(args):
    _need(args, "n", "m")
    F = _one_field(args)
    v = verify_count(args.n, args.m, F, jobs=args.jobs, budget=args.budget)
    out = v.to_json(with_histogram=bool(args.histogram))
    if args.convention != "both":
        out["predicted"] = {args.convention: out["predicted"][args.convention]}
        ok = v.verdict in ("matches-both", f"matches-{args.convention}")
    else:
        ok = v.verdict != "matches-neither"
    print(f"verify: {v.verdict} in {v.record.wall_time:.2f}s", file=sys.stderr)
    return out, EXIT_OK if ok else EXIT_MISMATCH, {"wall_time": v.record.wall_time}


def adjudicate(m: int, n: int, fields, jobs: int = 1, budget: int | None = DEFAULT_BUDGET):
    """Infer c(m) from censuses over several fields and name the matching convention.

    Returns ``(record, exit_code, timings)``.
    """
    if n < 3 * m:
        raise PreconditionError(f"adjudication needs n >= 3m, got n={n}, m={m}")
    for F in fields:
        if F.p <= n + 1:
            raise PreconditionError(f"need p > n+1 for every field, got p={F.p}")
    res = infer_c(n, m, fields, jobs=jobs, budget=budget)
    conventions = {conv: c_of_m(m, conv) for conv in CONVENTIONS}
    c = res.c
    matching = [conv for conv, v in conventions.items() if c is not None and c == v]
    if c is None or not res.integral:
        verdict = "inconsistent" if c is None else "non-integral"
    elif len(matching) == 2:
        verdict = "matches-both"
    elif matching:
        verdict = f"matches-{matching[0]}"
    else:
        verdict = "matches-neither"
    record = {
        "m": m,
        "n": n,
        "fields": [{"p": F.p, "d": F.d, "q": F.q} for F in fields],
        "counts": {str(r.q): str(r.count) for r in res.records},
        "histograms": {
            str(r.q): {str(k): str(v) for k, v in sorted(r.histogram.items())} for r in res.records
        },
        "inferred_c": {str(q): str(v) for q, v in res.values.items()},
        "integral": res.integral,
        "consistent": res.consistent,
        "c": str(c) if c is not None else None,
        "conventions": conventions,
        "verdict": verdict,
        "flags": res.flags,
    }
    ok = verdict.startswith("matches-") and verdict != "matches-neither"
    timings = {str(r.q): r.wall_time for r in res.records}
    return record, (EXIT_OK if ok else EXIT_MISMATCH), timings


def _adjudicate(args):
    _need(args, "m", "n")
    return adjudicate(args.m, args.n, _fields(args), jobs=args.jobs, budget=args.budget)


def _label(P, i) -> str:
    return repr(P.labels[i])


def poset_report(n: int, m: int = 1, checks: Sequence[str] = CHECKS) -> tuple[dict, int]:
    """Build the model poset at ``n`` and run the requested checks.

    Structural failures (graded, semimodular, vanishing, euler-mobius) are
    model falsifications and give exit code 1.  The invariants check is a
    report: nonzero invariant classes are flagged but do not change the code.
    """
    if not 1 <= n <= MAX_POSET_N:
        raise PreconditionError(f"poset model supports 1 <= n <= {MAX_POSET_N}, got {n}")
    if m < 1:
        raise PreconditionError("m must be >= 1")
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise UsageError(f"unknown checks: {sorted(unknown)}")
    P = build_poset(n)
    ranks: dict[int, int] = {}
    for r in P.rank:
        ranks[r] = ranks.get(r, 0) + 1
    out: dict = {
        "n": n,
        "m": m,
        "elements": len(P),
        "rank_sizes": {str(k): v for k, v in sorted(ranks.items())},
        "build": P.report.to_json(),
        "checks": {},
        "flags": [],
    }
    failed = False
    ch = out["checks"]
    if "graded" in checks:
        ok = P.is_graded()
        ch["graded"] = {
            "pass": ok,
            "bottom": _label(P, P.bottom) if P.bottom is not None else None,
            "top": _label(P, P.top) if P.top is not None else None,
            "maximal": [_label(P, i) for i in P.maximal()],
        }
        failed |= not ok
    if "semimodular" in checks:
        rep = is_locally_semimodular(P)
        ch["semimodular"] = {
            "pass": rep.ok,
            "counterexample": None
            if rep.ok
            else dict(zip(("x", "alpha", "beta", "y"), map(repr, rep.counterexample))),
        }
        if not rep.ok:
            failed = True
            out["flags"].append("model-falsification:semimodular")
    if "vanishing" in checks:
        rep = check_vanishing(P, m)
        ch["vanishing"] = rep.to_json()
        if not rep.ok:
            failed = True
            out["flags"].append("model-falsification:vanishing")
    if "euler-mobius" in checks:
        bad = []
        count = 0
        for u in range(len(P)):
            for v in range(len(P)):
                if not P.leq(u, v):
                    continue
                count += 1
                e, mu = interval_cohomology(P, u, v).euler(), mobius(P, u, v)
                if e != mu:
                    bad.append({"u": _label(P, u), "v": _label(P, v), "euler": e, "mobius": mu})
        ch["euler-mobius"] = {"pass": not bad, "intervals": count, "failures": bad}
        if bad:
            failed = True
            out["flags"].append("model-falsification:euler-mobius")
    orbs = None
    if "orbits" in checks or "invariants" in checks:
        orbs = orbit_decomposition(P, symmetric_action(n))
    if "orbits" in checks:
        by_len: dict[int, int] = {}
        for o in orbs:
            by_len[o.length] = by_len.get(o.length, 0) + 1
        ch["orbits"] = {
            "count_by_length": {str(k): v for k, v in sorted(by_len.items())},
            "orbits": [
                {"length": o.length, "size": o.size, "type": o.type.to_json(),
                 "representative": _label(P, o.members[0])}
                for o in orbs
            ],
        }
    if "invariants" in checks:
        action = symmetric_action(n)
        rows = []
        nonzero = False
        for o in orbs:
            lam = o.members[0]
            if o.length < 2:
                continue
            inv = invariant_cohomology(P, lam, action)
            top = inv.get(o.length - 2, 0)
            nonzero |= top != 0
            rows.append(
                {
                    "element": _label(P, lam),
                    "type": o.type.to_json(),
                    "length": o.length,
                    "invariant_ranks": {str(k): v for k, v in sorted(inv.items())},
                    "top_degree_invariants": top,
                }
            )
        ch["invariants"] = {"vanishing_holds": not nonzero, "rows": rows}
        if nonzero:
            out["flags"].append("discrepancy:invariant-classes-nonzero")
    return out, EXIT_MISMATCH if failed else EXIT_OK


def _poset(args):
    _need(args, "n")
    checks = CHECKS if args.checks == "all" else tuple(c for c in args.checks.split(",") if c)
    m = args.m if args.m is not None else 1
    return poset_report(args.n, m, checks)


HANDLERS = {
    "pcount": _pcount,
    "cofm": _cofm,
    "types": _types,
    "admissible": _admissible,
    "poset": _poset,
    "census": _census,
    "verify": _verify,
    "adjudicate": _adjudicate,
}


def _emit(payload, stream):
    if isinstance(payload, str):
        stream.write(payload)
    else:
        stream.write(json.dumps(payload, sort_keys=True, default=str) + "\n")


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    t0 = time.perf_counter()
    try:
        res = HANDLERS[args.verb](args)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, ValueError) as e:
        print(f"precondition error: {e}", file=sys.stderr)
        return EXIT_USAGE
    payload, code = res[0], res[1]
    timings = res[2] if len(res) > 2 else {}
    _emit(payload, stdout)
    if args.out:
        with open(args.out, "w") as fh:
            if isinstance(payload, str):
                fh.write(payload)
            else:
                full = {
                    "argv": list(argv) if argv is not None else sys.argv[1:],
                    "result": payload,
                    "exit_code": code,
                    "timings": {"total": time.perf_counter() - t0, **timings},
                }
                json.dump(full, fh, indent=2, sort_keys=True, default=str)
                fh.write("\n")
    return code


def main() -> None:
    sys.exit(run())

