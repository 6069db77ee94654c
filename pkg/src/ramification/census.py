"""Exhaustive point counts of the simply-branched loci over finite fields.

Every degree-(n+1) monic polynomial vanishing at 0 is enumerated,
its total ramification length is computed from the branch polynomial

    B_f(y) = prod over critical points alpha of (y - f(alpha))^mult(alpha),

and the counts are compared with ``q^n - c(m) q^(n-m)``.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .field import FieldParams, field_make
from .poly import (
    DensePoly,
    gcd_free_basis,
    interpolate,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)
from .ramtypes import BranchProfile, RamificationType, c_of_m

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**10


class PreconditionError(ValueError):
    """Input outside the tame range or otherwise not handled by the census."""


class BudgetExceeded(PreconditionError):
    pass


def _check_f(f: DensePoly) -> int:
    F = f.field
    n = f.degree - 1
    if n < 1:
        raise PreconditionError(f"need deg f >= 2, got {f.degree}")
    if F.p <= n + 1:
        raise PreconditionError(
            f"characteristic {F.p} <= n+1 = {n + 1}: wild ramification is not handled"
        )
    if not f.is_monic():
        raise PreconditionError("f must be monic")
    if f[0] != 0:
        raise PreconditionError("f must vanish at 0")
    return n


def branch_poly(f: DensePoly) -> DensePoly:
    """Monic branch polynomial of ``f`` (degree n), by evaluation-interpolation.

    ``Res_x(f(x) - t, f'(x))`` is evaluated at t = 0, 1, ..., n.
    """
    n = _check_f(f)
    F = f.field
    df = f.derivative()
    ts = list(range(n + 1))
    vals = [resultant(f - DensePoly.const(F, t), df) for t in ts]
    B = interpolate(F, ts, vals)
    if B.degree != n:
        raise AssertionError(f"branch polynomial has degree {B.degree}, expected {n}")
    return B.monic()


def ram_length(f: DensePoly) -> int:
    """Total ramification length: n minus the number of distinct branch points."""
    n = _check_f(f)
    return n - squarefree_part(branch_poly(f)).degree


@dataclass(frozen=True)
class TypeOfResult:
    type: RamificationType
    # (u_k, k, B_k): critical layer of differential length k and its branch values
    layers: tuple[tuple[DensePoly, int, DensePoly], ...]
    # (g, (c_1, c_2, ...)): value class and how many points of each layer lie over it
    classes: tuple[tuple[DensePoly, tuple[int, ...]], ...]


def _layer_branch_poly(f: DensePoly, u: DensePoly) -> DensePoly:
    F = f.field
    g = u.degree
    ts = list(range(g + 1))
    vals = [resultant(f - DensePoly.const(F, t), u) for t in ts]
    B = interpolate(F, ts, vals)
    if B.degree != g:
        raise AssertionError("layer branch polynomial lost degree")
    return B.monic()


def type_of(f: DensePoly) -> TypeOfResult:
    """Full geometric ramification type of ``f``, computed inside F_q.

    Slow path for spot checks; the census uses :func:`ram_length`.
    """
    n = _check_f(f)
    layers = []
    for u, k in squarefree_decomposition(f.derivative()):
        layers.append((u, k, _layer_branch_poly(f, u)))
    pieces = []  # (w, k, c): roots of w occur c times in B_k
    for _, k, Bk in layers:
        for w, c in squarefree_decomposition(Bk):
            pieces.append((w, k, c))
    basis = gcd_free_basis([w for w, _, _ in pieces])
    kmax = max((k for _, k, _ in layers), default=0)
    classes = []
    profiles = []
    for g in basis:
        vec = [0] * kmax
        for w, k, c in pieces:
            if (w % g).is_zero():
                vec[k - 1] += c
        prof = tuple(k + 1 for k in range(1, kmax + 1) for _ in range(vec[k - 1]))
        classes.append((g, tuple(vec)))
        profiles.extend([BranchProfile(prof)] * g.degree)
    result = RamificationType(tuple(profiles))
    assert result.ram_total() == n, "Riemann-Hurwitz violated"
    return TypeOfResult(result, tuple(layers), tuple(classes))


# --- census -----------------------------------------------------------------


@dataclass
class CensusRecord:
    n: int
    m: int
    p: int
    d: int
    q: int
    count: int
    histogram: dict[int, int]
    wall_time: float = 0.0
    shard_count: int = 1
    extra: dict = field(default_factory=dict)

    def to_json(self, with_histogram: bool = True) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "d": self.d,
            "q": self.q,
            "count": str(self.count),
        }
        if with_histogram:
            out["histogram"] = {str(k): str(v) for k, v in sorted(self.histogram.items())}
        return out

    def histogram_csv(self) -> str:
        rows = ["length,count"] + [f"{k},{v}" for k, v in sorted(self.histogram.items())]
        return "\n".join(rows) + "\n"


@lru_cache(maxsize=None)
def _inverse_vandermonde(field: FieldParams, n: int) -> np.ndarray:
    """Matrix taking values at 0..n to coefficients (column j = Lagrange basis j)."""
    ts = list(range(n + 1))
    vinv = np.zeros((n + 1, n + 1), dtype=np.int64)
    for j in range(n + 1):
        e = [1 if i == j else 0 for i in range(n + 1)]
        L = interpolate(field, ts, e)
        for i in range(n + 1):
            vinv[i, j] = L[i]
    return vinv


def _kernel_args(field: FieldParams, n: int):
    add, sub, mul, inv = field.tables
    return add, sub, mul, inv, _inverse_vandermonde(field, n)


def _check_census(n: int, m: int, field: FieldParams, budget: int | None):
    if n < 1 or m < 1:
        raise PreconditionError(f"need n, m >= 1, got n={n}, m={m}")
    if field.p <= n + 1:
        raise PreconditionError(f"need p > n+1, got p={field.p}, n={n}")
    total = field.q**n
    if budget is not None and total > budget:
        raise BudgetExceeded(f"q^n = {total} exceeds budget {budget}")


def shard_prefixes(q: int, n: int, shards: int) -> list[tuple[int, ...]]:
    """Leading-coefficient prefixes (a_n, a_{n-1}, ...) splitting the space.

    The prefix length is the smallest k with q^k >= shards (k <= n); k = 0
    gives the single empty prefix.
    """
    k = 0
    while q**k < shards and k < n:
        k += 1
    return list(product(range(q), repeat=k))


def _run_shard(args):
    from . import _kernel

    p, d, n, prefix = args
    F = field_make(p, d)
    pre = np.asarray(prefix, dtype=np.int64).reshape(-1)
    return _kernel.census_shard(pre, n, F.q, *_kernel_args(F, n))


def length_histogram(
    n: int, field: FieldParams, jobs: int = 1, shards: int | None = None
) -> tuple[dict[int, int], int]:
    """Histogram of ram_length over all q^n polynomials; returns (hist, shard count)."""
    if shards is None:
        shards = jobs
    prefixes = shard_prefixes(field.q, n, shards)
    tasks = [(field.p, field.d, n, pre) for pre in prefixes]
    total = np.zeros(n + 2, dtype=object)
    if jobs <= 1:
        parts = map(_run_shard, tasks)
        for h in parts:
            total += h.astype(object)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for h in ex.map(_run_shard, tasks):
                total += h.astype(object)
    if total[n + 1]:
        raise AssertionError(f"{total[n + 1]} polynomials had a degenerate branch polynomial")
    return {k: int(total[k]) for k in range(n + 1)}, len(prefixes)


def census(
    n: int,
    m: int,
    field: FieldParams,
    want_histogram: bool = True,
    jobs: int = 1,
    budget: int | None = DEFAULT_BUDGET,
    shards: int | None = None,
) -> CensusRecord:
    """Count f in M_n(F_q) with ram_length(f) < m."""
    _check_census(n, m, field, budget)
    t0 = time.perf_counter()
    hist, nshards = length_histogram(n, field, jobs=jobs, shards=shards)
    elapsed = time.perf_counter() - t0
    assert sum(hist.values()) == field.q**n
    count = sum(v for k, v in hist.items() if k < m)
    log.info("census n=%d q=%d: %d polys in %.2fs", n, field.q, field.q**n, elapsed)
    rec = CensusRecord(n, m, field.p, field.d, field.q, count, hist, elapsed, nshards)
    if not want_histogram:
        rec.extra["histogram_suppressed"] = True
    return rec


def census_reference(n: int, m: int, field: FieldParams) -> CensusRecord:
    """Pure-Python census through :func:`ram_length`; for small cases only."""
    _check_census(n, m, field, budget=10**6)
    t0 = time.perf_counter()
    hist = {k: 0 for k in range(n + 1)}
    x_n1 = (1,)
    for tail in product(range(field.q), repeat=n):
        f = DensePoly(field, (0,) + tuple(tail) + x_n1)
        hist[ram_length(f)] += 1
    count = sum(v for k, v in hist.items() if k < m)
    return CensusRecord(n, m, field.p, field.d, field.q, count, hist, time.perf_counter() - t0)


def ram_lengths_fast(polys: Sequence[DensePoly]) -> list[int]:
    """Kernel evaluation of ram_length for many polynomials of one degree."""
    from . import _kernel

    if not polys:
        return []
    F = polys[0].field
    n = _check_f(polys[0])
    rows = np.zeros((len(polys), n + 2), dtype=np.int64)
    for r, f in enumerate(polys):
        if f.field is not F or _check_f(f) != n:
            raise PreconditionError("batch polynomials must share field and degree")
        rows[r, : len(f.coeffs)] = f.coeffs
    return [int(x) for x in _kernel.ram_length_batch(rows, n, *_kernel_args(F, n))]


# --- verification -----------------------------------------------------------


def predicted_counts(n: int, m: int, q: int) -> dict[str, int]:
    return {conv: q**n - c_of_m(m, conv) * q ** (n - m) for conv in ("eq12", "multiset")}


def range_flags(n: int, m: int, p: int) -> list[str]:
    flags = []
    if n < 3 * m:
        flags.append("out-of-range:n<3m")
    if n >= p - 1:
        flags.append("out-of-range:n>=p-1")
    return flags


def verdict_for(count: int, predicted: dict[str, int]) -> str:
    hits = [conv for conv in ("eq12", "multiset") if predicted[conv] == count]
    if len(hits) == 2:
        return "matches-both"
    if hits:
        return f"matches-{hits[0]}"
    return "matches-neither"


@dataclass
class Verdict:
    record: CensusRecord
    predicted: dict[str, int]
    verdict: str
    flags: list[str]
    inferred_c: Fraction

    def to_json(self, with_histogram: bool = True) -> dict:
        out = self.record.to_json(with_histogram)
        out["predicted"] = {k: str(v) for k, v in self.predicted.items()}
        out["verdict"] = self.verdict
        out["flags"] = list(self.flags)
        out["inferred_c"] = str(self.inferred_c)
        return out


def verify_count(
    n: int, m: int, field: FieldParams, jobs: int = 1, budget: int | None = DEFAULT_BUDGET
) -> Verdict:
    """Census plus comparison against both readings of c(m)."""
    rec = census(n, m, field, jobs=jobs, budget=budget)
    pred = predicted_counts(n, m, field.q)
    inferred = Fraction(field.q**n - rec.count, field.q ** (n - m)) if n >= m else Fraction(0)
    return Verdict(rec, pred, verdict_for(rec.count, pred), range_flags(n, m, field.p), inferred)


@dataclass
class InferredC:
    n: int
    m: int
    values: dict[int, Fraction]  # q -> c
    integral: bool
    consistent: bool
    flags: list[str]
    records: list[CensusRecord]

    @property
    def c(self) -> Fraction | None:
        vals = set(self.values.values())
        return vals.pop() if len(vals) == 1 else None


def infer_c(
    n: int,
    m: int,
    fields: Sequence[FieldParams],
    jobs: int = 1,
    budget: int | None = DEFAULT_BUDGET,
) -> InferredC:
    """Solve ``count = q^n - c q^(n-m)`` for c over each field."""
    if n < m:
        raise PreconditionError(f"need n >= m to solve for c, got n={n}, m={m}")
    values = {}
    records = []
    flags: list[str] = []
    for F in fields:
        rec = census(n, m, F, jobs=jobs, budget=budget)
        records.append(rec)
        values[F.q] = Fraction(F.q**n - rec.count, F.q ** (n - m))
        for fl in range_flags(n, m, F.p):
            if fl not in flags:
                flags.append(fl)
    integral = all(v.denominator == 1 for v in values.values())
    consistent = len(set(values.values())) == 1
    return InferredC(n, m, values, integral, consistent, flags, records)
