"""Combinatorial model of the stratification of ordered critical points.

A stratum is labeled by a pair of set partitions of the n critical points of
``f`` (roots of ``f'`` counted with multiplicity):

* ``rho1`` groups points that coincide (a block of size s is a single
  ramification point of index s + 1);
* ``rho2`` groups points with a common critical value.

``rho1`` refines ``rho2``.  The codimension of a stratum is ``n`` minus the
number of ``rho2`` blocks.  Covers are generated by degeneration moves; see
:func:`build_poset`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .poset import GradedPoset, GroupAction, orbits
from .ramtypes import (
    BranchProfile,
    RamificationType,
    admissibility,
    admissible_types,
    enumerate_types,
)


@dataclass(frozen=True, order=True)
class SetPartition:
    """Set partition of {1..n}; blocks sorted internally and by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks if b))
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{len(seen)}")

    @classmethod
    def discrete(cls, n: int) -> "SetPartition":
        return cls(tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def single(cls, n: int) -> "SetPartition":
        return cls((tuple(range(1, n + 1)),))

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "SetPartition":
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def all(cls, n: int) -> list["SetPartition"]:
        return list(_all_partitions(n))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def merge(self, a: int, b: int) -> "SetPartition":
        """Merge blocks number ``a`` and ``b``."""
        blocks = list(self.blocks)
        merged = blocks[a] + blocks[b]
        rest = [blk for k, blk in enumerate(blocks) if k not in (a, b)]
        return SetPartition(tuple(rest) + (merged,))

    def merge_blocks(self, *blks: tuple[int, ...]) -> "SetPartition":
        drop = set(blks)
        merged = tuple(x for b in blks for x in b)
        return SetPartition(tuple(b for b in self.blocks if b not in drop) + (merged,))

    def refines(self, other: "SetPartition") -> bool:
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks)

    def relabel(self, g: Sequence[int]) -> "SetPartition":
        """Image under the permutation with ``g[i-1]`` the image of ``i``."""
        return SetPartition(tuple(tuple(g[x - 1] for x in b) for b in self.blocks))

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __repr__(self):
        return "|".join("".join(map(str, b)) if self.n < 10 else ",".join(map(str, b)) for b in self.blocks)


@lru_cache(maxsize=None)
def _all_partitions(n: int) -> tuple[SetPartition, ...]:
    # restricted growth strings
    out = []

    def rec(i, rgs, k):
        if i == n:
            blocks = [[] for _ in range(k)]
            for x, b in enumerate(rgs, 1):
                blocks[b].append(x)
            out.append(SetPartition(tuple(tuple(b) for b in blocks)))
            return
        for b in range(k + 1):
            rec(i + 1, rgs + [b], max(k, b + 1))

    rec(0, [], 0)
    return tuple(sorted(out))


@dataclass(frozen=True, order=True)
class StratumLabel:
    rho1: SetPartition
    rho2: SetPartition

    def __post_init__(self):
        if self.rho1.n != self.rho2.n:
            raise ValueError("rho1 and rho2 live on different index sets")
        if not self.rho1.refines(self.rho2):
            raise ValueError(f"rho1 = {self.rho1!r} does not refine rho2 = {self.rho2!r}")

    @classmethod
    def bottom(cls, n: int) -> "StratumLabel":
        d = SetPartition.discrete(n)
        return cls(d, d)

    @classmethod
    def top(cls, n: int) -> "StratumLabel":
        s = SetPartition.single(n)
        return cls(s, s)

    @classmethod
    def parse(cls, rho1: Sequence[Sequence[int]], rho2: Sequence[Sequence[int]]) -> "StratumLabel":
        return cls(SetPartition.of(*rho1), SetPartition.of(*rho2))

    @property
    def n(self) -> int:
        return self.rho1.n

    def simple_points(self) -> frozenset[int]:
        """Indices that are alone in both partitions."""
        s1 = {b[0] for b in self.rho1.blocks if len(b) == 1}
        s2 = {b[0] for b in self.rho2.blocks if len(b) == 1}
        return frozenset(s1 & s2)

    def R(self) -> list[tuple[int, ...]]:
        N = self.simple_points()
        return [b for b in self.rho1.blocks if b[0] not in N]

    def F(self) -> list[tuple[int, ...]]:
        N = self.simple_points()
        return [b for b in self.rho2.blocks if b[0] not in N]

    def fiber_blocks(self, fiber: tuple[int, ...]) -> list[tuple[int, ...]]:
        return [b for b in self.rho1.blocks if b[0] in fiber]

    def length(self) -> int:
        """Codimension; computed from R/F and checked against n - #rho2."""
        R, F = self.R(), self.F()
        k = [len(self.fiber_blocks(f)) for f in F]
        by_rf = sum(len(r) + 1 for r in R) - sum(k) - len(F)
        by_blocks = self.n - self.rho2.num_blocks
        assert by_rf == by_blocks, (self, by_rf, by_blocks)
        return by_blocks

    def ram_type(self, reduced: bool = True) -> RamificationType:
        profiles = []
        for fiber in self.rho2.blocks:
            idx = tuple(len(b) + 1 for b in self.fiber_blocks(fiber))
            profiles.append(BranchProfile(idx))
        t = RamificationType(tuple(profiles))
        return t.reduced() if reduced else t

    def relabel(self, g: Sequence[int]) -> "StratumLabel":
        return StratumLabel(self.rho1.relabel(g), self.rho2.relabel(g))

    def to_json(self) -> dict:
        return {"rho1": self.rho1.to_json(), "rho2": self.rho2.to_json(), "l": self.length()}

    def __repr__(self):
        return f"({self.rho1!r}, {self.rho2!r})"


@dataclass(frozen=True)
class StratumInvariants:
    N: frozenset[int]
    R: tuple[tuple[int, ...], ...]
    F: tuple[tuple[int, ...], ...]
    l: int


def stratum_invariants(lam: StratumLabel) -> StratumInvariants:
    return StratumInvariants(lam.simple_points(), tuple(lam.R()), tuple(lam.F()), lam.length())


# --- degeneration moves -----------------------------------------------------


def _moves(lam: StratumLabel):
    """Yield ``(move, label)`` for every one-step degeneration of ``lam``.

    A: two fibers collide.  B': two ramification points in different fibers
    collide.  B: two siblings collide, which drags one simple point into the
    merged point.  C: a simple point falls into a ramification point.
    Blocked B moves (no simple point available) yield ``("B-blocked", None)``.
    """
    r1, r2 = lam.rho1, lam.rho2
    N = sorted(lam.simple_points())
    for a, b in combinations(range(r2.num_blocks), 2):
        yield "A", StratumLabel(r1, r2.merge(a, b))
    fiber_of = {blk: r2.block_of(blk[0]) for blk in r1.blocks}
    for x, y in combinations(r1.blocks, 2):
        fx, fy = fiber_of[x], fiber_of[y]
        if fx != fy:
            yield "B'", StratumLabel(r1.merge_blocks(x, y), r2.merge_blocks(fx, fy))
        elif not N:
            yield "B-blocked", None
        else:
            for z in N:
                rho1 = r1.merge_blocks(x, y, (z,))
                rho2 = r2.merge_blocks(fx, (z,))
                yield "B", StratumLabel(rho1, rho2)
    for z in N:
        for x in r1.blocks:
            if len(x) >= 2:
                yield "C", StratumLabel(r1.merge_blocks(x, (z,)), r2.merge_blocks(fiber_of[x], (z,)))


GATES = ("both", "combinatorial")


def realizable(lam: StratumLabel, gate: str = "both") -> bool:
    """Gate on the reduced type at n.

    ``"both"`` (the default model) requires combinatorial and affine
    admissibility; ``"combinatorial"`` drops the affine test.
    """
    rep = admissibility(lam.ram_type(), lam.n)
    if gate == "both":
        return rep.combinatorial and rep.affine
    if gate == "combinatorial":
        return rep.combinatorial
    raise ValueError(f"unknown gate {gate!r}")


@dataclass
class BuildReport:
    n: int
    max_length: int | None
    gate: str = "both"
    truncated: bool = False
    blocked_b: list[StratumLabel] = field(default_factory=list)
    rejected: int = 0
    move_counts: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_length": self.max_length,
            "gate": self.gate,
            "truncated": self.truncated,
            "blocked_b": [repr(x) for x in self.blocked_b],
            "rejected_by_gate": self.rejected,
            "covers_by_move": dict(sorted(self.move_counts.items())),
        }


class StratumPoset(GradedPoset):
    """The model poset; elements are :class:`StratumLabel`, rank is length."""

    def __init__(self, n, labels, covers, report: BuildReport, cover_moves=None):
        super().__init__(labels, covers, [lab.length() for lab in labels])
        self.n = n
        self.report = report
        self.cover_moves = cover_moves or {}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "elements": [lab.to_json() for lab in self.labels],
            "covers": [list(c) for c in self.covers],
            "build": self.report.to_json(),
        }


def build_poset(n: int, max_length: int | None = None, gate: str = "both") -> StratumPoset:
    """Breadth-first closure of the bottom stratum under the moves A, B', B, C.

    Only labels passing :func:`realizable` are kept.  Covers are recorded with
    the set of moves producing them.  Elements are sorted by (length, label).
    """
    if n < 1:
        raise ValueError(f"build_poset needs n >= 1, got {n}")
    if gate not in GATES:
        raise ValueError(f"unknown gate {gate!r}")
    report = BuildReport(n, max_length, gate)
    start = StratumLabel.bottom(n)
    seen = {start}
    edges: dict[tuple[StratumLabel, StratumLabel], set[str]] = {}
    blocked = set()
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        if max_length is not None and lam.length() >= max_length:
            if any(mv != "B-blocked" and realizable(nxt, gate) for mv, nxt in _moves(lam)):
                report.truncated = True
            continue
        for mv, nxt in _moves(lam):
            if nxt is None:
                blocked.add(lam)
                continue
            if not realizable(nxt, gate):
                report.rejected += 1
                continue
            edges.setdefault((lam, nxt), set()).add(mv)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    labels = sorted(seen, key=lambda s: (s.length(), s))
    idx = {lab: i for i, lab in enumerate(labels)}
    covers = sorted((idx[a], idx[b]) for a, b in edges)
    moves = {(idx[a], idx[b]): "".join(sorted(m)) for (a, b), m in edges.items()}
    for ms in edges.values():
        for m in ms:
            report.move_counts[m] = report.move_counts.get(m, 0) + 1
    report.blocked_b = sorted(blocked)
    return StratumPoset(n, labels, covers, report, moves)


# --- quotient by short strata -----------------------------------------------


class QuotientPoset(GradedPoset):
    """Strata of length < m collapsed to the bottom.

    ``rank`` is the honest grading ``l - m + 1`` (bottom at 0).
    ``lm[i]`` is the shifted length ``l - m`` (0 when ``l < m``), which is the
    quantity used in the vanishing bound and differs from ``rank`` by one
    off the bottom.
    """

    def __init__(self, parent: GradedPoset, m: int, labels, covers, rank, lm, pr):
        super().__init__(labels, covers, rank)
        self.parent = parent
        self.m = m
        self.lm = lm
        self.pr = pr


BOTTOM = "0"


def quotient_poset(P: GradedPoset, m: int) -> QuotientPoset:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        keep = list(range(len(P)))
        pr = keep[:]
        labels = list(P.labels)
        covers = list(P.covers)
        rank = list(P.rank)
        lm = [max(r - 1, 0) for r in P.rank]
        return QuotientPoset(P, m, labels, covers, rank, lm, pr)
    keep = [i for i in range(len(P)) if P.rank[i] >= m]
    new = {old: k + 1 for k, old in enumerate(keep)}
    labels = [BOTTOM] + [P.labels[i] for i in keep]
    covers = [(0, new[i]) for i in keep if P.rank[i] == m]
    covers += [(new[a], new[b]) for a, b in P.covers if a in new and b in new]
    rank = [0] + [P.rank[i] - m + 1 for i in keep]
    lm = [0] + [P.rank[i] - m for i in keep]
    pr = [new.get(i, 0) for i in range(len(P))]
    return QuotientPoset(P, m, labels, covers, rank, lm, pr)


@dataclass
class VanishingReport:
    ok: bool
    strict_ok: bool
    failures: list[dict]
    strict_failures: list[dict]
    top: list[dict]

    def to_json(self) -> dict:
        return {
            "pass": self.ok,
            "pass_strict": self.strict_ok,
            "failures": self.failures,
            "strict_failures": self.strict_failures,
            "top": self.top,
        }


def check_vanishing(P: GradedPoset, m: int = 1) -> VanishingReport:
    """H~^i(bottom, x) = 0 for i < l^m(x) - 2, on the quotient by length < m.

    The strict variant uses the quotient's own rank in place of l^m.
    """
    from .poset import interval_cohomology

    Q = quotient_poset(P, m)
    b = Q.bottom
    fails, strict, top = [], [], []
    for x in range(len(Q)):
        coh = interval_cohomology(Q, b, x)
        bad = {d: r for d, r in coh.ranks.items() if d < Q.lm[x] - 2}
        bad_strict = {d: r for d, r in coh.ranks.items() if d < Q.rank[x] - 2}
        lab = _label_repr(Q.labels[x])
        if bad:
            fails.append({"element": lab, "ranks": bad})
        if bad_strict:
            strict.append({"element": lab, "ranks": bad_strict})
        td = coh.top_degree()
        top.append({"element": lab, "degree": td, "rank": coh[td] if td is not None else 0})
    return VanishingReport(not fails, not strict, fails, strict, top)


def _label_repr(lab) -> str:
    return repr(lab) if not isinstance(lab, str) else lab


# --- symmetric group action -------------------------------------------------


def symmetric_action(n: int) -> GroupAction:
    return GroupAction.symmetric(n, lambda g, lab: lab.relabel(g))


@dataclass
class Orbit:
    members: list[int]
    type: RamificationType
    length: int

    @property
    def size(self) -> int:
        return len(self.members)


def orbit_decomposition(P: GradedPoset, action: GroupAction | None = None) -> list[Orbit]:
    """Orbits under relabeling, each tagged with its reduced ramification type."""
    if action is None:
        action = symmetric_action(P.labels[0].n)
    out = []
    for orb in orbits(P, action):
        types = {P.labels[i].ram_type() for i in orb}
        if len(types) != 1:
            raise AssertionError(f"orbit mixes ramification types: {types}")
        out.append(Orbit(orb, types.pop(), P.rank[orb[0]]))
    return out


@dataclass
class StabilizationRow:
    n: int
    orbit_count: int
    orbit_types: list[RamificationType]
    combinatorial: int
    affine: int
    both: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "orbits": self.orbit_count,
            "orbit_types": [t.to_json() for t in self.orbit_types],
            "combinatorial": self.combinatorial,
            "affine": self.affine,
            "both": self.both,
        }


def stabilization_check(m: int, n_range: Iterable[int]) -> dict:
    """Length-m orbit counts of the model against admissible type counts."""
    rows = []
    for n in n_range:
        P = build_poset(n, max_length=m)
        orbs = [o for o in orbit_decomposition(P) if o.length == m]
        rows.append(
            StabilizationRow(
                n,
                len(orbs),
                sorted((o.type for o in orbs), key=lambda t: t.to_json()),
                len(admissible_types(m, n, "combinatorial")),
                len(admissible_types(m, n, "affine")),
                len(admissible_types(m, n, "both")),
            )
        )
    total = len(enumerate_types(m))

    def first_stable(key):
        vals = [getattr(r, key) for r in rows]
        for k in range(len(rows)):
            if all(v == vals[k] for v in vals[k:]) and vals[k] == total:
                return rows[k].n
        return None

    return {
        "m": m,
        "types_of_length_m": total,
        "rows": [r.to_json() for r in rows],
        "stable_from": {
            "orbits": first_stable("orbit_count"),
            "combinatorial": first_stable("combinatorial"),
            "affine": first_stable("affine"),
        },
        "orbit_types_match_admissible": all(
            r.orbit_types == sorted(admissible_types(m, r.n, "both"), key=lambda t: t.to_json())
            for r in rows
        ),
    }


__all__ = [
    "BuildReport",
    "Orbit",
    "QuotientPoset",
    "SetPartition",
    "StratumInvariants",
    "StratumLabel",
    "StratumPoset",
    "VanishingReport",
    "build_poset",
    "check_vanishing",
    "orbit_decomposition",
    "quotient_poset",
    "realizable",
    "stabilization_check",
    "stratum_invariants",
    "symmetric_action",
]
