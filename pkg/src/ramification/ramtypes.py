"""Ramification types of polynomial maps and their counting functions.

A branch profile is the multiset of ramification indices sitting over one
branch point; a ramification type is a multiset of profiles.  The length of
a type is ``sum over profiles of (sum(e - 1) - 1)``, so simple profiles
``{2}`` contribute nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import prod
from typing import Iterable, Sequence

from .partitions import enumerate_partitions, partition_count

CONVENTIONS = ("eq12", "multiset")


@dataclass(frozen=True, order=True)
class BranchProfile:
    """Ramification indices over one branch point, stored sorted ascending."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(int(e) for e in self.indices))
        if not idx:
            raise ValueError("a branch profile needs at least one index")
        if idx[0] < 2:
            raise ValueError(f"ramification indices must be >= 2, got {idx}")
        object.__setattr__(self, "indices", idx)

    def local_ram_length(self) -> int:
        return sum(e - 1 for e in self.indices)

    def contribution(self) -> int:
        return self.local_ram_length() - 1

    @property
    def size(self) -> int:
        """Number of ramification points in the fiber (``k_j``)."""
        return len(self.indices)

    def is_simple(self) -> bool:
        return self.indices == (2,)

    def sort_key(self):
        return (self.contribution(), self.indices)

    def __repr__(self):
        return "{" + ",".join(map(str, self.indices)) + "}"


@dataclass(frozen=True)
class RamificationType:
    """Multiset of branch profiles in canonical order.

    Profiles are ordered by ``(contribution, indices)``.  The empty type is the
    unique type of length 0 once simple profiles are discarded.
    """

    profiles: tuple[BranchProfile, ...] = ()

    def __post_init__(self):
        profs = tuple(
            p if isinstance(p, BranchProfile) else BranchProfile(tuple(p))
            for p in self.profiles
        )
        object.__setattr__(self, "profiles", tuple(sorted(profs, key=BranchProfile.sort_key)))

    @classmethod
    def of(cls, *profiles: Iterable[int]) -> "RamificationType":
        return cls(tuple(BranchProfile(tuple(p)) for p in profiles))

    def length(self) -> int:
        return sum(p.contribution() for p in self.profiles)

    def reduced(self) -> "RamificationType":
        """Drop the simple profiles ``{2}``; this is the element of the limit poset."""
        return RamificationType(tuple(p for p in self.profiles if not p.is_simple()))

    def ram_total(self) -> int:
        """``sum over all profiles of sum(e - 1)``."""
        return sum(p.local_ram_length() for p in self.profiles)

    def to_json(self) -> list[list[int]]:
        return sorted(list(p.indices) for p in self.profiles)

    @classmethod
    def from_json(cls, data) -> "RamificationType":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(BranchProfile(tuple(p)) for p in data))

    def __repr__(self):
        return "{" + ",".join(repr(p) for p in self.profiles) + "}"


def type_length(t: RamificationType) -> int:
    """Length of ``t``; asserts the two standard formulas agree."""
    by_profile = sum(sum(e - 1 for e in p.indices) - 1 for p in t.profiles)
    # m = sum(e - 2) + sum(k - 1)
    by_indices = sum(e - 2 for p in t.profiles for e in p.indices) + sum(
        p.size - 1 for p in t.profiles
    )
    assert by_profile == by_indices
    return by_profile


@lru_cache(maxsize=None)
def profiles_of_contribution(c: int) -> tuple[BranchProfile, ...]:
    """All branch profiles with ``sum(e - 1) - 1 == c``, in partition order."""
    if c < 0:
        return ()
    return tuple(
        BranchProfile(tuple(part + 1 for part in lam)) for lam in enumerate_partitions(c + 1)
    )


def c_of_m(m: int, convention: str = "multiset") -> int:
    """The counting function c(m) under one of two readings.

    ``eq12``: sum over partitions ``n_1 <= ... <= n_k`` of ``m`` of
    ``prod p(n_j + 1)``, evaluated literally.
    ``multiset``: the number of multisets of branch profiles of total
    contribution ``m``.
    """
    if m < 1:
        raise ValueError(f"c(m) is defined for m >= 1, got {m}")
    if convention == "eq12":
        return sum(prod(partition_count(part + 1) for part in lam) for lam in enumerate_partitions(m))
    if convention == "multiset":
        return _multiset_count(m)
    raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


@lru_cache(maxsize=None)
def _multiset_count(m: int) -> int:
    total = 0
    for lam in enumerate_partitions(m):
        term = 1
        for c in set(lam):
            r = lam.count(c)
            kinds = partition_count(c + 1)
            term *= _multichoose(kinds, r)
        total += term
    return total


def _multichoose(kinds: int, r: int) -> int:
    from math import comb

    return comb(kinds + r - 1, r)


def enumerate_types(m: int) -> list[RamificationType]:
    """All ramification types of length exactly ``m`` (no simple profiles)."""
    if m < 0:
        raise ValueError(f"enumerate_types needs m >= 0, got {m}")
    out = []
    for lam in enumerate_partitions(m):
        groups = []
        for c in sorted(set(lam), reverse=True):
            r = lam.count(c)
            groups.append(list(combinations_with_replacement(profiles_of_contribution(c), r)))
        for choice in product(*groups):
            out.append(RamificationType(tuple(p for grp in choice for p in grp)))
    return out


@dataclass(frozen=True)
class AdmissibilityReport:
    type: RamificationType
    n: int
    combinatorial: bool
    affine: bool
    reasons: tuple[str, ...] = field(default=())


def admissibility(t: RamificationType, n: int) -> AdmissibilityReport:
    """Check both admissibility notions of ``t`` in degree ``n + 1``.

    Only the non-simple profiles are inspected.
    """
    core = t.reduced()
    reasons = []
    ram = core.ram_total()
    if ram > n:
        reasons.append(f"sum(e-1) = {ram} > n = {n}")
    for p in core.profiles:
        if sum(p.indices) > n + 1:
            reasons.append(f"fiber {p!r} needs {sum(p.indices)} > n+1 = {n + 1} sheets")
    comb_ok = not reasons
    slack = n - ram
    need = sum(p.size - 1 for p in core.profiles)
    aff_ok = slack >= need
    if not aff_ok:
        reasons.append(f"n - sum(e-1) = {slack} < sum(k-1) = {need}")
    return AdmissibilityReport(core, n, comb_ok, aff_ok, tuple(reasons))


def is_combinatorially_admissible(t: RamificationType, n: int) -> bool:
    return admissibility(t, n).combinatorial


def is_affine_admissible(t: RamificationType, n: int) -> bool:
    return admissibility(t, n).affine


def minimal_admissible_n(m: int, kind: str = "combinatorial") -> int:
    """Smallest ``n`` at which every type of length ``m`` is admissible.

    Found by scanning ``n`` upward over ``enumerate_types(m)``.
    """
    if m < 1:
        raise ValueError(f"minimal_admissible_n needs m >= 1, got {m}")
    if kind not in ("combinatorial", "affine"):
        raise ValueError(f"unknown admissibility kind {kind!r}")
    types = enumerate_types(m)
    n = 1
    while True:
        reports = [admissibility(t, n) for t in types]
        if all(getattr(r, kind) for r in reports):
            return n
        n += 1


def admissible_types(m: int, n: int, kind: str = "both") -> list[RamificationType]:
    """Length-``m`` types passing the chosen admissibility test at ``n``."""
    out = []
    for t in enumerate_types(m):
        rep = admissibility(t, n)
        ok = {
            "combinatorial": rep.combinatorial,
            "affine": rep.affine,
            "both": rep.combinatorial and rep.affine,
        }[kind]
        if ok:
            out.append(t)
    return out


def types_from_json(data: Sequence) -> list[RamificationType]:
    return [RamificationType.from_json(t) for t in data]
