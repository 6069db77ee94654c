"""Finite graded posets and the topology of their intervals.

Elements are stored by index; ``labels[i]`` is the user-facing object.  The
order is the reflexive-transitive closure of the cover relation, kept as
Python-int bitsets (bit j of ``up[i]`` is set iff i <= j).

Cohomology conventions: for u < v the reduced cochain complex of the order
complex of the open interval (u, v) has the empty chain in degree -1 and a
chain of k interior elements in degree k - 1.  For u = v the complex is a
single copy of Q in degree -2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from .linalg import rank_sparse


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class GradedPoset:
    """Finite poset given by its cover relation.

    ``rank`` defaults to the longest-chain distance from the bottom.  The
    poset need not actually be graded; :meth:`is_graded` checks it.
    """

    def __init__(
        self,
        labels: Sequence[Hashable],
        covers: Iterable[tuple[int, int]],
        rank: Sequence[int] | None = None,
    ):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate poset labels")
        n = len(self.labels)
        self.covers = sorted(set(covers))
        self.upper = [[] for _ in range(n)]
        self.lower = [[] for _ in range(n)]
        for a, b in self.covers:
            if a == b:
                raise ValueError("an element cannot cover itself")
            self.upper[a].append(b)
            self.lower[b].append(a)
        self.up = self._closure()
        for i in range(n):
            for j in _bits(self.up[i]):
                if j != i and (self.up[j] >> i) & 1:
                    raise ValueError(f"cover relation has a cycle through {self.labels[i]!r}")
        self.rank = list(rank) if rank is not None else self._longest_rank()

    @classmethod
    def from_labels(cls, labels, covers, rank=None) -> "GradedPoset":
        """Build from label pairs instead of index pairs."""
        idx = {lab: i for i, lab in enumerate(labels)}
        return cls(labels, [(idx[a], idx[b]) for a, b in covers], rank)

    def __len__(self):
        return len(self.labels)

    def _topo_order(self) -> list[int]:
        indeg = [len(lo) for lo in self.lower]
        order = [i for i, d in enumerate(indeg) if d == 0]
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            for j in self.upper[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != len(self.labels):
            raise ValueError("cover relation has a cycle")
        return order

    def _closure(self) -> list[int]:
        up = [1 << i for i in range(len(self.labels))]
        for i in reversed(self._topo_order()):
            for j in self.upper[i]:
                up[i] |= up[j]
        return up

    def _longest_rank(self) -> list[int]:
        rank = [0] * len(self.labels)
        for i in self._topo_order():
            for j in self.upper[i]:
                rank[j] = max(rank[j], rank[i] + 1)
        return rank

    @cached_property
    def down(self) -> list[int]:
        down = [0] * len(self.labels)
        for i, mask in enumerate(self.up):
            for j in _bits(mask):
                down[j] |= 1 << i
        return down

    # order queries

    def leq(self, a: int, b: int) -> bool:
        return bool((self.up[a] >> b) & 1)

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.lower[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.upper[i]]

    @property
    def bottom(self) -> int | None:
        mins = self.minimal()
        return mins[0] if len(mins) == 1 else None

    @property
    def top(self) -> int | None:
        maxs = self.maximal()
        return maxs[0] if len(maxs) == 1 else None

    def open_interval(self, u: int, v: int) -> list[int]:
        mask = self.up[u] & self.down[v] & ~(1 << u) & ~(1 << v)
        return sorted(_bits(mask), key=lambda i: (self.rank[i], i))

    def closed_interval(self, u: int, v: int) -> list[int]:
        return sorted(_bits(self.up[u] & self.down[v]), key=lambda i: (self.rank[i], i))

    def is_bounded(self) -> bool:
        return self.bottom is not None and self.top is not None

    def is_graded(self) -> bool:
        """Bounded, and every cover raises ``rank`` by exactly one."""
        if not self.is_bounded() or self.rank[self.bottom] != 0:
            return False
        return all(self.rank[b] == self.rank[a] + 1 for a, b in self.covers)

    def is_hasse(self) -> bool:
        """True when no recorded cover is implied by a longer chain."""
        for a, b in self.covers:
            for c in self.upper[a]:
                if c != b and self.leq(c, b):
                    return False
        return True

    def relabel_map(self, fn: Callable[[Hashable], Hashable]) -> list[int]:
        """Index permutation induced by a label map (must be an automorphism)."""
        return [self.index[fn(lab)] for lab in self.labels]


# --- chains and cohomology --------------------------------------------------


def chains(P: GradedPoset, elems: Sequence[int]) -> list[list[tuple[int, ...]]]:
    """Chains among ``elems`` grouped by size: out[k] = chains of k+1 elements."""
    elems = sorted(elems, key=lambda i: (P.rank[i], i))
    pos = {e: k for k, e in enumerate(elems)}
    above = {e: [f for f in elems if f != e and P.leq(e, f)] for e in elems}
    out: list[list[tuple[int, ...]]] = []
    layer = [(e,) for e in elems]
    while layer:
        out.append(layer)
        nxt = []
        for ch in layer:
            for f in above[ch[-1]]:
                nxt.append(ch + (f,))
        layer = sorted(nxt, key=lambda c: [pos[x] for x in c])
    return out


@dataclass(frozen=True)
class IntervalCohomology:
    """Reduced cohomology ranks over Q, nonzero degrees only."""

    ranks: dict[int, int] = field(default_factory=dict)

    def euler(self) -> int:
        return sum((-1) ** (d % 2) * r for d, r in self.ranks.items())

    def top_degree(self) -> int | None:
        return max(self.ranks) if self.ranks else None

    def __getitem__(self, d: int) -> int:
        return self.ranks.get(d, 0)


def _cochain_ranks(cells: list[list], coboundary_rows) -> dict[int, int]:
    """Betti numbers from cell counts per degree (index 0 = degree -1)."""
    dims = [len(c) for c in cells]
    ranks = [rank_sparse(coboundary_rows(k)) for k in range(len(cells) - 1)]
    out = {}
    for k, dim in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        b = dim - r_out - r_in
        if b:
            out[k - 1] = b
    return out


def _reduced_complex(P: GradedPoset, u: int, v: int):
    inner = P.open_interval(u, v)
    cells = [[()]] + chains(P, inner)
    return cells


def interval_cohomology(P: GradedPoset, u: int, v: int) -> IntervalCohomology:
    """Reduced cohomology of the order complex of the open interval (u, v)."""
    if not P.leq(u, v):
        raise ValueError(f"{P.labels[u]!r} is not below {P.labels[v]!r}")
    if u == v:
        return IntervalCohomology({-2: 1})
    cells = _reduced_complex(P, u, v)
    index = [{c: i for i, c in enumerate(layer)} for layer in cells]

    def rows(k):
        # transpose of delta_k: one row per (k+1)-cell listing its faces
        for cell in cells[k + 1]:
            row = {}
            for i in range(len(cell)):
                face = cell[:i] + cell[i + 1 :]
                row[index[k][face]] = (-1) ** i
            yield row

    return IntervalCohomology(_cochain_ranks(cells, rows))


def mobius(P: GradedPoset, u: int, v: int) -> int:
    """Mobius function by the recursion mu(u, v) = -sum_{u<=z<v} mu(u, z)."""
    if not P.leq(u, v):
        return 0
    mu = {}
    for z in P.closed_interval(u, v):
        if z == u:
            mu[z] = 1
        else:
            mu[z] = -sum(mu[y] for y in mu if P.leq(y, z) and y != z)
    return mu[v]


def reduced_euler(P: GradedPoset, u: int, v: int) -> int:
    """Reduced Euler characteristic of (u, v) counted from chains directly."""
    if u == v:
        return 1
    return sum((-1) ** (k % 2) * len(layer) for k, layer in enumerate(_reduced_complex(P, u, v), -1))


@dataclass
class SemimodularityReport:
    ok: bool
    counterexample: tuple | None = None  # (x, alpha, beta, y) as labels


def is_locally_semimodular(P: GradedPoset) -> SemimodularityReport:
    """Every interval [x, y]: two covers of x below y have a common cover below y."""
    for x in range(len(P)):
        for a, b in combinations(sorted(P.upper[x]), 2):
            common = set(P.upper[a]) & set(P.upper[b])
            reach = 0
            for t in common:
                reach |= P.up[t]
            bad = (P.up[a] & P.up[b]) & ~reach
            if bad:
                y = min(_bits(bad), key=lambda i: (P.rank[i], i))
                lab = P.labels
                return SemimodularityReport(False, (lab[x], lab[a], lab[b], lab[y]))
    return SemimodularityReport(True)


# --- group actions ----------------------------------------------------------


def generate_group(gens: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Closure of index permutations under composition (small groups only)."""
    if not gens:
        return []
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[i]] for i in range(n))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(seen)


@dataclass
class GroupAction:
    """Symmetric-group action on {1..n} and, through ``act``, on labels.

    ``act(perm, label)`` relabels; ``perm`` is a tuple with ``perm[i-1]`` the
    image of ``i``.
    """

    n: int
    generators: list[tuple[int, ...]]
    act: Callable[[tuple[int, ...], Hashable], Hashable]

    @classmethod
    def symmetric(cls, n: int, act) -> "GroupAction":
        if n < 2:
            return cls(n, [tuple(range(1, n + 1))], act)
        swap = (2, 1) + tuple(range(3, n + 1))
        cycle = tuple(range(2, n + 1)) + (1,)
        return cls(n, [swap, cycle], act)

    @cached_property
    def elements(self) -> list[tuple[int, ...]]:
        gens0 = [tuple(x - 1 for x in g) for g in self.generators]
        return [tuple(x + 1 for x in g) for g in generate_group(gens0)]

    def on_poset(self, P: GradedPoset) -> list[list[int]]:
        """Each group element as a permutation of poset indices."""
        return [P.relabel_map(lambda lab, g=g: self.act(g, lab)) for g in self.elements]

    def check_automorphisms(self, P: GradedPoset) -> bool:
        covers = set(P.covers)
        for perm in self.on_poset(P):
            if any((perm[a], perm[b]) not in covers for a, b in P.covers):
                return False
            if any(P.rank[perm[i]] != P.rank[i] for i in range(len(P))):
                return False
        return True


def orbits(P: GradedPoset, action: GroupAction) -> list[list[int]]:
    perms = action.on_poset(P)
    seen = set()
    out = []
    for i in sorted(range(len(P)), key=lambda i: (P.rank[i], i)):
        if i in seen:
            continue
        orb = sorted({g[i] for g in perms})
        seen.update(orb)
        out.append(orb)
    return out


def invariant_cohomology(
    P: GradedPoset, lam: int, action: GroupAction, base: int | None = None
) -> dict[int, int]:
    """Dimensions of the invariants of H~(base, lam) under the stabilizer of lam.

    Computed on the subcomplex of invariant cochains, spanned by indicator
    functions of chain orbits; in characteristic 0 taking invariants commutes
    with cohomology.
    """
    u = P.bottom if base is None else base
    if u == lam:
        return {-2: 1}
    perms = [g for g in action.on_poset(P) if g[lam] == lam and g[u] == u]
    cells = _reduced_complex(P, u, lam)
    orbit_of: list[dict[tuple, int]] = []
    reps: list[list[tuple]] = []
    for layer in cells:
        omap: dict[tuple, int] = {}
        rlist: list[tuple] = []
        for c in layer:
            if c in omap:
                continue
            k = len(rlist)
            rlist.append(c)
            for g in perms:
                omap[tuple(g[x] for x in c)] = k
        orbit_of.append(omap)
        reps.append(rlist)

    def rows(k):
        # (delta 1_O)(rep O') = sum_i (-1)^i [face_i(rep O') in O]
        for rep in reps[k + 1]:
            row: dict[int, int] = {}
            for i in range(len(rep)):
                face = rep[:i] + rep[i + 1 :]
                o = orbit_of[k][face]
                row[o] = row.get(o, 0) + (-1) ** i
            yield row

    return _cochain_ranks(reps, rows)


# --- classical example ------------------------------------------------------


def partition_lattice(n: int) -> GradedPoset:
    """The lattice of set partitions of {1..n}, ordered by refinement."""
    from .strata import SetPartition

    elems = SetPartition.all(n)
    elems.sort(key=lambda s: (n - s.num_blocks, s.blocks))
    idx = {s: i for i, s in enumerate(elems)}
    covers = []
    for s in elems:
        for a, b in combinations(range(s.num_blocks), 2):
            covers.append((idx[s], idx[s.merge(a, b)]))
    return GradedPoset(elems, covers, [n - s.num_blocks for s in elems])


def symmetric_action_on_partitions(n: int) -> GroupAction:
    return GroupAction.symmetric(n, lambda g, s: s.relabel(g))


__all__ = [
    "GradedPoset",
    "IntervalCohomology",
    "GroupAction",
    "SemimodularityReport",
    "chains",
    "interval_cohomology",
    "invariant_cohomology",
    "is_locally_semimodular",
    "mobius",
    "orbits",
    "partition_lattice",
    "reduced_euler",
    "symmetric_action_on_partitions",
]
