from itertools import product

import pytest

from ramification.poset import interval_cohomology, invariant_cohomology, is_locally_semimodular, mobius
from ramification.ramtypes import RamificationType, admissible_types
from ramification.strata import (
    SetPartition,
    StratumLabel,
    build_poset,
    check_vanishing,
    orbit_decomposition,
    quotient_poset,
    stabilization_check,
    stratum_invariants,
    symmetric_action,
)

L = StratumLabel.parse


@pytest.fixture(scope="module")
def P3():
    return build_poset(3)


@pytest.fixture(scope="module")
def P4():
    return build_poset(4)


def test_set_partition_basics():
    s = SetPartition.of([3, 1], [2])
    assert s.blocks == ((1, 3), (2,))
    assert s.relabel((2, 3, 1)).blocks == ((1, 2), (3,))
    assert len(SetPartition.all(4)) == 15
    assert len(SetPartition.all(5)) == 52
    with pytest.raises(ValueError):
        SetPartition.of([1], [3])


def test_refinement_enforced():
    with pytest.raises(ValueError):
        L([[1, 2], [3]], [[1, 3], [2]])


def test_stratum_invariants_examples():
    inv = stratum_invariants(StratumLabel.bottom(3))
    assert inv.N == {1, 2, 3} and inv.R == () and inv.F == () and inv.l == 0
    t = stratum_invariants(L([[1, 2], [3]], [[1, 2], [3]]))
    assert t.l == 1 and t.R == ((1, 2),) and t.F == ((1, 2),) and t.N == {3}
    d = stratum_invariants(L([[1], [2], [3]], [[1, 2], [3]]))
    assert d.l == 1 and d.R == ((1,), (2,))
    assert stratum_invariants(StratumLabel.top(3)).l == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_length_formulas_agree_on_all_labels(n):
    parts = SetPartition.all(n)
    for r1, r2 in product(parts, parts):
        if r1.refines(r2):
            lab = StratumLabel(r1, r2)
            assert lab.length() == n - r2.num_blocks
            assert lab.ram_type(reduced=False).ram_total() == n
            assert lab.ram_type().length() == lab.length()


def test_n2():
    P = build_poset(2)
    assert len(P) == 2
    assert P.labels == [StratumLabel.bottom(2), StratumLabel.top(2)]


def test_n3_structure(P3):
    assert len(P3) == 8
    assert P3.is_graded()
    atoms = P3.upper[P3.bottom]
    assert len(atoms) == 6
    assert all(P3.upper[a] == [P3.top] for a in atoms)
    d = P3.index[L([[1], [2], [3]], [[1, 2], [3]])]
    assert P3.upper[d] == [P3.top]
    assert P3.cover_moves[(d, P3.top)] == "B"


def test_n3_topology(P3):
    assert interval_cohomology(P3, P3.bottom, P3.top).ranks == {0: 5}
    assert mobius(P3, P3.bottom, P3.top) == 5
    assert is_locally_semimodular(P3).ok
    assert check_vanishing(P3, 1).ok


def test_n3_orbits(P3):
    orbs = orbit_decomposition(P3)
    atoms = [o for o in orbs if o.length == 1]
    assert {(o.size, o.type) for o in atoms} == {
        (3, RamificationType.of([3])),
        (3, RamificationType.of([2, 2])),
    }
    assert [o.size for o in orbs if o.length != 1] == [1, 1]


def test_n3_invariant_class(P3):
    # the two atom orbits leave a one-dimensional invariant class at the top
    assert invariant_cohomology(P3, P3.top, symmetric_action(3)) == {0: 1}
    atom = P3.upper[P3.bottom][0]
    assert invariant_cohomology(P3, atom, symmetric_action(3)) == {-1: 1}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_model_invariants(n):
    P = build_poset(n)
    assert P.is_graded()
    assert P.is_hasse()
    assert symmetric_action(n).check_automorphisms(P)
    assert not P.report.blocked_b
    for i, lab in enumerate(P.labels):
        # projection to the second partition is rank preserving
        assert lab.n - lab.rho2.num_blocks == P.rank[i]
    for a, b in P.covers:
        assert P.labels[b].rho2.num_blocks == P.labels[a].rho2.num_blocks - 1


def test_n4_semimodularity_counterexample(P4):
    # two sibling pairs on disjoint indices; their join would be {{2,2},{2,2}},
    # which the affine gate drops at n = 4 (4 - 4 < 2)
    rep = is_locally_semimodular(P4)
    assert not rep.ok
    x, a, b, y = rep.counterexample
    assert x == StratumLabel.bottom(4) and y == StratumLabel.top(4)
    assert a.ram_type() == b.ram_type() == RamificationType.of([2, 2])
    pa, pb = a.F()[0], b.F()[0]
    assert not set(pa) & set(pb)
    join = StratumLabel(a.rho1, SetPartition.of(pa, pb))
    assert join.ram_type() == RamificationType.of([2, 2], [2, 2])
    assert join not in P4.index


def test_n4_combinatorial_gate_variant():
    # without the affine test the join comes back, but with no simple point left
    # it has no admissible upward move, so the poset gets extra maximal elements
    P = build_poset(4, gate="combinatorial")
    assert not P.is_graded()
    assert len(P.maximal()) > 1


def test_vanishing_n4(P4):
    rep = check_vanishing(P4, 1)
    assert rep.ok and rep.strict_ok
    assert check_vanishing(P4, 2).ok


def test_quotient_poset(P3):
    Q1 = quotient_poset(P3, 1)
    assert Q1.labels == P3.labels and Q1.covers == P3.covers
    Q2 = quotient_poset(P3, 2)
    assert len(Q2) == 2 and Q2.covers == [(0, 1)]
    assert Q2.lm == [0, 0]
    P5 = build_poset(5, max_length=3)
    Q = quotient_poset(P5, 2)
    for i, old in enumerate(range(len(P5))):
        j = Q.pr[old]
        if P5.rank[old] == 3:
            assert Q.lm[j] == 1 and Q.rank[j] == 2
        if P5.rank[old] < 2:
            assert j == 0
    assert Q.is_graded() or Q.top is None


def test_truncation_reported():
    P = build_poset(4, max_length=1)
    assert P.report.truncated
    assert max(P.rank) == 1


def test_stabilization_m1():
    res = stabilization_check(1, range(3, 7))
    assert [r["orbits"] for r in res["rows"]] == [2, 2, 2, 2]


def test_stabilization_m2():
    res = stabilization_check(2, range(3, 7))
    rows = {r["n"]: r for r in res["rows"]}
    assert rows[4]["combinatorial"] != rows[5]["combinatorial"]
    assert rows[5]["combinatorial"] == rows[6]["combinatorial"] == 6
    assert res["stable_from"]["combinatorial"] == 5
    assert res["orbit_types_match_admissible"]
    assert [rows[n]["orbits"] for n in (4, 5, 6)] == [len(admissible_types(2, n, "both")) for n in (4, 5, 6)]


def test_json_dump(P3):
    js = P3.to_json()
    assert js["elements"][0] == {"rho1": [[1], [2], [3]], "rho2": [[1], [2], [3]], "l": 0}
    assert len(js["covers"]) == 12
