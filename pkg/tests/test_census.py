import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ramification.census import (
    BudgetExceeded,
    PreconditionError,
    branch_poly,
    census,
    census_reference,
    infer_c,
    length_histogram,
    predicted_counts,
    ram_length,
    ram_lengths_fast,
    range_flags,
    shard_prefixes,
    type_of,
    verify_count,
)
from ramification.field import field_make
from ramification.poly import DensePoly
from ramification.ramtypes import RamificationType, admissible_types

F5, F7, F11, F13 = (field_make(p) for p in (5, 7, 11, 13))


def P(F, *coeffs):
    return DensePoly.from_ints(F, coeffs)


def random_f(F, n, rnd):
    return DensePoly(F, (0,) + tuple(rnd.randrange(F.q) for _ in range(n)) + (1,))


# --- single polynomials ------------------------------------------------------


def test_branch_poly_examples():
    assert branch_poly(P(F5, 0, 0, 1)) == P(F5, 0, 1)
    assert branch_poly(P(F5, 0, 0, 0, 1)) == P(F5, 0, 0, 1)
    assert branch_poly(P(F7, 0, 0, -2, 0, 1)) == P(F7, 0, 1, 2, 1)


def test_ram_length_examples():
    assert ram_length(P(F5, 0, 0, 1)) == 0
    assert ram_length(P(F5, 0, 0, 0, 1)) == 1
    assert ram_length(P(F7, 0, 0, -2, 0, 1)) == 1


def test_type_of_examples():
    assert type_of(P(F7, 0, 0, 0, 0, 1)).type == RamificationType.of([4])
    assert type_of(P(F7, 0, -3, 0, 1)).type == RamificationType.of([2], [2])
    assert type_of(P(F7, 0, 0, -2, 0, 1)).type == RamificationType.of([2], [2, 2])


def test_preconditions():
    with pytest.raises(PreconditionError):
        ram_length(P(F5, 0, 0, 0, 0, 0, 1))  # p = n + 1
    with pytest.raises(PreconditionError):
        ram_length(P(F7, 0, 0, 2))
    with pytest.raises(PreconditionError):
        ram_length(P(F7, 1, 0, 1))
    with pytest.raises(PreconditionError):
        census(4, 1, F5)
    with pytest.raises(BudgetExceeded):
        census(6, 1, F11, budget=10**5)


def sympy_ram_length(f):
    # length = n - number of distinct roots of Res_x(f - y, f')
    p = f.field.p
    x, y = sympy.symbols("x y")
    fx = sum(c * x**i for i, c in enumerate(f.coeffs))
    B = sympy.Poly(sympy.resultant(fx - y, sympy.diff(fx, x), x), y, modulus=p)
    sqf = B.quo(B.gcd(B.diff(y)))
    return f.degree - 1 - sqf.degree()


@pytest.mark.parametrize("F,n", [(F7, 3), (F7, 4), (F11, 5), (F13, 6)], ids=str)
def test_ram_length_matches_sympy(F, n):
    rnd = random.Random(n * F.q)
    for _ in range(15):
        f = random_f(F, n, rnd)
        assert ram_length(f) == sympy_ram_length(f)


def critical_value_oracle(f, ext_fields):
    """Length by locating critical points in an extension and counting distinct values."""
    n = f.degree - 1
    df = f.derivative()
    for E in ext_fields:
        fe = DensePoly(E, f.coeffs)
        dfe = DensePoly(E, df.coeffs)
        roots = [a for a in E.elements() if dfe(a) == 0]
        # multiplicities: all roots found when their count with multiplicity reaches n
        mult = 0
        for a in roots:
            g, k = dfe, 0
            while g(a) == 0 and not g.is_zero():
                g = g // DensePoly(E, (E.neg(a), 1))
                k += 1
            mult += k
        if mult == n:
            return n - len({fe(a) for a in roots})
    raise AssertionError("derivative does not split in the given extensions")


@pytest.mark.parametrize("p", [5, 7])
def test_census_n3_against_root_finding(p):
    F = field_make(p)
    exts = [field_make(p, 2), field_make(p, 3)]
    hist = {0: 0, 1: 0, 2: 0, 3: 0}
    for a1 in range(p):
        for a2 in range(p):
            for a3 in range(p):
                hist[critical_value_oracle(DensePoly(F, (0, a1, a2, a3, 1)), exts)] += 1
    assert hist == census(3, 1, F).histogram


# --- census -----------------------------------------------------------------

# values below were cross-checked against the pure-Python path, sympy and root finding
KNOWN = {
    (2, 5): {0: 20, 1: 5, 2: 0},
    (3, 5): {0: 80, 1: 40, 2: 5, 3: 0},
    (3, 7): {0: 252, 1: 84, 2: 7, 3: 0},
    (4, 7): {0: 1848, 1: 336, 2: 210, 3: 7, 4: 0},
    (3, 25): {0: 14400, 1: 1200, 2: 25, 3: 0},
}


@pytest.mark.parametrize("n,q", sorted(KNOWN), ids=lambda v: str(v))
def test_census_histograms(n, q):
    from ramification.field import field_from_q

    rec = census(n, 1, field_from_q(q))
    assert rec.histogram == KNOWN[(n, q)]
    assert sum(rec.histogram.values()) == q**n
    assert rec.count == rec.histogram[0]


@pytest.mark.parametrize("n,p", [(2, 5), (3, 5), (3, 7), (4, 7)])
def test_kernel_matches_reference(n, p):
    F = field_make(p)
    assert census(n, 2, F).histogram == census_reference(n, 2, F).histogram


def test_kernel_matches_reference_extension_field():
    # F_9 has characteristic 3 = n + 1 at n = 2, which is excluded
    with pytest.raises(PreconditionError):
        census(2, 1, field_make(3, 2))
    F = field_make(5, 2)
    assert census(2, 1, F).histogram == census_reference(2, 1, F).histogram


def test_simply_branched_closed_forms():
    # fitted from the census itself; n=3 for q in {5,7,11,13}, n=4 for q in {7,11}
    for q in (5, 7, 11, 13):
        assert census(3, 1, field_make(q)).count == q**3 - 2 * q**2 + q
    for q in (7, 11):
        assert census(4, 1, field_make(q)).count == q**4 - 2 * q**3 + 3 * q**2 - 2 * q


def test_shard_invariance():
    F = F7
    base, _ = length_histogram(5, F, shards=1)
    for shards in (2, 7, 8, 49, 400):
        h, k = length_histogram(5, F, shards=shards)
        assert h == base
        assert k == len(shard_prefixes(7, 5, shards))


def test_parallel_jobs_deterministic():
    a = census(4, 1, F11, jobs=1)
    b = census(4, 1, F11, jobs=2, shards=11)
    assert a.histogram == b.histogram and a.count == b.count


def test_shard_prefixes():
    assert shard_prefixes(5, 3, 1) == [()]
    assert len(shard_prefixes(5, 3, 6)) == 25
    assert len(shard_prefixes(5, 2, 10**6)) == 25


def test_record_json_and_csv():
    rec = census(3, 1, F5)
    js = rec.to_json()
    assert js["count"] == "80" and js["histogram"]["1"] == "40"
    assert rec.histogram_csv().splitlines()[:2] == ["length,count", "0,80"]


def test_verify_and_infer_small():
    v = verify_count(2, 1, F5)
    assert v.record.count == 20
    assert v.verdict == "matches-neither"
    assert "out-of-range:n<3m" in v.flags
    res = infer_c(2, 1, [F5])
    assert res.values == {5: Fraction(1)}
    assert predicted_counts(3, 2, 5) == {"eq12": 125 - 7 * 5, "multiset": 125 - 6 * 5}
    assert range_flags(6, 2, 7) == ["out-of-range:n>=p-1"]


# --- properties over random polynomials ------------------------------------


poly_case = st.sampled_from([(F7, 3), (F7, 4), (F11, 5), (F11, 6), (field_make(5, 2), 3)]).flatmap(
    lambda fn: st.tuples(
        st.just(fn[0]),
        st.lists(st.integers(0, fn[0].q - 1), min_size=fn[1], max_size=fn[1]),
        st.integers(0, fn[0].q - 1),
    )
)


@settings(max_examples=60, deadline=None)
@given(poly_case)
def test_translation_invariance(case):
    F, coeffs, t = case
    f = DensePoly(F, (0,) + tuple(coeffs) + (1,))
    g = f.compose_shift(t) - DensePoly.const(F, f(t))
    assert g[0] == 0 and g.is_monic()
    assert ram_length(g) == ram_length(f)


@settings(max_examples=60, deadline=None)
@given(poly_case)
def test_type_of_consistent_with_length(case):
    F, coeffs, _ = case
    f = DensePoly(F, (0,) + tuple(coeffs) + (1,))
    n = f.degree - 1
    res = type_of(f)
    assert res.type.ram_total() == n
    assert res.type.length() == ram_length(f)
    B = branch_poly(f)
    assert B.degree == n
    if ram_length(f) == 0:
        assert all(p.is_simple() for p in res.type.profiles)


@settings(max_examples=40, deadline=None)
@given(poly_case)
def test_fast_path_matches_slow(case):
    F, coeffs, _ = case
    f = DensePoly(F, (0,) + tuple(coeffs) + (1,))
    assert ram_lengths_fast([f]) == [ram_length(f)]


# --- realizability witnesses ------------------------------------------------


def test_chebyshev_witness():
    # T_5 / 16 has two critical values, each over two double points
    F = F11
    c = F.inv(16)
    f = DensePoly(F, (0, F.mul(5 % 11, c), 0, F.mul(F.neg(20 % 11), c), 0, 1))
    assert type_of(f).type == RamificationType.of([2, 2], [2, 2])


@pytest.mark.parametrize("n,p", [(3, 11), (4, 11), (5, 11), (6, 11)])
def test_affine_admissible_types_are_realized(n, p):
    """Every affine-admissible type of length <= 2 shows up among random f."""
    F = field_make(p)
    wanted = {t for m in (1, 2) for t in admissible_types(m, n, "affine")}
    rnd = np.random.default_rng(n)
    found = set()
    for _ in range(20):
        coefs = np.zeros((20000, n + 2), dtype=np.int64)
        coefs[:, 1 : n + 1] = rnd.integers(0, p, size=(20000, n))
        coefs[:, n + 1] = 1
        from ramification import _kernel
        from ramification.census import _kernel_args

        lens = _kernel.ram_length_batch(coefs, n, *_kernel_args(F, n))
        for row in coefs[(lens == 1) | (lens == 2)][:4000]:
            t = type_of(DensePoly(F, tuple(int(c) for c in row))).type.reduced()
            found.add(t)
        if wanted <= found:
            break
    assert wanted <= found, sorted(map(repr, wanted - found))
