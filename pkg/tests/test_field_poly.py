import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ramification.field import field_from_q, field_make, is_irreducible_fp, smallest_irreducible
from ramification.poly import (
    DensePoly,
    gcd_free_basis,
    interpolate,
    poly_gcd_monic,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)

FIELDS = [field_make(5), field_make(7), field_make(2, 2), field_make(3, 2), field_make(7, 2), field_make(2, 3)]


def P(F, *coeffs):
    return DensePoly.from_ints(F, coeffs)


def test_moduli():
    assert field_make(5).modulus == (0, 1) or field_make(5).d == 1
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(7, 2).modulus == (1, 0, 1)
    assert field_from_q(49) is field_make(7, 2)
    with pytest.raises(ValueError):
        field_make(6)
    with pytest.raises(ValueError):
        field_from_q(12)


def test_smallest_irreducible_is_first_in_scan():
    for p, d in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 2)]:
        mod = smallest_irreducible(p, d)
        # no earlier monic tuple (c_{d-1}..c_0) is irreducible
        key = tuple(reversed(mod[:-1]))
        for c in range(p**d):
            digits = tuple((c // p**i) % p for i in reversed(range(d)))
            if digits >= key:
                break
            cand = tuple(reversed(digits)) + (1,)
            assert not is_irreducible_fp(cand, p)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_field_axioms_exhaustive(F):
    els = F.elements()
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    rnd = random.Random(F.q)
    for _ in range(300):
        a, b, c = (rnd.choice(els) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_frobenius_fixes_prime_field_only(F):
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert fixed == list(range(F.p))


def test_gcd_examples():
    F5, F7 = field_make(5), field_make(7)
    assert poly_gcd_monic(P(F5, -1, 0, 1), P(F5, -1, 1)) == P(F5, -1, 1)
    f = P(F5, 2, 0, 3)
    assert poly_gcd_monic(f, DensePoly(F5, ())) == f.monic()
    a = P(F7, -2, 1) ** 2 * P(F7, -3, 1)
    b = P(F7, -2, 1) * P(F7, -4, 1)
    assert poly_gcd_monic(a, b) == P(F7, -2, 1)
    with pytest.raises(ValueError):
        poly_gcd_monic(DensePoly(F7, ()), DensePoly(F7, ()))


def test_resultant_examples():
    F5 = field_make(5)
    assert resultant(P(F5, 1, 0, 1), P(F5, 1, 1)) == 2
    a = P(F5, 1, 2, 3, 1)
    assert resultant(a, P(F5, 3)) == F5.pow(3, 3)
    with pytest.raises(ValueError):
        resultant(a, DensePoly(F5, ()))


def split_poly(F, roots, lead=1):
    f = DensePoly.const(F, lead)
    for r in roots:
        f = f * DensePoly(F, (F.neg(r), 1))
    return f


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_resultant_product_formula(F, data):
    els = F.elements()
    a_coeffs = data.draw(st.lists(st.sampled_from(els), min_size=1, max_size=6))
    a = DensePoly(F, tuple(a_coeffs))
    if a.is_zero():
        a = DensePoly.const(F, 1)
    roots = data.draw(st.lists(st.sampled_from(els), min_size=0, max_size=5))
    lead = data.draw(st.sampled_from(els[1:]))
    b = split_poly(F, roots, lead)
    expected = F.pow(lead, a.degree)
    for r in roots:
        expected = F.mul(expected, a(r))
    assert resultant(a, b) == expected
    assert (resultant(a, b) == 0) == (poly_gcd_monic(a, b).degree >= 1)


def sylvester_det(a, b):
    # descending coefficient rows; standard resultant lc(a)^deg b prod b(alpha)
    da, db = len(a) - 1, len(b) - 1
    A, B = list(reversed(a)), list(reversed(b))
    rows = [[0] * i + A + [0] * (db - 1 - i) for i in range(db)]
    rows += [[0] * i + B + [0] * (da - 1 - i) for i in range(da)]
    return int(sympy.Matrix(rows).det())


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 10), min_size=2, max_size=7), st.lists(st.integers(0, 10), min_size=2, max_size=7))
def test_resultant_matches_sylvester(ac, bc):
    F = field_make(11)
    a, b = P(F, *ac), P(F, *bc)
    if a.degree < 1 or b.degree < 1:
        return
    std = sylvester_det(a.coeffs, b.coeffs)
    sign = -1 if (a.degree * b.degree) % 2 else 1
    assert resultant(a, b) == (sign * std) % 11


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_interpolate_roundtrip(F):
    rnd = random.Random(1)
    for _ in range(20):
        k = rnd.randint(1, min(F.q, 6))
        xs = rnd.sample(F.elements(), k)
        ys = [rnd.choice(F.elements()) for _ in xs]
        f = interpolate(F, xs, ys)
        assert f.degree < k
        assert [f(x) for x in xs] == ys


def test_squarefree_decomposition_examples():
    F7 = field_make(7)
    h = P(F7, -1, 1) ** 2 * P(F7, -2, 1)
    assert squarefree_decomposition(h) == [(P(F7, -2, 1), 1), (P(F7, -1, 1), 2)]
    g = P(F7, 1, 0, 1) * P(F7, 0, 1)
    assert squarefree_decomposition(g) == [(g, 1)]
    h = P(F7, 0, 1) ** 3 * P(F7, -1, 0, 1) ** 2
    assert squarefree_decomposition(h) == [(P(F7, -1, 0, 1), 2), (P(F7, 0, 1), 3)]
    assert squarefree_part(h) == P(F7, 0, 1) * P(F7, -1, 0, 1)


def test_squarefree_rejects_char_multiplicity():
    F5 = field_make(5)
    with pytest.raises(ValueError):
        squarefree_decomposition(P(F5, -1, 1) ** 5 * P(F5, 0, 1))


@pytest.mark.parametrize("F", [field_make(7), field_make(3, 2)], ids=lambda F: f"q{F.q}")
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_squarefree_decomposition_reconstructs(F, data):
    els = F.elements()
    # distinct roots, multiplicities below the characteristic
    roots = data.draw(st.lists(st.sampled_from(els), min_size=1, max_size=5, unique=True))
    mults = data.draw(st.lists(st.integers(1, min(3, F.p - 1)), min_size=len(roots), max_size=len(roots)))
    h = DensePoly.const(F, 1)
    for r, k in zip(roots, mults):
        h = h * split_poly(F, [r]) ** k
    dec = squarefree_decomposition(h)
    prod_ = DensePoly.const(F, 1)
    for u, k in dec:
        assert squarefree_part(u) == u
        prod_ = prod_ * u**k
    assert prod_ == h.monic()
    for (u, _), (v, _) in zip(dec, dec[1:]):
        assert poly_gcd_monic(u, v).degree == 0


def test_gcd_free_basis():
    F7 = field_make(7)
    x1, x2, x3 = P(F7, -1, 1), P(F7, -2, 1), P(F7, -3, 1)
    basis = gcd_free_basis([x1 * x2, x2 * x3])
    assert sorted(b.coeffs for b in basis) == sorted(b.coeffs for b in [x1, x2, x3])


def test_compose_shift_and_derivative():
    F7 = field_make(7)
    f = P(F7, 0, 0, 0, 1)
    assert f.compose_shift(1) == P(F7, 1, 3, 3, 1)
    assert f.derivative() == P(F7, 0, 0, 3)
