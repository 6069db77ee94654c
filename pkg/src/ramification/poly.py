"""Dense univariate polynomials over a finite field.

Coefficients are field-element codes (see :mod:`ramification.field`), stored
in ascending degree with trailing zeros stripped.  The zero polynomial has
no coefficients and degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import FieldParams


@dataclass(frozen=True)
class DensePoly:
    field: FieldParams
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # constructors

    @classmethod
    def from_ints(cls, field: FieldParams, coeffs: Sequence[int]) -> "DensePoly":
        """Ascending integer coefficients, reduced into the prime subfield."""
        return cls(field, tuple(field.from_int(c) for c in coeffs))

    @classmethod
    def const(cls, field: FieldParams, c: int) -> "DensePoly":
        return cls(field, (c,))

    @classmethod
    def x(cls, field: FieldParams) -> "DensePoly":
        return cls(field, (0, 1))

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = str(c) if (c != 1 or i == 0) else ""
            terms.append(cs + ("x" if i == 1 else f"x^{i}" if i else ""))
        return " + ".join(terms)

    # arithmetic

    def _same(self, other: "DensePoly"):
        if other.field is not self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "DensePoly") -> "DensePoly":
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return DensePoly(F, tuple(F.add(self[i], other[i]) for i in range(n)))

    def __sub__(self, other: "DensePoly") -> "DensePoly":
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return DensePoly(F, tuple(F.sub(self[i], other[i]) for i in range(n)))

    def __neg__(self) -> "DensePoly":
        return DensePoly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        self._same(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return DensePoly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return DensePoly(F, tuple(out))

    def __pow__(self, e: int) -> "DensePoly":
        result = DensePoly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> "DensePoly":
        return DensePoly(self.field, tuple(self.field.mul(c, a) for a in self.coeffs))

    def monic(self) -> "DensePoly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic normalization")
        return self.scale(self.field.inv(self.lc))

    def __divmod__(self, other: "DensePoly"):
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = F.inv(other.lc)
        quo = [0] * max(0, len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            c = F.mul(c, inv_lc)
            quo[k - db] = c
            for j, b in enumerate(other.coeffs):
                rem[k - db + j] = F.sub(rem[k - db + j], F.mul(c, b))
        return DensePoly(F, tuple(quo)), DensePoly(F, tuple(rem[:db]) if db > 0 else ())

    def __floordiv__(self, other: "DensePoly") -> "DensePoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "DensePoly") -> "DensePoly":
        return divmod(self, other)[1]

    def derivative(self) -> "DensePoly":
        F = self.field
        return DensePoly(F, tuple(F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose_shift(self, t: int) -> "DensePoly":
        """``self(x + t)``."""
        F = self.field
        shift = DensePoly(F, (t, 1))
        acc = DensePoly(F, ())
        for c in reversed(self.coeffs):
            acc = acc * shift + DensePoly.const(F, c)
        return acc


def poly_gcd_monic(a: DensePoly, b: DensePoly) -> DensePoly:
    """Monic gcd by Euclidean remainders."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def resultant(a: DensePoly, b: DensePoly) -> int:
    """``lc(b)^deg(a) * prod_{b(beta)=0} a(beta)``, by Euclidean remainders."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    F = a.field
    acc = 1
    while True:
        if b.degree == 0:
            return F.mul(acc, F.pow(b.lc, a.degree))
        r = a % b
        if r.is_zero():
            return 0
        # Res(a, b) = lc(b)^(deg a - deg r) Res(r, b);  Res(r, b) = (-1)^(deg r deg b) Res(b, r)
        acc = F.mul(acc, F.pow(b.lc, a.degree - r.degree))
        if (r.degree * b.degree) % 2:
            acc = F.neg(acc)
        a, b = b, r


def interpolate(field: FieldParams, xs: Sequence[int], ys: Sequence[int]) -> DensePoly:
    """The unique polynomial of degree < len(xs) through the points (Newton form)."""
    F = field
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    result = DensePoly(F, ())
    for i in range(n - 1, -1, -1):
        result = result * DensePoly(F, (F.neg(xs[i]), 1)) + DensePoly.const(F, coef[i])
    return result


def squarefree_part(h: DensePoly) -> DensePoly:
    """``h / gcd(h, h')``, monic; valid when all root multiplicities are < p."""
    return (h // poly_gcd_monic(h, h.derivative())).monic()


def squarefree_decomposition(h: DensePoly) -> list[tuple[DensePoly, int]]:
    """Yun's algorithm: ``h = lc * prod u_k^k`` with monic squarefree coprime ``u_k``.

    Returns ``[(u_k, k), ...]`` for nonconstant layers, ascending in ``k``.
    Raises ``ValueError`` if some root multiplicity reaches the characteristic.
    """
    if h.is_zero():
        raise ValueError("squarefree decomposition of zero")
    F = h.field
    if h.degree == 0:
        return []
    f = h.monic()
    df = f.derivative()
    layers = []
    if df.is_zero():
        raise ValueError("derivative vanishes: multiplicity divisible by the characteristic")
    a = poly_gcd_monic(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        u = poly_gcd_monic(b, d) if not d.is_zero() else b.monic()
        b, c = b // u, d // u
        d = c - b.derivative()
        if u.degree > 0:
            layers.append((u, k))
        k += 1
    check = DensePoly.const(F, 1)
    for u, k in layers:
        check = check * u**k
    if check != f:
        raise ValueError("root multiplicity >= characteristic; decomposition undefined")
    return layers


def gcd_free_basis(polys: Sequence[DensePoly]) -> list[DensePoly]:
    """Pairwise coprime monic squarefree refinement of squarefree inputs.

    Every input is a product of basis elements, and each basis element
    divides or is coprime to each input.
    """
    basis: list[DensePoly] = []
    for w in polys:
        w = w.monic()
        new_basis = []
        for e in basis:
            if w.degree <= 0:
                new_basis.append(e)
                continue
            g = poly_gcd_monic(e, w)
            if g.degree > 0:
                new_basis.append(g)
                rest = e // g
                if rest.degree > 0:
                    new_basis.append(rest.monic())
                w = w // g
            else:
                new_basis.append(e)
        basis = new_basis
        if w.degree > 0:
            basis.append(w.monic())
    return basis
