"""Finite fields F_q, q = p^d, with elements encoded as integers.

An element with representative ``c_0 + c_1 t + ... + c_{d-1} t^{d-1}`` (modulo
the defining polynomial) is encoded as ``c_0 + c_1 p + ... + c_{d-1} p^{d-1}``.
Integers ``0..p-1`` therefore encode themselves, and ``range(q)`` is the
canonical enumeration of the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

MAX_TABLE_Q = 2048


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# Plain polynomials over F_p as ascending coefficient lists, used only to find
# and test the defining polynomial.


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _fp_trim([x % p for x in a])
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _fp_trim(a)
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_mod(out, m, p)


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def is_irreducible_fp(m: tuple[int, ...], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p (Rabin-style gcd test)."""
    d = len(m) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    mod = list(m)
    x = [0, 1]
    xpk = x
    for _ in range(1, d // 2 + 1):
        # xpk <- xpk^p mod m
        r, base, e = [1], xpk, p
        while e:
            if e & 1:
                r = _fp_mulmod(r, base, mod, p)
            base = _fp_mulmod(base, base, mod, p)
            e >>= 1
        xpk = r
        diff = list(xpk) + [0] * max(0, 2 - len(xpk))
        diff[1] = (diff[1] - 1) % p
        g = _fp_gcd(mod, _fp_trim(diff), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree ``d`` over F_p.

    Coefficient tuples ``(c_{d-1}, ..., c_0)`` are scanned in ascending order.
    """
    for tail in product(range(p), repeat=d):
        m = tuple(reversed(tail)) + (1,)
        if is_irreducible_fp(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # cannot happen


@dataclass(frozen=True, eq=False)
class FieldParams:
    """The field F_{p^d}; ``modulus`` is ``None`` when ``d == 1``."""

    p: int
    d: int
    modulus: tuple[int, ...] | None

    @property
    def q(self) -> int:
        return self.p**self.d

    def __repr__(self):
        return f"F_{self.q}"

    # encoding

    def decode(self, x: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.d):
            x, r = divmod(x, self.p)
            digits.append(r)
        return tuple(digits)

    def encode(self, digits) -> int:
        out = 0
        for c in reversed(tuple(digits)):
            out = out * self.p + (c % self.p)
        return out

    def from_int(self, k: int) -> int:
        return k % self.p

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        return int(self.tables[0][a, b])

    def sub(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a - b) % self.p
        return int(self.tables[1][a, b])

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        return int(self.tables[2][a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return int(self.tables[3][a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    def _slow_mul(self, a: int, b: int) -> int:
        prod_ = _fp_mulmod(list(self.decode(a)), list(self.decode(b)), list(self.modulus), self.p)
        return self.encode(prod_ + [0] * (self.d - len(prod_)))

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(add, sub, mul, inv) lookup tables as int64 arrays; ``inv[0] = 0``."""
        q, p = self.q, self.p
        if q > MAX_TABLE_Q:
            raise ValueError(f"field tables limited to q <= {MAX_TABLE_Q}, got {q}")
        digits = np.array([self.decode(x) for x in range(q)], dtype=np.int64).reshape(q, self.d)
        weights = p ** np.arange(self.d, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights
        if self.d == 1:
            idx = np.arange(q, dtype=np.int64)
            mul = np.outer(idx, idx) % p
        else:
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    mul[a, b] = mul[b, a] = self._slow_mul(a, b)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            (hit,) = np.nonzero(mul[a] == 1)
            inv[a] = hit[0]
        return add.astype(np.int64), sub.astype(np.int64), mul, inv


@lru_cache(maxsize=None)
def field_make(p: int, d: int = 1) -> FieldParams:
    """The field of order ``p**d`` with a deterministic defining polynomial."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 1:
        raise ValueError(f"extension degree must be >= 1, got {d}")
    modulus = None if d == 1 else smallest_irreducible(p, d)
    return FieldParams(p, d, modulus)


def field_from_q(q: int) -> FieldParams:
    """Field of order ``q`` given as a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            d, r = 0, q
            while r % p == 0:
                r //= p
                d += 1
            if r != 1 or not is_prime(p):
                break
            return field_make(p, d)
    raise ValueError(f"{q} is not a prime power")
