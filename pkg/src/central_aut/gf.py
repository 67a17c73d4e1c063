"""Arithmetic in GF(p) and in GF(p)[x].

Polynomials are stored as coefficient tuples, constant term first, so
``x^3 + x + 1`` is ``(1, 1, 0, 1)``.  Residues modulo a polynomial ``m`` of
degree ``n`` are length-``n`` tuples in the same order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` by trial division, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def inv(self, a: int) -> int:
        return gf_inverse(a, self)

    @cached_property
    def inverse_table(self) -> np.ndarray:
        """``table[a]`` is the inverse of ``a``; ``table[0]`` is 0."""
        table = np.zeros(self.p, dtype=np.int64)
        for a in range(1, self.p):
            table[a] = pow(a, -1, self.p)
        return table

    def __repr__(self):
        return f"GF({self.p})"


def gf_inverse(a: int, field: PrimeField) -> int:
    a %= field.p
    if a == 0:
        raise ZeroDivisionError(f"0 is not invertible in {field!r}")
    return pow(a, -1, field.p)


def _trim(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class PolyOverF:
    """Dense polynomial over GF(p), coefficients lowest degree first."""

    field: PrimeField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.field.p
        object.__setattr__(self, "coeffs", _trim(int(a) % p for a in self.coeffs))

    @classmethod
    def from_list(cls, coeffs, p: int | PrimeField) -> "PolyOverF":
        field = p if isinstance(p, PrimeField) else PrimeField(p)
        return cls(field, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __call__(self, x):
        """Evaluate at a scalar by Horner's rule."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = (acc * x + a) % self.field.p
        return acc

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mon:
                terms.append(str(a))
            elif a == 1:
                terms.append(mon)
            else:
                terms.append(f"{a}{mon}")
        return " + ".join(terms)


def _require_monic(m: PolyOverF, min_degree: int = 1):
    if not m.is_monic:
        raise ValueError(f"polynomial {m} is not monic")
    if m.degree < min_degree:
        raise ValueError(f"polynomial {m} has degree < {min_degree}")


def poly_divmod(a: tuple, b: tuple, p: int) -> tuple[tuple, tuple]:
    """Long division of coefficient tuples; ``b`` must be nonzero."""
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(_trim(a))
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(rem) - db, 0)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        coef = rem[-1] * inv_lead % p
        quot[shift] = coef
        for i, bi in enumerate(b):
            rem[shift + i] = (rem[shift + i] - coef * bi) % p
        rem = list(_trim(rem))
    return _trim(quot), tuple(rem)


def residue_mul(a: tuple, b: tuple, m: tuple, p: int) -> tuple:
    """Product of two residues modulo monic ``m`` (lengths = deg m)."""
    n = len(m) - 1
    prod = [0] * (2 * n - 1 if n else 0)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(n):
                prod[k - n + i] -= c * m[i]
    return tuple(x % p for x in prod[:n]) + (0,) * max(0, n - len(prod))


def residue_pow(base: tuple, e: int, m: PolyOverF) -> tuple:
    """``base**e`` in GF(p)[x]/(m) by repeated squaring."""
    p, mc, n = m.field.p, m.coeffs, m.degree
    result = (1,) + (0,) * (n - 1)
    while e:
        if e & 1:
            result = residue_mul(result, base, mc, p)
        base = residue_mul(base, base, mc, p)
        e >>= 1
    return result


def x_residue(m: PolyOverF) -> tuple:
    """The class of ``x`` in GF(p)[x]/(m)."""
    n = m.degree
    if n == 1:
        return ((-m.coeffs[0]) % m.field.p,)
    return (0, 1) + (0,) * (n - 2)


def order_of_x(m: PolyOverF) -> int:
    """Multiplicative order of ``x`` modulo ``m`` by direct iteration.

    Returns 0 when ``x`` is not a unit (``m(0) = 0``).
    """
    _require_monic(m)
    if m.coeffs[0] == 0:
        return 0
    p, mc, n = m.field.p, m.coeffs, m.degree
    one = (1,) + (0,) * (n - 1)
    x = x_residue(m)
    cur, k = x, 1
    while cur != one:
        cur = residue_mul(cur, x, mc, p)
        k += 1
    return k


def monic_polys(field: PrimeField, degree: int):
    """All monic polynomials of the given degree, in ascending order
    when read as base-p integers (leading coefficient most significant)."""
    for tail in itertools.product(range(field.p), repeat=degree):
        yield PolyOverF(field, tuple(reversed(tail)) + (1,))


def poly_is_irreducible(m: PolyOverF) -> bool:
    """True iff ``m`` has no monic factor of degree 1..deg(m)-1."""
    _require_monic(m)
    p = m.field.p
    for d in range(1, m.degree // 2 + 1):
        for g in monic_polys(m.field, d):
            if not poly_divmod(m.coeffs, g.coeffs, p)[1]:
                return False
    return True


def poly_is_primitive(m: PolyOverF) -> bool:
    """True iff ``x`` has order ``p^n - 1`` modulo the irreducible ``m``."""
    _require_monic(m)
    if not poly_is_irreducible(m):
        raise ValueError(f"{m} is not irreducible")
    if m.coeffs[0] == 0:
        return False
    N = m.field.p ** m.degree - 1
    one = (1,) + (0,) * (m.degree - 1)
    x = x_residue(m)
    if residue_pow(x, N, m) != one:
        return False
    return all(residue_pow(x, N // q, m) != one for q in prime_factors(N))


def find_primitive_polynomial(field: PrimeField, n: int) -> PolyOverF:
    """Smallest monic primitive polynomial of degree ``n``.

    Candidates are compared as base-p integers (leading coefficient most
    significant), which gives ``x^3 + x + 1`` and ``x^4 + x + 1`` over GF(2).
    """
    if n < 1:
        raise ValueError("degree must be positive")
    for m in monic_polys(field, n):
        if m.coeffs[0] and poly_is_irreducible(m) and poly_is_primitive(m):
            return m
    raise AssertionError("unreachable: primitive polynomials exist in every degree")


def companion_matrix(m: PolyOverF) -> np.ndarray:
    """Companion matrix for row vectors: ``e_i C = e_{i+1}``, last row ``-m_0..-m_{n-1}``."""
    _require_monic(m)
    n, p = m.degree, m.field.p
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        C[i, i + 1] = 1
    C[n - 1, :] = [(-a) % p for a in m.coeffs[:n]]
    return C


def eval_poly_at_matrix(m: PolyOverF, M: np.ndarray) -> np.ndarray:
    p = m.field.p
    M = np.asarray(M, dtype=np.int64) % p
    acc = np.zeros_like(M)
    eye = np.eye(M.shape[0], dtype=np.int64)
    for a in reversed(m.coeffs):
        acc = (acc @ M + a * eye) % p
    return acc


# dense polynomial helpers for the characteristic polynomial


def _padd(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim((x + y) % p for x, y in zip(a, b))


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(v % p for v in out)


def charpoly(M: np.ndarray, field: PrimeField) -> PolyOverF:
    """``det(xI - M)`` by cofactor expansion, memoized over column subsets."""
    p = field.p
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    entry = [
        [_trim([(-int(M[i, j])) % p, 1 if i == j else 0]) for j in range(n)]
        for i in range(n)
    ]
    memo: dict[int, tuple] = {0: (1,)}

    def minor(cols: int) -> tuple:
        # determinant of the last popcount(cols) rows restricted to cols
        if cols in memo:
            return memo[cols]
        row = n - bin(cols).count("1")
        acc: tuple = ()
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                term = _pmul(entry[row][j], minor(cols & ~(1 << j)), p)
                if sign < 0:
                    term = tuple((-t) % p for t in term)
                acc = _padd(acc, term, p)
                sign = -sign
        memo[cols] = acc
        return acc

    return PolyOverF(field, minor((1 << n) - 1))
