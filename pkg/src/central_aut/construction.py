"""The linear map f : V -> Lambda^2 V with block matrix [[b, c], [A, 0]], and
computational checks of the facts about A and f that the automorphism
argument relies on."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .exterior import ExtBasis, wedge
from .gf import (
    PolyOverF,
    PrimeField,
    charpoly,
    companion_matrix,
    find_primitive_polynomial,
    poly_is_irreducible,
    poly_is_primitive,
    residue_mul,
    residue_pow,
    x_residue,
)
from .linalg import Subspace, identity, matrix_power, rank_and_kernel, row_space


class AssumptionViolated(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FMatrix:
    """Matrix of f in the bases v_0..v_n of V and ExtBasis of Lambda^2 V.

    Row i of ``full`` holds the coordinates of v_i f.  Instances built by
    :func:`assemble_f_matrix` need not satisfy the construction's
    hypotheses; :func:`build_f_matrix` enforces them.
    """

    field: PrimeField
    n: int
    b: np.ndarray
    c: np.ndarray
    A: np.ndarray
    full: np.ndarray
    m: PolyOverF | None = None
    basis: ExtBasis = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", ExtBasis(self.n + 1))

    @property
    def p(self) -> int:
        return self.field.p

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "poly": self.m.to_list() if self.m is not None else None,
            "b": self.b.tolist(),
            "c": self.c.tolist(),
            "A": self.A.tolist(),
            "f": self.full.tolist(),
            "columns": self.basis.labels(),
        }


def assemble_f_matrix(field: PrimeField, b, c, A, m: PolyOverF | None = None) -> FMatrix:
    """Lay out [[b, c], [A, 0]] without validating anything."""
    p = field.p
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    b = np.asarray(b, dtype=np.int64).reshape(n) % p
    c = np.asarray(c, dtype=np.int64).reshape(comb(n, 2)) % p
    full = np.zeros((n + 1, comb(n + 1, 2)), dtype=np.int64)
    full[0, :n] = b
    full[0, n:] = c
    full[1:, :n] = A
    full.flags.writeable = False
    return FMatrix(field, n, b, c, A, full, m)


def default_b(n: int) -> np.ndarray:
    b = np.zeros(n, dtype=np.int64)
    b[0] = 1
    return b


def default_c(n: int) -> np.ndarray:
    c = np.zeros(comb(n, 2), dtype=np.int64)
    c[0] = 1
    return c


def build_f_matrix(field: PrimeField, n: int, b=None, c=None, m: PolyOverF | None = None) -> FMatrix:
    """f with A the companion matrix of a primitive polynomial of degree n.

    Defaults: b = c = (1, 0, ..., 0) and the smallest primitive polynomial.
    """
    if n < 3:
        raise AssumptionViolated(f"requires n+1 >= 4, got n = {n}")
    p = field.p
    b = default_b(n) if b is None else np.asarray(b, dtype=np.int64) % p
    c = default_c(n) if c is None else np.asarray(c, dtype=np.int64) % p
    if b.shape != (n,):
        raise AssumptionViolated(f"b must have length {n}")
    if c.shape != (comb(n, 2),):
        raise AssumptionViolated(f"c must have length {comb(n, 2)}")
    if not b.any():
        raise AssumptionViolated("Assumption violated: b must be nonzero")
    if not c.any():
        raise AssumptionViolated("Assumption violated: c must be nonzero")
    if m is None:
        m = find_primitive_polynomial(field, n)
    if m.field != field:
        raise AssumptionViolated("polynomial is over a different field")
    if not m.is_monic or m.degree != n:
        raise AssumptionViolated(f"m must be monic of degree {n}")
    if not poly_is_irreducible(m) or not poly_is_primitive(m):
        raise AssumptionViolated(f"Assumption violated: {m} is not primitive")
    return assemble_f_matrix(field, b, c, companion_matrix(m), m)


# -- reports -------------------------------------------------------------------


@dataclass
class CheckItem:
    item: str
    description: str
    passed: bool
    witness: object = None

    def to_dict(self) -> dict:
        return {
            "item": self.item,
            "description": self.description,
            "pass": self.passed,
            "witness": _jsonable(self.witness) if not self.passed else None,
        }


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def report_passed(report: list[CheckItem]) -> bool:
    return all(item.passed for item in report)


def report_to_json(report: list[CheckItem]) -> list[dict]:
    return [item.to_dict() for item in report]


def multiplicative_order(M: np.ndarray, p: int, limit: int) -> int | None:
    """Order of M by iterating powers; None if it exceeds ``limit``."""
    eye = identity(M.shape[0])
    cur = M % p
    for k in range(1, limit + 1):
        if np.array_equal(cur, eye):
            return k
        cur = (cur @ M) % p
    return None


def commutant_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{X : XA = AX}`` as flattened n*n row vectors."""
    n = A.shape[0]
    # vec(XA - AX) = vec(X) (I (x) A - A^T (x) I) in row-major flattening
    L = (np.kron(identity(n), A) - np.kron(A.T, identity(n))) % p
    _, ker = rank_and_kernel(L, p)
    return ker.basis


def check_companion_properties(A: np.ndarray, m: PolyOverF) -> list[CheckItem]:
    p, n = m.field.p, m.degree
    q = p**n
    report = []

    roots = [residue_pow(x_residue(m), p**i, m) for i in range(n)]
    root_ok = len(set(roots)) == n and all(_residue_is_root(m, r) for r in roots)
    report.append(CheckItem(
        "1", "char poly of A is m and x, x^p, ..., x^(p^(n-1)) are n distinct roots of m mod m",
        charpoly(A, m.field) == m and root_ok,
        {"charpoly": charpoly(A, m.field).to_list(), "m": m.to_list()},
    ))

    order = multiplicative_order(A, p, q - 1)
    report.append(CheckItem("2", f"A has multiplicative order p^n - 1 = {q - 1}", order == q - 1, order))

    powers = [matrix_power(A, i, p) for i in range(q - 1)]
    elems = {np.zeros((n, n), dtype=np.int64).tobytes()} | {P.tobytes() for P in powers}
    closed = all(
        ((X + Y) % p).tobytes() in elems
        for X in [np.zeros((n, n), dtype=np.int64)] + powers
        for Y in powers
    )
    report.append(CheckItem(
        "3", f"{{0}} u {{A^i}} has p^n = {q} distinct elements and is closed under +",
        len(elems) == q and closed, len(elems),
    ))

    e0 = np.zeros(n, dtype=np.int64)
    e0[0] = 1
    krylov = np.array([(e0 @ matrix_power(A, i, p)) % p for i in range(n)])
    cyc_rank = rank_and_kernel(krylov, p)[0]
    report.append(CheckItem("4", "e_0 is a cyclic vector: F^n = e_0 F[A]", cyc_rank == n, cyc_rank))

    cent = Subspace.span(commutant_basis(A, p), p, n * n)
    poly_span = Subspace.span([matrix_power(A, i, p).reshape(-1) for i in range(n)], p, n * n)
    report.append(CheckItem(
        "5", "centralizer of A in End(F^n) has dimension n and equals span{I, A, ..., A^(n-1)}",
        cent.dim == n and cent == poly_span, cent.dim,
    ))
    return report


def _residue_is_root(m: PolyOverF, r: tuple) -> bool:
    # m(r) in F[x]/(m) by Horner
    n, p = m.degree, m.field.p
    acc = (0,) * n
    for a in reversed(m.coeffs):
        acc = residue_mul(acc, r, m.coeffs, p)
        acc = ((acc[0] + a) % p,) + acc[1:]
    return not any(acc)


def v0_wedge_space(basis: ExtBasis, p: int) -> Subspace:
    """v_0 ^ V as a subspace of Lambda^2 V."""
    k = basis.n_plus_1
    E = identity(k)
    return Subspace.span([wedge(E[0], E[i], basis, p) for i in range(1, k)], p, basis.dim)


def wedge_absorbing_space(f: FMatrix) -> Subspace:
    """``{x in V : x ^ V <= V f}`` as the kernel of x -> (x ^ v_i mod V f)_i."""
    p, k = f.p, f.n + 1
    Q = row_space(f.full, p).annihilator()
    E = identity(k)
    blocks = []
    for i in range(k):
        # row j: coordinates of v_j ^ v_i modulo V f
        blocks.append(np.array([(wedge(E[j], E[i], f.basis, p) @ Q) % p for j in range(k)]).reshape(k, -1))
    M = np.hstack(blocks)
    return rank_and_kernel(M, p)[1]


def check_f_properties(f: FMatrix) -> list[CheckItem]:
    p, n = f.p, f.n
    k = n + 1
    report = []

    r, ker = rank_and_kernel(f.full, p)
    report.append(CheckItem("1", "f is injective", ker.dim == 0, ker.basis))

    Vf = row_space(f.full, p)
    Uf = row_space(f.full[1:], p)
    v0V = v0_wedge_space(f.basis, p)
    E = identity(k)
    v0U = Subspace.span([wedge(E[0], E[i], f.basis, p) for i in range(1, k)], p, f.basis.dim)
    report.append(CheckItem(
        "2", "U f = v_0 ^ V = v_0 ^ U, of dimension n",
        Uf == v0V and v0V == v0U and Uf.dim == n, Uf.basis,
    ))

    quot = Vf.dim - (Vf & v0V).dim
    report.append(CheckItem("2q", "dim V f / (v_0 ^ V) = 1", quot == 1 and v0V <= Vf, quot))

    X = wedge_absorbing_space(f)
    U = Subspace.span(E[1:], p)
    report.append(CheckItem("3", "no nonzero u in U has u ^ V <= V f", (X & U).dim == 0, (X & U).basis))
    report.append(CheckItem(
        "4", "{x in V : x ^ V <= V f} = span{v_0}", X == Subspace.span(E[0], p), X.basis,
    ))

    Q = v0V.annihilator()
    _, pre = rank_and_kernel((f.full @ Q) % p, p)
    report.append(CheckItem("6", "U = {x in V : x f in v_0 ^ V}", pre == U, pre.basis))
    return report

