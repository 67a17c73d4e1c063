"""Dense exact linear algebra over GF(p) on numpy int64 arrays.

Row-vector convention throughout: a matrix acts on the right, so the
kernel of ``M`` is ``{v : v @ M == 0}`` and subspaces are row spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

DEFAULT_GL_GUARD = 2**30


class GuardExceeded(RuntimeError):
    """An enumeration would exceed its configured size limit."""


def as_matrix(rows, p: int) -> np.ndarray:
    M = np.array(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else M.reshape(0, 0)
    return M % p


def identity(k: int) -> np.ndarray:
    return np.eye(k, dtype=np.int64)


def matrix_product(M1: np.ndarray, M2: np.ndarray, p: int) -> np.ndarray:
    if M1.shape[-1] != M2.shape[-2]:
        raise ValueError(f"shape mismatch: {M1.shape} @ {M2.shape}")
    return (M1 @ M2) % p


def matrix_power(M: np.ndarray, e: int, p: int) -> np.ndarray:
    result = identity(M.shape[0])
    base = M % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def right_nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : M @ x == 0}``."""
    rows, cols = M.shape
    R, pivots = rref(M, p) if M.size else (np.zeros((0, cols), dtype=np.int64), [])
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for r, pc in enumerate(pivots):
            basis[t, pc] = (-R[r, fc]) % p
    return basis


def matrix_inverse(M: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of a square matrix, or ``None`` if it is singular."""
    k = M.shape[0]
    if M.shape != (k, k):
        raise ValueError("matrix_inverse needs a square matrix")
    R, pivots = rref(np.hstack([M % p, identity(k)]), p)
    if pivots[:k] != list(range(k)):
        return None
    return R[:, k:].copy()


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` in GF(p)^ambient_dim; basis kept in RREF."""

    p: int
    ambient_dim: int
    basis: np.ndarray = dc_field(repr=False)

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int | None = None) -> "Subspace":
        V = np.array(vectors, dtype=np.int64)
        if V.ndim == 1:
            V = V.reshape(1, -1) if V.size else V.reshape(0, ambient_dim or 0)
        if ambient_dim is None:
            ambient_dim = V.shape[1]
        if V.size == 0:
            return cls(p, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64))
        V = V.reshape(-1, ambient_dim) % p
        R, piv = rref(V, p)
        basis = R[: len(piv)].copy()
        basis.flags.writeable = False
        return cls(p, ambient_dim, basis)

    @classmethod
    def zero(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls.span(np.zeros((0, ambient_dim)), p, ambient_dim)

    @classmethod
    def full(cls, p: int, ambient_dim: int) -> "Subspace":
        return cls.span(identity(ambient_dim), p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim or other.p != self.p:
            raise ValueError("subspaces live in different ambient spaces")

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        stacked = np.vstack([self.basis, other.basis])
        coeffs = right_nullspace(stacked.T, self.p)
        vecs = (coeffs[:, : self.dim] @ self.basis) % self.p
        return Subspace.span(vecs, self.p, self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.basis.shape == other.basis.shape and bool(np.all(self.basis == other.basis))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def annihilator(self) -> np.ndarray:
        """Columns ``Q`` with ``v in self`` iff ``v @ Q == 0``."""
        if self.dim == 0:
            return identity(self.ambient_dim)
        return right_nullspace(self.basis, self.p).T.copy()

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"


def rank_and_kernel(M: np.ndarray, p: int) -> tuple[int, Subspace]:
    """Rank of ``M`` and its left kernel ``{v : v @ M == 0}``."""
    rows, cols = M.shape
    if M.size == 0:
        return 0, Subspace.full(p, rows) if rows else Subspace.zero(p, 0)
    r = rank(M, p)
    ker = Subspace.span(right_nullspace(M.T % p, p), p, rows)
    return r, ker


def row_space(M: np.ndarray, p: int) -> Subspace:
    return Subspace.span(M, p, M.shape[1])


# -- enumeration by integer encoding ------------------------------------------
#
# A k x l matrix over GF(p) is encoded as the base-p integer whose digits are
# its entries in row-major order, entry (0, 0) most significant.


def encode(M: np.ndarray, p: int) -> int:
    code = 0
    for a in np.asarray(M).reshape(-1):
        code = code * p + int(a)
    return code


def decode_batch(codes: np.ndarray, shape: tuple[int, int], p: int) -> np.ndarray:
    """Decode an array of integer codes into a ``(N, *shape)`` stack."""
    codes = np.asarray(codes, dtype=np.int64)
    size = shape[0] * shape[1]
    out = np.empty((codes.shape[0], size), dtype=np.int64)
    rest = codes.copy()
    for pos in range(size - 1, -1, -1):
        out[:, pos] = rest % p
        rest //= p
    return out.reshape((codes.shape[0],) + shape)


def batch_is_invertible(mats: np.ndarray, p: int) -> np.ndarray:
    """Invertibility mask for a ``(N, k, k)`` stack, by Gaussian elimination mod p."""
    A = mats.astype(np.int64) % p
    N, k, _ = A.shape
    inv_table = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    ok = np.ones(N, dtype=bool)
    idx = np.arange(N)
    for c in range(k):
        col = A[:, c:, c]
        has = col != 0
        ok &= has.any(axis=1)
        piv = c + np.argmax(has, axis=1)
        pivot_rows = A[idx, piv].copy()
        A[idx, piv] = A[:, c]
        A[:, c] = pivot_rows
        scale = inv_table[A[:, c, c]]
        A[:, c] = (A[:, c] * scale[:, None]) % p
        factors = A[:, c + 1 :, c]
        A[:, c + 1 :] = (A[:, c + 1 :] - factors[:, :, None] * A[:, c][:, None, :]) % p
    return ok


def gl_order(k: int, p: int) -> int:
    out = 1
    for i in range(k):
        out *= p**k - p**i
    return out


def enumerate_gl_batches(
    k: int,
    p: int,
    start: int = 0,
    stop: int | None = None,
    batch: int = 1 << 16,
    guard: int | None = DEFAULT_GL_GUARD,
):
    """Yield ``(codes, mats)`` stacks of invertible k x k matrices whose
    encodings lie in ``[start, stop)``, ascending."""
    total = p ** (k * k)
    if guard is not None and total > guard:
        raise GuardExceeded(f"GL({k},{p}) enumeration needs {total} candidates > guard {guard}")
    stop = total if stop is None else min(stop, total)
    for lo in range(start, stop, batch):
        codes = np.arange(lo, min(lo + batch, stop), dtype=np.int64)
        mats = decode_batch(codes, (k, k), p)
        mask = batch_is_invertible(mats, p)
        if mask.any():
            yield codes[mask], mats[mask]


def enumerate_gl(k: int, p: int, start: int = 0, stop: int | None = None, guard: int | None = DEFAULT_GL_GUARD):
    """Every invertible k x k matrix over GF(p) once, by ascending encoding."""
    for _, mats in enumerate_gl_batches(k, p, start, stop, guard=guard):
        yield from mats
