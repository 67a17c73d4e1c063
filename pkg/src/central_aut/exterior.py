"""The exterior square of V = GF(p)^(n+1).

The basis of Lambda^2 V starts with v0^v1, ..., v0^vn and continues with
vi^vj for 1 <= i < j <= n in lexicographic order.  Only pairs j < k are
stored; coordinate (k, j) is read as the negative of (j, k).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class ExtBasis:
    n_plus_1: int

    @cached_property
    def pair_order(self) -> tuple[tuple[int, int], ...]:
        # lexicographic order on pairs already starts with the (0, k) block
        return tuple(combinations(range(self.n_plus_1), 2))

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        return {pair: i for i, pair in enumerate(self.pair_order)}

    @property
    def dim(self) -> int:
        return len(self.pair_order)

    def labels(self) -> list[str]:
        return [f"v{j}^v{k}" for j, k in self.pair_order]

    @cached_property
    def _pair_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        js = np.array([j for j, _ in self.pair_order], dtype=np.int64)
        ks = np.array([k for _, k in self.pair_order], dtype=np.int64)
        return js, ks


def pair_index(j: int, k: int, basis: ExtBasis) -> int:
    if not 0 <= j < k < basis.n_plus_1:
        raise ValueError(f"need 0 <= j < k <= n, got ({j}, {k})")
    return basis._index[(j, k)]


def wedge(u, v, basis: ExtBasis, p: int) -> np.ndarray:
    """Coordinates of ``u ^ v``: entry (j, k) is ``u_j v_k - u_k v_j``."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape[-1] != basis.n_plus_1 or v.shape[-1] != basis.n_plus_1:
        raise ValueError("vector length does not match dim V")
    js, ks = basis._pair_arrays
    return (u[..., js] * v[..., ks] - u[..., ks] * v[..., js]) % p


def induced_exterior_map(g: np.ndarray, basis: ExtBasis, p: int) -> np.ndarray:
    """Matrix of the map induced by ``g`` on Lambda^2 V.

    Row (j, k) is ``(v_j g) ^ (v_k g)``.  Works on a single matrix or on a
    ``(N, n+1, n+1)`` stack; ``g`` need not be invertible.
    """
    g = np.asarray(g, dtype=np.int64)
    js, ks = basis._pair_arrays
    rows_j = g[..., js, :]
    rows_k = g[..., ks, :]
    # out[..., r, s] = wedge(rows_j[r], rows_k[r])[s]
    return (
        rows_j[..., :, js] * rows_k[..., :, ks] - rows_j[..., :, ks] * rows_k[..., :, js]
    ) % p
