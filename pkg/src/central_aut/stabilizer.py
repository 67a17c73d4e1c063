"""Matrices g on V with g f = f g^ (g^ the induced map on Lambda^2 V).

Three searches share one vectorized core:

* ``stabilizer_bruteforce``: every invertible (n+1)x(n+1) matrix;
* ``stabilizer_structured``: only block-diagonal diag(gamma, Delta);
* ``commuting_endomorphisms``: every (n+1)x(n+1) matrix.

Candidates are identified by their row-major base-p encoding and scanned
in ascending order, so a search splits into independent encoding ranges.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .construction import CheckItem, FMatrix, check_f_properties
from .exterior import ExtBasis, induced_exterior_map
from .linalg import (
    GuardExceeded,
    batch_is_invertible,
    decode_batch,
    encode,
    enumerate_gl_batches,
    gl_order,
    identity,
    matrix_inverse,
    matrix_power,
)

DEFAULT_GUARD = 2**24
BATCH = 1 << 17
WORKERS_ENV = "CENTRAL_AUT_WORKERS"


@dataclass
class StabResult:
    mode: str
    space_size: int
    tested: int
    elements: list[np.ndarray]
    wall_ms: float = 0.0
    p: int = 0
    scanned: int = 0
    meta: dict = dc_field(default_factory=dict)

    def codes(self) -> list[int]:
        return [encode(g, self.p) for g in self.elements]

    def is_trivial(self) -> bool:
        """Exactly the identity."""
        return len(self.elements) == 1 and np.array_equal(
            self.elements[0], identity(self.elements[0].shape[0])
        )

    def is_zero_and_identity(self) -> bool:
        if len(self.elements) != 2:
            return False
        k = self.elements[0].shape[0]
        found = {encode(g, self.p) for g in self.elements}
        return found == {encode(np.zeros((k, k), dtype=np.int64), self.p), encode(identity(k), self.p)}

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "mode": self.mode,
            "space_size": self.space_size,
            "tested": self.tested,
            "elements": [g.tolist() for g in self.elements],
        }
        if include_timing:
            d["wall_ms"] = round(self.wall_ms, 3)
        return d


def commutes_with_f(g: np.ndarray, f: FMatrix) -> bool:
    """Whether ``g . f == f . g^`` holds as a matrix identity."""
    g = np.asarray(g, dtype=np.int64) % f.p
    lhs = (g @ f.full) % f.p
    rhs = (f.full @ induced_exterior_map(g, f.basis, f.p)) % f.p
    return bool(np.array_equal(lhs, rhs))


def _commute_mask(gs: np.ndarray, full: np.ndarray, basis, p: int) -> np.ndarray:
    lhs = (gs @ full) % p
    rhs = (full @ induced_exterior_map(gs, basis, p)) % p
    return np.all(lhs == rhs, axis=(1, 2))


def _scan_range(full: np.ndarray, p: int, invertible_only: bool, lo: int, hi: int):
    """Scan codes in [lo, hi); returns (matching codes, #tested)."""
    k = full.shape[0]
    basis = ExtBasis(k)
    hits: list[np.ndarray] = []
    tested = 0
    for start in range(lo, hi, BATCH):
        codes = np.arange(start, min(start + BATCH, hi), dtype=np.int64)
        gs = decode_batch(codes, (k, k), p)
        if invertible_only:
            keep = batch_is_invertible(gs, p)
            codes, gs = codes[keep], gs[keep]
        tested += codes.shape[0]
        if codes.shape[0]:
            hits.append(codes[_commute_mask(gs, full, basis, p)])
    found = np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)
    return found, tested


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def _exhaustive(f: FMatrix, invertible_only: bool, mode: str, force: bool, guard: int,
                workers: int | None, partitions: int | None) -> StabResult:
    p, k = f.p, f.n + 1
    total = p ** (k * k)
    if total > guard and not force:
        raise GuardExceeded(
            f"{mode} search needs {total} candidates (> guard {guard}); "
            "use the structured search or pass force=True"
        )
    t0 = time.perf_counter()
    workers = _workers(workers)
    parts = partitions or workers
    bounds = [total * i // parts for i in range(parts + 1)]
    ranges = [(bounds[i], bounds[i + 1]) for i in range(parts)]
    full = np.array(f.full)
    if workers > 1 and parts > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_scan_range, *zip(*[(full, p, invertible_only, lo, hi) for lo, hi in ranges])))
    else:
        results = [_scan_range(full, p, invertible_only, lo, hi) for lo, hi in ranges]
    codes = np.unique(np.concatenate([r[0] for r in results]))
    tested = sum(r[1] for r in results)
    elements = list(decode_batch(codes, (k, k), p))
    return StabResult(
        mode=mode,
        space_size=gl_order(k, p) if invertible_only else total,
        tested=tested,
        elements=elements,
        wall_ms=(time.perf_counter() - t0) * 1e3,
        p=p,
        scanned=total,
    )


def stabilizer_bruteforce(f: FMatrix, force: bool = False, guard: int = DEFAULT_GUARD,
                          workers: int | None = None, partitions: int | None = None) -> StabResult:
    """G = {g in GL(V) : g f = f g^} by testing every invertible matrix.

    Uses nothing about the shape of f; this is the reference the structured
    search is compared against.
    """
    return _exhaustive(f, True, "brute", force, guard, workers, partitions)


def commuting_endomorphisms(f: FMatrix, force: bool = False, guard: int = DEFAULT_GUARD,
                            workers: int | None = None, partitions: int | None = None) -> StabResult:
    """All matrices g, invertible or not, with g f = f g^."""
    return _exhaustive(f, False, "endo", force, guard, workers, partitions)


def _block_diag(gammas: np.ndarray, deltas: np.ndarray) -> np.ndarray:
    N, n, _ = deltas.shape
    gs = np.zeros((N, n + 1, n + 1), dtype=np.int64)
    gs[:, 0, 0] = gammas
    gs[:, 1:, 1:] = deltas
    return gs


def stabilizer_structured(f: FMatrix, prune: bool = True) -> StabResult:
    """Search only block-diagonal diag(gamma, Delta), gamma != 0, Delta in GL(n, p).

    The block shape is forced when <v_0> and U are G-invariant, which holds
    for every f built by ``build_f_matrix``.  With ``prune`` the candidates
    must first satisfy Delta A = gamma A Delta and b Delta = b, both
    consequences of g f = f g^ for block-diagonal g.
    """
    p, n = f.p, f.n
    t0 = time.perf_counter()
    A, b = f.A, f.b
    hits = []
    tested = 0
    for _, deltas in enumerate_gl_batches(n, p, batch=BATCH, guard=None):
        for gamma in range(1, p):
            cand = deltas
            if prune:
                conj = np.all((cand @ A) % p == (gamma * (A @ cand)) % p, axis=(1, 2))
                fix = np.all((b @ cand) % p == b, axis=1)
                cand = cand[conj & fix]
            tested += cand.shape[0]
            if cand.shape[0]:
                gs = _block_diag(np.full(cand.shape[0], gamma), cand)
                hits.append(gs[_commute_mask(gs, f.full, f.basis, p)])
    gs = np.concatenate(hits) if hits else np.zeros((0, n + 1, n + 1), dtype=np.int64)
    order = sorted(range(gs.shape[0]), key=lambda i: encode(gs[i], p))
    facts = {item.item: item.passed for item in check_f_properties(f)}
    return StabResult(
        mode="structured" if prune else "structured-unpruned",
        space_size=(p - 1) * gl_order(n, p),
        tested=tested,
        elements=[gs[i] for i in order],
        wall_ms=(time.perf_counter() - t0) * 1e3,
        p=p,
        scanned=(p - 1) * p ** (n * n),
        # <v_0> and U are then G-invariant, so G consists of block-diagonal matrices
        meta={"block_shape_justified": facts["4"] and facts["6"]},
    )


def is_closed_group(elements: list[np.ndarray], p: int) -> bool:
    """Closed under product and inverse (a finite nonempty set of matrices)."""
    if not elements:
        return False
    codes = {encode(g, p) for g in elements}
    for g in elements:
        inv = matrix_inverse(g, p)
        if inv is None or encode(inv, p) not in codes:
            return False
        for h in elements:
            if encode((g @ h) % p, p) not in codes:
                return False
    return True


def verify_proof_steps(f: FMatrix) -> list[CheckItem]:
    """Enumerative checks of the individual steps that force G = {1}."""
    p, n = f.p, f.n
    A, b = f.A, f.b
    q = p**n
    report = []

    bad_gamma = []
    centralizer: set[int] = set()
    for _, deltas in enumerate_gl_batches(n, p, guard=None):
        for gamma in range(1, p):
            ok = np.all((deltas @ A) % p == (gamma * (A @ deltas)) % p, axis=(1, 2))
            if gamma != 1 and ok.any():
                bad_gamma.extend(deltas[ok][:5].tolist())
            if gamma == 1:
                centralizer.update(encode(d, p) for d in deltas[ok])
    report.append(CheckItem(
        "gamma", "invertible Delta with Delta A Delta^-1 = gamma A forces gamma = 1",
        not bad_gamma, bad_gamma,
    ))

    powers = {encode(matrix_power(A, i, p), p) for i in range(q - 1)}
    report.append(CheckItem(
        "centralizer", f"invertible centralizer of A is {{A^0, ..., A^{q - 2}}} ({q - 1} elements)",
        centralizer == powers and len(powers) == q - 1,
        {"centralizer_size": len(centralizer), "powers": len(powers)},
    ))

    fixing = [i for i in range(q - 1) if np.array_equal((b @ matrix_power(A, i, p)) % p, b)]
    report.append(CheckItem("fixes_b", "the only power A^k with b A^k = b is A^0", fixing == [0], fixing))

    singular_bad = []
    zero_gamma_bad = []
    total = p ** (n * n)
    for lo in range(0, total, BATCH):
        codes = np.arange(lo, min(lo + BATCH, total), dtype=np.int64)
        deltas = decode_batch(codes, (n, n), p)
        singular = ~batch_is_invertible(deltas, p)
        nonzero = deltas.reshape(len(codes), -1).any(axis=1)
        for gamma in range(0, p):
            ok = np.all((deltas @ A) % p == (gamma * (A @ deltas)) % p, axis=(1, 2)) & nonzero
            if gamma == 0:
                zero_gamma_bad.extend(deltas[ok][:5].tolist())
            else:
                singular_bad.extend(deltas[ok & singular][:5].tolist())
    report.append(CheckItem(
        "singular", "singular Delta with Delta A = gamma A Delta, gamma != 0, is 0",
        not singular_bad, singular_bad,
    ))
    report.append(CheckItem(
        "gamma_zero", "gamma = 0 and Delta A = 0 force Delta = 0", not zero_gamma_bad, zero_gamma_bad,
    ))
    return report
