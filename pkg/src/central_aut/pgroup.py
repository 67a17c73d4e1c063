"""The class-2 p-group P defined by the power relations read off f.

Generators x_0..x_n; relations: commutators are central, x_i^q equals
prod_{j<k} [x_j, x_k]^{a_{i,j,k}} with a_{i,.,.} row i of f, and
[x_i, x_j]^p = 1.  Here q = p for odd p and q = 4 for p = 2.

Every element has a unique normal form

    x_0^{g_0} ... x_n^{g_n} * prod_{j<k} [x_j, x_k]^{c_{jk}},

0 <= g_i < q, 0 <= c_jk < p.  Commutators follow [u, v] = u^-1 v^-1 u v,
so u v = v u [u, v].
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import NamedTuple

import numpy as np

from .construction import FMatrix
from .exterior import ExtBasis
from .linalg import rank

DEFAULT_GROUP_GUARD = 2**20


class GroupElement(NamedTuple):
    gen: tuple[int, ...]
    comm: tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    p: int
    q: int
    n_plus_1: int
    power_table: tuple[tuple[int, ...], ...]

    @cached_property
    def basis(self) -> ExtBasis:
        return ExtBasis(self.n_plus_1)

    @cached_property
    def _pairs(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((pos, j, k) for pos, (j, k) in enumerate(self.basis.pair_order))

    @property
    def n_comm(self) -> int:
        return comb(self.n_plus_1, 2)

    @property
    def order(self) -> int:
        return self.q**self.n_plus_1 * self.p**self.n_comm

    @property
    def commutator_power_relation_implied(self) -> bool:
        """[x_i, x_j]^p = 1 follows from the other relations only for odd p."""
        return self.p != 2

    @property
    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.n_plus_1, (0,) * self.n_comm)

    def generator(self, i: int) -> GroupElement:
        gen = [0] * self.n_plus_1
        gen[i] = 1
        return GroupElement(tuple(gen), (0,) * self.n_comm)

    def commutator_generator(self, j: int, k: int) -> GroupElement:
        comm = [0] * self.n_comm
        comm[self.basis._index[(j, k)]] = 1
        return GroupElement((0,) * self.n_plus_1, tuple(comm))

    def element(self, gen, comm) -> GroupElement:
        return GroupElement(
            tuple(int(a) % self.q for a in gen), tuple(int(a) % self.p for a in comm)
        )

    def elements(self):
        """Every element, each once, in normal-form order."""
        comms = list(itertools.product(range(self.p), repeat=self.n_comm))
        for gen in itertools.product(range(self.q), repeat=self.n_plus_1):
            for comm in comms:
                yield GroupElement(gen, comm)

    def random_element(self, rng: random.Random) -> GroupElement:
        return GroupElement(
            tuple(rng.randrange(self.q) for _ in range(self.n_plus_1)),
            tuple(rng.randrange(self.p) for _ in range(self.n_comm)),
        )

    # -- export -----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.p} {self.q} {self.n_plus_1}"]
        lines += [f"{i}: " + " ".join(map(str, row)) for i, row in enumerate(self.power_table)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n_plus_1": self.n_plus_1,
            "pairs": [list(pair) for pair in self.basis.pair_order],
            "power_table": [list(row) for row in self.power_table],
            "commutator_power_relation_implied": self.commutator_power_relation_implied,
        }

    def relations(self) -> list[str]:
        """Relations as plain strings, e.g. ``x0^3 = [x0,x1]*[x1,x2]``."""
        out = []
        for i, row in enumerate(self.power_table):
            factors = []
            for (j, k), a in zip(self.basis.pair_order, row):
                if a:
                    factors.append(f"[x{j},x{k}]" + (f"^{a}" if a != 1 else ""))
            out.append(f"x{i}^{self.q} = " + ("*".join(factors) if factors else "1"))
        for j, k in self.basis.pair_order:
            out.append(f"[x{j},x{k}]^{self.p} = 1")
        for j, k in self.basis.pair_order:
            for i in range(self.n_plus_1):
                out.append(f"[[x{j},x{k}],x{i}] = 1")
        return out


def read_presentation_text(text: str) -> Presentation:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    p, q, k = map(int, lines[0].split())
    rows = []
    for i, ln in enumerate(lines[1:]):
        head, _, body = ln.partition(":")
        if int(head) != i:
            raise ValueError(f"expected row {i}, got {head!r}")
        rows.append(tuple(int(a) for a in body.split()))
    if len(rows) != k:
        raise ValueError(f"expected {k} rows, got {len(rows)}")
    return Presentation(p, q, k, tuple(rows))


def build_presentation(f: FMatrix, p: int | None = None) -> Presentation:
    if p is not None and p != f.p:
        raise ValueError(f"f is over GF({f.p}), not GF({p})")
    p = f.p
    q = 4 if p == 2 else p
    table = tuple(tuple(int(a) for a in row) for row in f.full)
    return Presentation(p, q, f.n + 1, table)


def multiply(e1: GroupElement, e2: GroupElement, pres: Presentation) -> GroupElement:
    p, q = pres.p, pres.q
    g, h = e1.gen, e2.gen
    comm = [a + b for a, b in zip(e1.comm, e2.comm)]
    # collect: x_j^{h_j} moves left past x_k^{g_k}, k > j
    for pos, j, k in pres._pairs:
        if g[k] and h[j]:
            comm[pos] -= g[k] * h[j]
    gen = []
    for i in range(pres.n_plus_1):
        s = g[i] + h[i]
        if s >= q:
            s -= q
            for pos, a in enumerate(pres.power_table[i]):
                if a:
                    comm[pos] += a
        gen.append(s)
    return GroupElement(tuple(gen), tuple(c % p for c in comm))


def inverse(e: GroupElement, pres: Presentation) -> GroupElement:
    neg = GroupElement(tuple((-a) % pres.q for a in e.gen), (0,) * pres.n_comm)
    t = multiply(e, neg, pres)
    # t is central; e^-1 = neg * t^-1
    return GroupElement(neg.gen, tuple((-c) % pres.p for c in t.comm))


def power(e: GroupElement, k: int, pres: Presentation) -> GroupElement:
    if k < 0:
        e, k = inverse(e, pres), -k
    result = pres.identity
    while k:
        if k & 1:
            result = multiply(result, e, pres)
        e = multiply(e, e, pres)
        k >>= 1
    return result


def commutator(a: GroupElement, b: GroupElement, pres: Presentation) -> GroupElement:
    ia, ib = inverse(a, pres), inverse(b, pres)
    return multiply(multiply(ia, ib, pres), multiply(a, b, pres), pres)


def word(pres: Presentation, *letters: tuple[int, int]) -> GroupElement:
    """Evaluate x_{i1}^{e1} x_{i2}^{e2} ... given as (i, e) pairs."""
    out = pres.identity
    for i, e in letters:
        out = multiply(out, power(pres.generator(i), e, pres), pres)
    return out


def power_map_matrix(pres: Presentation) -> np.ndarray:
    """Row i holds the commutator exponents of x_i^q, computed in P."""
    rows = []
    for i in range(pres.n_plus_1):
        e = power(pres.generator(i), pres.q, pres)
        if any(e.gen):
            raise AssertionError(f"x{i}^{pres.q} is not in the commutator subgroup")
        rows.append(e.comm)
    return np.array(rows, dtype=np.int64)


def is_central(z: GroupElement, pres: Presentation) -> bool:
    return all(
        multiply(z, x, pres) == multiply(x, z, pres)
        for x in (pres.generator(i) for i in range(pres.n_plus_1))
    )


def subgroup_closure(gens, pres: Presentation) -> set[GroupElement]:
    """Subgroup generated by ``gens`` (finite group: closure under products)."""
    gens = list(dict.fromkeys(gens))
    seen = {pres.identity}
    frontier = [pres.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = multiply(a, g, pres)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def greedy_basis(elements, pres: Presentation) -> list[GroupElement]:
    """A generating set for the subgroup ``elements``, picked in normal-form order."""
    target = set(elements)
    chosen: list[GroupElement] = []
    span = {pres.identity}
    for e in sorted(target):
        if e not in span:
            chosen.append(e)
            span = subgroup_closure(chosen, pres)
            if len(span) == len(target):
                break
    return chosen


def _guard(pres: Presentation, guard: int):
    if pres.order > guard:
        raise OverflowError(f"|P| = {pres.order} exceeds the enumeration guard {guard}")


@dataclass
class CenterInfo:
    order: int
    elements: set
    generators: list

    def to_dict(self) -> dict:
        return {"order": self.order, "generators": [list(g) for g in self.generators]}


def compute_center(pres: Presentation, guard: int = DEFAULT_GROUP_GUARD) -> CenterInfo:
    _guard(pres, guard)
    center = {z for z in pres.elements() if is_central(z, pres)}
    return CenterInfo(len(center), center, greedy_basis(center, pres))


@dataclass
class StructureReport:
    p: int
    q: int
    n_plus_1: int
    order_P: int
    order_derived: int
    order_center: int
    order_frattini: int
    order_agemo: int
    order_abelianization: int
    expected: dict
    class_two: bool
    frattini_equals_center: bool
    derived_in_frattini: bool

    @property
    def matches(self) -> dict:
        return {key: getattr(self, key) == val for key, val in self.expected.items()}

    @property
    def all_match_paper(self) -> bool:
        return all(self.matches.values()) and self.class_two and self.frattini_equals_center

    def to_dict(self) -> dict:
        quantities = {}
        for key, val in self.expected.items():
            got = getattr(self, key)
            quantities[key] = {"value": got, "expected": val, "matches_paper": got == val}
        return {
            "p": self.p,
            "q": self.q,
            "n_plus_1": self.n_plus_1,
            "quantities": quantities,
            "class_two": self.class_two,
            "frattini_equals_center": self.frattini_equals_center,
            "derived_in_frattini": self.derived_in_frattini,
            "all_match_paper": self.all_match_paper,
        }


def expected_orders(pres: Presentation) -> dict:
    """Orders predicted from p, n and dim(V f) alone."""
    p, k, C = pres.p, pres.n_plus_1, pres.n_comm
    dim_vf = rank(np.array(pres.power_table, dtype=np.int64), p)
    if p == 2:
        return {
            "order_P": 2 ** (2 * k + C),
            "order_derived": 2**C,
            "order_abelianization": 2 ** (2 * k),
            "order_agemo": 2**dim_vf,
            # Phi(P) = Z(P) of index 2^(n+1)
            "order_center": 2 ** (k + C),
            "order_frattini": 2 ** (k + C),
        }
    return {
        "order_P": p ** (k + C),
        "order_derived": p**C,
        "order_abelianization": p**k,
        "order_agemo": p**dim_vf,
        "order_center": p**C,
        "order_frattini": p**C,
    }


def structure_report(pres: Presentation, guard: int = DEFAULT_GROUP_GUARD) -> StructureReport:
    """Enumerate P once and measure |P|, P', Z(P), Phi(P) and the q-th power subgroup."""
    _guard(pres, guard)
    gens = [pres.generator(i) for i in range(pres.n_plus_1)]
    count = 0
    center = set()
    comm_values = set()
    qth_powers = set()
    pth_powers = set()
    for a in pres.elements():
        count += 1
        central = True
        for x in gens:
            ax, xa = multiply(a, x, pres), multiply(x, a, pres)
            if ax != xa:
                central = False
                # [a, x] = (x a)^-1 (a x)
                comm_values.add(multiply(inverse(xa, pres), ax, pres))
        if central:
            center.add(a)
        qth_powers.add(power(a, pres.q, pres))
        pth_powers.add(power(a, pres.p, pres))

    derived = subgroup_closure(comm_values, pres)
    agemo = subgroup_closure(qth_powers, pres)
    frattini = subgroup_closure(comm_values | pth_powers, pres)
    class_two = bool(derived) and derived <= center and len(derived) > 1
    return StructureReport(
        p=pres.p,
        q=pres.q,
        n_plus_1=pres.n_plus_1,
        order_P=count,
        order_derived=len(derived),
        order_center=len(center),
        order_frattini=len(frattini),
        order_agemo=len(agemo),
        order_abelianization=count // len(derived),
        expected=expected_orders(pres),
        class_two=class_two,
        frattini_equals_center=frattini == center,
        derived_in_frattini=derived <= frattini,
    )


def inverse_image_obstruction(pres: Presentation, a: GroupElement) -> bool:
    """True when no automorphism can send ``a`` to ``a^-1``.

    Valid when every automorphism of P is central, so an image of ``a`` is
    ``a z`` with z central; ``a z = a^-1`` would put a^2, hence a, in Z(P).
    Returns False (no obstruction claimed) for central ``a``.
    """
    if pres.p == 2:
        raise ValueError("argument requires odd p")
    if is_central(a, pres):
        return False
    if is_central(multiply(a, a, pres), pres):
        raise AssertionError(f"a^2 is central although a = {a} is not")
    return True


def element_to_json(e: GroupElement) -> dict:
    return {"gen": list(e.gen), "comm": list(e.comm)}


def dumps_presentation(pres: Presentation) -> str:
    return json.dumps(pres.to_json(), sort_keys=True)
