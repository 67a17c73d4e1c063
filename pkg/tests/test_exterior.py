import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from central_aut.exterior import ExtBasis, induced_exterior_map, pair_index, wedge
from central_aut.linalg import identity
from oracles import det_mod_p

B4 = ExtBasis(4)


def vec(p, k=4):
    return hnp.arrays(np.int64, (k,), elements=st.integers(0, p - 1))


def mat(p, k=4):
    return hnp.arrays(np.int64, (k, k), elements=st.integers(0, p - 1))


def test_basis_order():
    assert B4.pair_order == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert ExtBasis(5).pair_order[:4] == ((0, 1), (0, 2), (0, 3), (0, 4))
    assert B4.labels()[3] == "v1^v2"


@pytest.mark.parametrize("j,k,pos", [(0, 1, 0), (2, 3, 5), (1, 2, 3)])
def test_pair_index(j, k, pos):
    assert pair_index(j, k, B4) == pos


def test_pair_index_rejects_unordered():
    with pytest.raises(ValueError):
        pair_index(2, 1, B4)
    with pytest.raises(ValueError):
        pair_index(1, 1, B4)


def test_wedge_examples():
    E = identity(4)
    assert not wedge(E[2] + E[3], E[2] + E[3], B4, 3).any()
    assert wedge(E[0], E[1], B4, 2).tolist() == [1, 0, 0, 0, 0, 0]
    w = wedge(E[1] + E[2], E[3], B4, 3)
    assert w.tolist() == [0, 0, 0, 0, 1, 1]
    # reversed order picks up the sign
    assert wedge(E[3], E[1], B4, 3).tolist() == [0, 0, 0, 0, 2, 0]
    with pytest.raises(ValueError):
        wedge(E[0][:3], E[1], B4, 2)


@given(st.sampled_from([2, 3, 5]), st.data())
def test_wedge_alternating_and_bilinear(p, data):
    u, u2, v = (data.draw(vec(p)) for _ in range(3))
    a, b = data.draw(st.integers(0, p - 1)), data.draw(st.integers(0, p - 1))
    assert not wedge(u, u, B4, p).any()
    assert np.array_equal(wedge(u, v, B4, p), (-wedge(v, u, B4, p)) % p)
    lhs = wedge(a * u + b * u2, v, B4, p)
    rhs = (a * wedge(u, v, B4, p) + b * wedge(u2, v, B4, p)) % p
    assert np.array_equal(lhs, rhs)


def test_induced_map_examples():
    p = 3
    assert np.array_equal(induced_exterior_map(identity(4), B4, p), identity(6))
    assert not induced_exterior_map(np.zeros((4, 4), dtype=np.int64), B4, p).any()
    gamma = 2
    delta = np.array([[1, 2, 0], [0, 1, 1], [2, 0, 1]])
    g = np.zeros((4, 4), dtype=np.int64)
    g[0, 0] = gamma
    g[1:, 1:] = delta
    gh = induced_exterior_map(g, B4, p)
    assert np.array_equal(gh[:3, :3], (gamma * delta) % p)
    assert not gh[:3, 3:].any() and not gh[3:, :3].any()


@given(st.sampled_from([2, 3]), st.data())
def test_induced_map_defining_property(p, data):
    g = data.draw(mat(p))
    gh = induced_exterior_map(g, B4, p)
    for r, (j, k) in enumerate(B4.pair_order):
        assert np.array_equal(gh[r], wedge(g[j], g[k], B4, p))


@given(st.sampled_from([2, 3, 5]), st.data())
def test_functoriality(p, data):
    g, h = data.draw(mat(p)), data.draw(mat(p))
    lhs = induced_exterior_map((g @ h) % p, B4, p)
    rhs = (induced_exterior_map(g, B4, p) @ induced_exterior_map(h, B4, p)) % p
    assert np.array_equal(lhs, rhs)


def test_batched_matches_single():
    rng = np.random.default_rng(7)
    gs = rng.integers(0, 5, (20, 4, 4))
    batched = induced_exterior_map(gs, B4, 5)
    for g, gh in zip(gs, batched):
        assert np.array_equal(gh, induced_exterior_map(g, B4, 5))


def test_determinant_cube():
    rng = np.random.default_rng(11)
    checked = 0
    for p in (2, 3, 5):
        while checked < 10 * p:
            g = rng.integers(0, p, (4, 4))
            d = det_mod_p(g, p)
            if not d:
                continue
            assert det_mod_p(induced_exterior_map(g, B4, p), p) == pow(d, 3, p)
            checked += 1
