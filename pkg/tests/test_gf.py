import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from central_aut.gf import (
    PolyOverF,
    PrimeField,
    charpoly,
    companion_matrix,
    eval_poly_at_matrix,
    find_primitive_polynomial,
    gf_inverse,
    order_of_x,
    poly_is_irreducible,
    poly_is_primitive,
)
from oracles import charpoly_leibniz, monic_products_up_to, order_by_matrix_powers


def P(coeffs, p):
    return PolyOverF.from_list(coeffs, p)


def test_prime_field_rejects_composites():
    for bad in (0, 1, 4, 9, 15):
        with pytest.raises(ValueError):
            PrimeField(bad)
    assert PrimeField(13).p == 13


@pytest.mark.parametrize("a,p,expected", [(1, 7, 1), (2, 3, 2), (5, 13, 8)])
def test_gf_inverse_examples(a, p, expected):
    scan = [b for b in range(1, p) if a * b % p == 1]
    assert scan == [expected]
    assert gf_inverse(a, PrimeField(p)) == expected


def test_gf_inverse_of_zero():
    with pytest.raises(ZeroDivisionError, match="not invertible"):
        gf_inverse(0, PrimeField(5))


@given(st.sampled_from([2, 3, 5, 7]), st.data())
def test_field_axioms(p, data):
    F = PrimeField(p)
    a, b, c = (data.draw(st.integers(0, p - 1)) for _ in range(3))
    assert F((a * b) * c) == F(a * (b * c))
    assert F(a * (b + c)) == F(a * b + a * c)
    if a:
        assert F(a * gf_inverse(a, F)) == 1


def test_irreducible_examples():
    assert not poly_is_irreducible(P([1, 0, 1], 2))
    assert poly_is_irreducible(P([1, 1, 0, 1], 2))
    assert poly_is_irreducible(P([1, 0, 1], 3))


@pytest.mark.parametrize("p,deg", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducible_against_product_enumeration(p, deg):
    reducible = monic_products_up_to(deg, p)
    for tail in itertools.product(range(p), repeat=deg):
        coeffs = list(tail) + [1]
        assert poly_is_irreducible(P(coeffs, p)) == (tuple(coeffs) not in reducible)


def test_non_monic_rejected():
    with pytest.raises(ValueError):
        poly_is_irreducible(P([1, 1, 2], 3))
    with pytest.raises(ValueError):
        companion_matrix(P([1, 2], 5))


def test_primitive_examples():
    assert poly_is_primitive(P([1, 1, 0, 1], 2))
    assert not poly_is_primitive(P([1, 1, 1, 1, 1], 2))
    assert order_of_x(P([1, 1, 1, 1, 1], 2)) == 5
    assert poly_is_primitive(P([1, 2, 0, 1], 3))
    assert order_of_x(P([1, 2, 0, 1], 3)) == 26


def test_primitive_rejects_reducible():
    with pytest.raises(ValueError, match="not irreducible"):
        poly_is_primitive(P([1, 0, 1], 2))


@pytest.mark.parametrize("p,deg", [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_primitive_matches_direct_order(p, deg):
    for tail in itertools.product(range(p), repeat=deg):
        m = P(list(tail) + [1], p)
        if not poly_is_irreducible(m) or m.coeffs[0] == 0:
            continue
        order = order_by_matrix_powers(list(m.coeffs), p)
        assert poly_is_primitive(m) == (order == p**deg - 1)


def _primitive_by_enumeration(p, n):
    found = []
    for tail in itertools.product(range(p), repeat=n):
        coeffs = list(tail) + [1]
        if coeffs[0] and order_by_matrix_powers(coeffs, p) == p**n - 1:
            found.append(coeffs)
    return found


def test_find_primitive_examples():
    assert find_primitive_polynomial(PrimeField(2), 3).to_list() == [1, 1, 0, 1]
    assert find_primitive_polynomial(PrimeField(2), 4).to_list() == [1, 1, 0, 0, 1]
    cubics = _primitive_by_enumeration(3, 3)
    assert len(cubics) == 4  # phi(26) / 3
    smallest = min(cubics, key=lambda c: c[::-1])
    assert smallest == [1, 2, 0, 1]
    assert find_primitive_polynomial(PrimeField(3), 3).to_list() == smallest


def test_primitive_cubic_count_gf2():
    assert len(_primitive_by_enumeration(2, 3)) == 2


@pytest.mark.parametrize("p,n", [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (5, 3), (7, 3)])
def test_found_polynomial_is_primitive(p, n):
    m = find_primitive_polynomial(PrimeField(p), n)
    assert m.degree == n and m.is_monic
    assert poly_is_irreducible(m) and poly_is_primitive(m)


def test_companion_examples():
    C = companion_matrix(P([1, 1, 0, 1], 2))
    assert C.tolist() == [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    assert companion_matrix(P([-1, 1], 5)).tolist() == [[1]]
    C3 = companion_matrix(P([1, 2, 0, 1], 3))
    assert C3[-1].tolist() == [2, 1, 0]


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 3)])
def test_companion_annihilated_and_charpoly(p, n):
    for tail in itertools.islice(itertools.product(range(p), repeat=n), 40):
        m = P(list(tail) + [1], p)
        C = companion_matrix(m)
        assert not eval_poly_at_matrix(m, C).any()
        assert charpoly_leibniz(C, p) == list(m.coeffs) + [0] * (n + 1 - len(m.coeffs))
        assert charpoly(C, m.field) == m


def test_poly_str_and_eval():
    m = P([1, 2, 0, 1], 3)
    assert str(m) == "x^3 + 2x + 1"
    assert [m(t) for t in range(3)] == [1, 1, 1]  # no roots
    assert str(P([], 2)) == "0"
