from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mukai.cohomology import elliptic_product_model
from mukai.exterior import ExteriorElement, integrate_top, wedge
from mukai.oracle import (
    H2Symbolic,
    closed_form_integral,
    diagonal_class,
    fujiki_check,
    fujiki_constant,
    kummer_integral,
    point_pullback,
    sigma_omega,
)

S = elliptic_product_model()
F1, F2 = S.vector(f1=1), S.vector(f2=1)
L = S.vector(f1=1, f2=1)
VECS = {"f1": F1, "f2": F2, "f1+f2": L, "f1-f2": S.vector(f1=1, f2=-1)}


def sym(v):
    return H2Symbolic.from_model(v)


def test_sigma_omega_small_n():
    assert sigma_omega(1) == ExteriorElement(1, {0xF: 1})
    assert integrate_top(wedge(point_pullback(0, 2), sigma_omega(2))) == 1
    w = wedge(point_pullback(0, 3), point_pullback(1, 3))
    assert integrate_top(wedge(w, sigma_omega(3))) == 1


def test_diagonal_examples():
    D = diagonal_class(0, 1, 2)
    assert integrate_top(wedge(D, D)) == 0
    assert integrate_top(wedge(D, point_pullback(0, 2))) == 1
    l = sym(L)
    assert integrate_top(wedge(D, wedge(l.pullback(0, 2), l.pullback(1, 2)))) == 2


def test_diagonal_defining_property_on_all_basis_pairs():
    # all homogeneous basis monomials of H*(X) with complementary degree
    D = diagonal_class(0, 1, 2)
    for A, B in product(range(16), repeat=2):
        if A.bit_count() + B.bit_count() != 4:
            continue
        eta, eta2 = ExteriorElement(1, {A: 1}), ExteriorElement(1, {B: 1})
        lhs = integrate_top(wedge(D, wedge(ExteriorElement(2, {A: 1}), ExteriorElement(2, {B << 4: 1}))))
        assert lhs == integrate_top(wedge(eta, eta2))


def test_intersection_form_matches_model():
    for (_, u), (_, v) in product(VECS.items(), repeat=2):
        assert sym(u).dot(sym(v)) == S.dot(u, v)
    for i in range(6):
        for j in range(6):
            e_i, e_j = [int(k == i) for k in range(6)], [int(k == j) for k in range(6)]
            assert sym(e_i).dot(sym(e_j)) == S.h2_gram[i][j]


def test_anchor_values_n3():
    l, x = sym(L), sym(F1)
    assert kummer_integral(3, 4, 0, l, x) == 36
    assert kummer_integral(3, 2, 2, l, x) == 6
    assert kummer_integral(3, 3, 1, l, x) == 18
    assert kummer_integral(3, 2, 0, l, x, e_power=2) == -36
    assert kummer_integral(3, 2, 1, l, x, e_power=1) == 0


def test_fujiki_constant():
    assert fujiki_constant(3) == 9
    assert fujiki_constant(4) == 60
    # pure power equals c (l^2)^(n-1)
    assert closed_form_integral(4, 6, 0, 0, 2, 0, 0) == 60 * 8


@pytest.mark.parametrize("n", [3, 4])
def test_oracle_equals_closed_forms(n):
    m = 2 * n - 2
    patterns = [(m, 0, 0), (m - 2, 2, 0), (m - 1, 1, 0), (m - 2, 0, 2), (m - 2, 1, 1)]
    for (_, l), (_, x) in product(VECS.items(), repeat=2):
        for a, b, e in patterns:
            o = kummer_integral(n, a, b, sym(l), sym(x), e)
            c = closed_form_integral(n, a, b, e, S.dot(l, l), S.dot(l, x), S.dot(x, x))
            assert o == c, (n, l, x, a, b, e)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=6, max_size=6), st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_oracle_random_classes_n3(l, x):
    for a, b, e in [(4, 0, 0), (2, 2, 0), (3, 1, 0), (2, 0, 2)]:
        o = kummer_integral(3, a, b, sym(l), sym(x), e)
        assert o == closed_form_integral(3, a, b, e, S.dot(l, l), S.dot(l, x), S.dot(x, x))


@pytest.mark.parametrize("n", [3, 4])
def test_fujiki_relation(n):
    assert fujiki_check(n, L, F1).equal
    assert fujiki_check(n, L, L).equal
    rep = fujiki_check(n, L, S.vector(f1=0), k=1)
    assert rep.equal and rep.recovered_ratio == Fraction(-2 * n, 2)


@settings(max_examples=8, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=6, max_size=6), st.lists(st.integers(-2, 2), min_size=6, max_size=6), st.integers(-2, 2))
def test_fujiki_relation_random_n4(l, x, k):
    if S.dot(l, l) == 0:
        return
    rep = fujiki_check(4, l, x, k=k)
    assert rep.equal
    assert rep.recovered_ratio == Fraction(S.dot(x, x) - 8 * k * k, S.dot(l, l))


def test_input_errors():
    l = sym(L)
    with pytest.raises(ValueError):
        kummer_integral(3, 3, 0, l, l)
    with pytest.raises(ValueError):
        kummer_integral(2, 2, 0, l, l)
    with pytest.raises(ValueError):
        kummer_integral(6, 10, 0, l, l, n_max=5)
    with pytest.raises(ValueError):
        closed_form_integral(3, 1, 3, 0, 2, 0, 0)
    with pytest.raises(ValueError):
        diagonal_class(1, 1, 3)
