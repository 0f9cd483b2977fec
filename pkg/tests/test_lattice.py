import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from conftest import even_classes
from mukai.cohomology import EvenClass, elliptic_product_model, mukai_pair, polarized_model
from mukai.lattice import (
    IntegralLattice,
    LatticeError,
    binary_isometry,
    brute_force_split,
    det,
    discriminant,
    hermite_rows,
    integer_kernel,
    is_decomposable_rank2,
    is_primitive,
    is_saturated,
    orthogonal_complement,
)

NS1 = polarized_model(1)
ABELIAN = elliptic_product_model()


def snf_saturated(basis):
    """Independent check: all invariant factors of the basis matrix are 1."""
    m = Matrix(basis)
    snf = smith_normal_form(m, domain=ZZ)
    return all(abs(snf[i, i]) == 1 for i in range(min(m.shape)))


def test_example_complement():
    L = orthogonal_complement(EvenClass(2, (1,), -2), NS1)
    assert L.basis == ((1, 0, 1), (0, 1, 1))
    assert L.gram == ((-2, -1), (-1, 2))
    assert discriminant(L) == -5


def test_complement_of_point_class():
    # rank-2 lattice Z + Z w with <1, w> = -1
    L = orthogonal_complement((0, 1), ((0, -1), (-1, 0)))
    assert L.basis == ((0, 1),)
    assert L.gram == ((0,),)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_complement_of_rank_one_vector(n):
    v = EvenClass(1, (0,) * 6, -n)
    L = orthogonal_complement(v, ABELIAN)
    assert L.rank == 7
    assert abs(discriminant(L)) == 2 * n
    # 1 + n w lies in the complement, together with all of H^2
    assert all(mukai_pair(EvenClass.from_coords(b), v, ABELIAN) == 0 for b in L.basis)
    B = Matrix(L.basis).T
    targets = [(1, 0, 0, 0, 0, 0, 0, n)] + [tuple(int(i == j) for i in range(8)) for j in range(1, 7)]
    for t in targets:
        sol, params = B.gauss_jordan_solve(Matrix(t))
        assert params.shape[0] == 0
        assert all(x.is_integer for x in sol)


def test_zero_vector_rejected():
    with pytest.raises(LatticeError):
        orthogonal_complement(EvenClass(0, (0,), 0), NS1)
    with pytest.raises(LatticeError):
        is_primitive((0, 0, 0))


def test_primitive():
    assert is_primitive(EvenClass(2, (1,), -2))
    assert not is_primitive(EvenClass(2, (2,), -2))
    assert is_primitive((2, 1))


def test_discriminant_examples():
    assert discriminant(((0, 1), (1, 0))) == -1
    assert discriminant(((2,),)) == 2


@settings(max_examples=80, deadline=None)
@given(even_classes(ints=st.integers(-9, 9)))
def test_complement_is_saturated_and_has_the_right_discriminant(v):
    if v.is_zero():
        return
    L = orthogonal_complement(v, ABELIAN)
    assert L.rank == 7
    assert snf_saturated(L.basis)
    assert is_saturated(L.basis)
    assert all(mukai_pair(EvenClass.from_coords(b), v, ABELIAN) == 0 for b in L.basis)
    sq = mukai_pair(v, v, ABELIAN)
    if sq != 0 and is_primitive(v):
        assert abs(discriminant(L)) == abs(sq)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-7, 7), min_size=5, max_size=5), min_size=1, max_size=3))
def test_integer_kernel_matches_sympy_rank(m):
    K = integer_kernel(m, 5)
    rank = Matrix(m).rank()
    assert len(K) == 5 - rank
    for row in K:
        assert all(sum(a * b for a, b in zip(r, row)) == 0 for r in m)
    if K:
        assert snf_saturated(K)
        assert hermite_rows(K) == K


def test_decomposability_examples():
    assert not is_decomposable_rank2(((-2, -1), (-1, 2)))
    res = is_decomposable_rank2(((2, 0), (0, -2)))
    assert res and res.witness == ((1, 0), (0, 1))
    assert not is_decomposable_rank2(((0, 1), (1, 0)))
    with pytest.raises(LatticeError):
        is_decomposable_rank2(((1, 1), (1, 1)))
    with pytest.raises(LatticeError):
        is_decomposable_rank2(((2,),))


def _check_witness(g, res):
    (x0, x1), (y0, y1) = res.witness
    L = IntegralLattice(g)
    assert abs(x0 * y1 - x1 * y0) == 1
    assert L.pair((x0, x1), (y0, y1)) == 0
    assert (L.pair((x0, x1), (x0, x1)), L.pair((y0, y1), (y0, y1))) == res.diagonal


def _random_grams(seed, count, max_det=50):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a, b, c = rng.randint(-12, 12), rng.randint(-10, 10), rng.randint(-12, 12)
        if 0 < abs(a * c - b * b) <= max_det:
            out.append(((a, b), (b, c)))
    return out


def test_decomposability_agrees_with_brute_force():
    for g in _random_grams(7, 200):
        res = is_decomposable_rank2(g)
        found = brute_force_split(g, 2 * 12)
        if res:
            _check_witness(g, res)
        # nothing the bounded search finds is missed
        if found is not None:
            assert res, g
        definite = g[0][0] * g[1][1] - g[0][1] ** 2 > 0
        if definite:
            assert bool(res) == (found is not None), g


def test_indefinite_splitting_beyond_any_small_box():
    # [[1, 0], [0, -d]] conjugated by a large unimodular matrix
    P = ((13, 8), (21, 13))  # det 1
    D = (1, 0, -6)
    a = D[0] * P[0][0] ** 2 + D[2] * P[1][0] ** 2
    b = D[0] * P[0][0] * P[0][1] + D[2] * P[1][0] * P[1][1]
    c = D[0] * P[0][1] ** 2 + D[2] * P[1][1] ** 2
    g = ((a, b), (b, c))
    res = is_decomposable_rank2(g)
    assert res
    _check_witness(g, res)


@settings(max_examples=100, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-3, 3), st.integers(-3, 3))
def test_binary_isometry_recovers_conjugates(a, b, c, p, q):
    if a * c - b * b == 0 or gcd(p, q) != 1:
        return
    _, s, t = _xgcd(p, q)
    P = ((p, -t), (q, s))  # det = p*s + q*t = 1
    h = _conj((a, b, c), P)
    Q = binary_isometry((a, b, c), h)
    assert Q is not None
    assert _conj((a, b, c), Q) == h


def _xgcd(a, b):
    from mukai.lattice import xgcd

    return xgcd(a, b)


def _conj(g, P):
    a, b, c = g
    (p, q), (r, s) = P
    return (
        a * p * p + 2 * b * p * r + c * r * r,
        a * p * q + b * (p * s + q * r) + c * r * s,
        a * q * q + 2 * b * q * s + c * s * s,
    )


def test_det_bareiss():
    assert det(((2, 1, 0), (1, 2, 1), (0, 1, 2))) == 4
    assert det(((0, 1), (1, 0))) == -1


def test_lattice_validation():
    with pytest.raises(LatticeError):
        IntegralLattice(((1, 2), (3, 4)))
    with pytest.raises(LatticeError):
        IntegralLattice(((2,),), basis=((1, 0),), ambient_gram=((0, 1), (1, 0)))
