import pytest
from hypothesis import given
from hypothesis import strategies as st

from mukai.cohomology import EvenClass, elliptic_product_model, polarized_model
from mukai.correspondence import (
    CASE_I_EVEN,
    CASE_I_ODD,
    CASE_II,
    HypothesisError,
    PolarizedVector,
    TildeClass,
    classify,
    elementary_transform_square,
    kummer_k3_vector,
    nonrigid_locus,
    regime_of,
)
from mukai.selftest import correspondence_scan


@pytest.mark.parametrize(
    "rdna, tag, xi2, b",
    [((2, 1, 4, 1), CASE_I_ODD, -4, -1), ((2, 1, 6, 2), CASE_I_EVEN, 0, 0), ((3, 2, 2, 2), CASE_II, 0, 0)],
)
def test_worked_examples(rdna, tag, xi2, b):
    w = kummer_k3_vector(PolarizedVector(*rdna))
    assert (w.case_tag, w.xi_square, w.b, w.square) == (tag, xi2, b, 0)
    assert all(w.checks.values())


def test_case_two_twists_odd_d():
    # r = 3, d = 1 odd: twisted to d = 4 before building xi
    p = PolarizedVector(3, 1, 2, 0)
    assert p.square == 4
    w = kummer_k3_vector(p)
    assert w.case_tag == CASE_II and w.xi.dN2 == 8 and w.square == 0


def test_hypothesis_errors():
    with pytest.raises(HypothesisError):
        PolarizedVector(2, 2, 1, 0)
    with pytest.raises(HypothesisError):
        kummer_k3_vector(PolarizedVector(2, 1, 4, 2))  # <v^2> = 8
    with pytest.raises(HypothesisError):
        kummer_k3_vector(PolarizedVector(2, 1, 1, -1))  # n odd in Case I


def test_elementary_transform_examples():
    assert elementary_transform_square(2, (0,) * 4 + (1,) * 12) == 4
    assert elementary_transform_square(3, (1,) * 16) == 4
    assert elementary_transform_square(5, (0,) * 16) == 100
    with pytest.raises(ValueError):
        elementary_transform_square(2, (3,) * 16)


@given(st.integers(2, 200))
def test_case_profiles_give_four(r):
    k = ((r - 1) // 2,) * 16 if r % 2 else ((r - 2) // 2,) * 4 + (r // 2,) * 12
    assert elementary_transform_square(r, k) == 4


def test_nonrigid_locus_rank_two():
    w = kummer_k3_vector(PolarizedVector(2, 1, 6, 2))
    assert [nonrigid_locus(w, i) for i in range(1, 17)] == [True] * 4 + [False] * 12


def test_nonrigid_locus_large_rank_is_empty():
    w = kummer_k3_vector(PolarizedVector(4, 1, 2, 0))
    assert w.r == 4 and not any(nonrigid_locus(w, i) for i in range(1, 17))


def test_descended_square_parity():
    t = TildeClass(2, (0,) * 4 + (2,) * 12, 6)
    assert t.self_intersection() == 0 and t.descended_square() == 0
    assert t.degree_on_curve(1) == 0 and t.degree_on_curve(5) == -1


def test_full_scan():
    count, failures = correspondence_scan(10, 40, 40)
    assert count > 0 and failures == []


def test_classify_example():
    c = classify(EvenClass(2, (1,), -2), polarized_model(1))
    assert (c.square, c.dim_moduli, c.dim_fiber, c.regime) == (10, 12, 8, ">=6")
    assert c.perp_gram == ((-2, -1), (-1, 2))
    assert c.indecomposable is True
    assert "not birational" in c.statement and "Hilb^5" in c.statement


def test_classify_other_regimes():
    c = classify(EvenClass(1, (0,), -1), polarized_model(1))
    assert c.regime == "2" and "X x X^" in c.statement
    c = classify(EvenClass(2, (1,), 1), polarized_model(4))
    assert c.regime == "4" and c.kummer_vector is not None and c.kummer_vector.square == 0
    c = classify(EvenClass(1, (0,), 0), polarized_model(1))
    assert c.regime == "0"
    c = classify(EvenClass(1, (0,), 3), polarized_model(1))
    assert c.regime == "negative"
    with pytest.raises(HypothesisError):
        classify(EvenClass(0, (1,), 0), polarized_model(1))
    with pytest.raises(HypothesisError):
        classify(EvenClass(2, (2,), 1), polarized_model(1))


@given(st.integers(1, 6), st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.integers(-6, 6))
def test_regime_depends_only_on_square(r, c1, a):
    from math import gcd

    s = elliptic_product_model()
    if gcd(r, *c1) != 1:
        return
    c = classify(EvenClass(r, tuple(c1), a), s)
    assert c.regime == regime_of(c.square)
    assert c.dim_moduli == c.square + 2
    if c.perp_gram is not None:
        assert len(c.perp_gram) == 7
