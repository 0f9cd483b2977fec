import random

from hypothesis import given, settings
from hypothesis import strategies as st

from mukai.exterior import ExteriorElement, integrate_product, integrate_top, reorder_sign, split_mask, wedge


def random_homogeneous(rng, n, deg, terms=4):
    out = {}
    for _ in range(terms):
        bits = rng.sample(range(4 * n), deg)
        m = sum(1 << b for b in bits)
        out[m] = out.get(m, 0) + rng.randint(-3, 3)
    return ExteriorElement(n, out)


def test_repeated_generator_vanishes():
    f = ExteriorElement.monomial(1, [0, 1])
    assert wedge(f, f) == 0
    assert ExteriorElement.monomial(2, [3, 3]) == 0


def test_top_class_of_two_points():
    w1 = ExteriorElement(2, {0xF: 1})
    w2 = ExteriorElement(2, {0xF0: 1})
    assert integrate_top(wedge(w1, w2)) == 1
    assert integrate_top(wedge(w2, w1)) == 1


def test_monomial_sign_follows_permutation():
    assert ExteriorElement.monomial(1, [1, 0]) == ExteriorElement(1, {0b11: -1})
    assert ExteriorElement.monomial(1, [2, 0, 1]) == ExteriorElement(1, {0b111: 1})
    assert reorder_sign(0b10, 0b01) == -1


def test_low_degree_integrates_to_zero():
    assert integrate_top(ExteriorElement(1, {0b11: 5})) == 0


def test_square_of_f1_plus_f2():
    l = ExteriorElement(1, {0b0011: 1, 0b1100: 1})
    assert integrate_top(l * l) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(0, 4), st.integers(0, 4))
def test_graded_commutativity(seed, n, p, q):
    rng = random.Random(seed)
    p, q = min(p, 4 * n), min(q, 4 * n)
    a, b = random_homogeneous(rng, n, p), random_homogeneous(rng, n, q)
    sign = -1 if (p * q) % 2 else 1
    assert wedge(a, b) == wedge(b, a).scale(sign)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c = (random_homogeneous(rng, 2, rng.randint(0, 3)) for _ in range(3))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_integrate_product_matches_wedge(seed):
    rng = random.Random(seed)
    p = rng.randint(0, 8)
    a, b = random_homogeneous(rng, 2, p, 6), random_homogeneous(rng, 2, 8 - p, 6)
    assert integrate_product(a, b) == integrate_top(wedge(a, b))


def test_dual_signs():
    e = ExteriorElement(1, {0: 1, 0b11: 2, 0xF: 3})
    assert e.dual() == ExteriorElement(1, {0: 1, 0b11: -2, 0xF: 3})


def test_split_mask():
    assert split_mask(0x3F, 2) == (0xF, 0x3)
