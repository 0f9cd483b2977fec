"""Brute-force intersection numbers on generalized Kummer varieties.

H*(X^n, Q) is modelled as the exterior algebra of :mod:`mukai.exterior`.
Integrals over the Kummer variety K_{n-1} are reduced to integrals over
N = sigma^{-1}(0) in X^n, and N is replaced by its cycle class
sigma^*(w) = prod_k (sum_i p_i^* alpha_k).  The classes of the diagonals
are obtained from their defining property, not from a closed formula, so
nothing here depends on the closed forms it is compared against.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Sequence, Tuple

from .cohomology import ELLIPTIC_REALIZATION, elliptic_product_model
from .exterior import ExteriorElement, integrate_product, integrate_top, reorder_sign, wedge

DEFAULT_N_MAX = int(os.environ.get("MUKAI_ORACLE_NMAX", "5"))

PAIRS = tuple(combinations(range(4), 2))  # basis alpha_i ^ alpha_j of Lambda^2 H^1


@dataclass(frozen=True)
class H2Symbolic:
    """Class in H^2(X, Q) = Lambda^2 H^1 with coordinates on ``PAIRS``."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 6:
            raise ValueError("need 6 coordinates")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def from_model(cls, vec: Sequence[int]) -> "H2Symbolic":
        """Convert elliptic-product coordinates (f1, f2, d13, d14, d23, d24)."""
        labels = elliptic_product_model().basis_labels
        if len(vec) != len(labels):
            raise ValueError("expected an elliptic-product H^2 vector")
        out = [Fraction(0)] * 6
        for lab, c in zip(labels, vec):
            i, j, sign = ELLIPTIC_REALIZATION[lab]
            out[PAIRS.index((i, j))] += sign * c
        return cls(tuple(out))

    def pullback(self, factor: int, n: int) -> ExteriorElement:
        terms = {}
        for (i, j), c in zip(PAIRS, self.coords):
            if c:
                terms[1 << (4 * factor + i) | 1 << (4 * factor + j)] = c
        return ExteriorElement(n, terms)

    def diagonal_sum(self, n: int) -> ExteriorElement:
        """sum_i p_i^*(self) on X^n, i.e. the image of self in H^2 of K_{n-1}."""
        out = ExteriorElement.zero(n)
        for f in range(n):
            out = out + self.pullback(f, n)
        return out

    def dot(self, other: "H2Symbolic") -> Fraction:
        """Intersection number, computed by integrating on X."""
        return integrate_top(wedge(self.pullback(0, 1), other.pullback(0, 1)))


def point_pullback(factor: int, n: int) -> ExteriorElement:
    return ExteriorElement(n, {0xF << (4 * factor): 1})


@lru_cache(maxsize=None)
def sigma_omega(n: int) -> ExteriorElement:
    """Class of N = {x_1 + ... + x_n = 0}: pullback of w under the sum map."""
    if n < 1:
        raise ValueError("n must be positive")
    out = ExteriorElement.one(n)
    for k in range(4):
        s = ExteriorElement(n, {1 << (4 * i + k): 1 for i in range(n)})
        out = wedge(out, s)
    return out


@lru_cache(maxsize=None)
def _diagonal_coefficients() -> Dict[int, Fraction]:
    """c_A with [Diagonal] = sum_A c_A p_1^*e_A p_2^*e_{A^c} on X x X.

    Each c_A is pinned by the single test pair (eta, eta') = (e_{A^c}, e_A),
    the only one that meets the A-term.
    """
    coeffs = {}
    for A in range(16):
        Ac = 0xF ^ A
        term = ExteriorElement(2, {A | (Ac << 4): 1})
        test = wedge(term, wedge(ExteriorElement(2, {Ac: 1}), ExteriorElement(2, {A << 4: 1})))
        lhs = integrate_top(test)
        rhs = reorder_sign(Ac, A)  # integral over X of e_{A^c} e_A
        coeffs[A] = Fraction(rhs) / lhs
    return coeffs


def diagonal_class(i: int, j: int, n: int) -> ExteriorElement:
    """Class of {x_i = x_j} in X^n (0-based factor indices)."""
    if i == j:
        raise ValueError("diagonal needs two distinct factors")
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError((i, j, n))
    if i > j:
        i, j = j, i
    terms = {}
    for A, c in _diagonal_coefficients().items():
        # relative order of the two pieces is the same as on X x X
        terms[A << (4 * i) | (0xF ^ A) << (4 * j)] = c
    return ExteriorElement(n, terms)


def diagonal_sum(n: int) -> ExteriorElement:
    out = ExteriorElement.zero(n)
    for i, j in combinations(range(n), 2):
        out = out + diagonal_class(i, j, n)
    return out


def _product(factors):
    n = factors[0].n
    out = ExteriorElement.one(n)
    for f in factors:
        out = wedge(out, f)
    return out


def _integrate_factors(factors) -> Fraction:
    """Integral of the wedge of degree-homogeneous factors, split in two halves."""
    total = sum(f.degree() for f in factors)
    acc, left = 0, []
    rest = list(factors)
    while rest and acc + rest[0].degree() <= total // 2:
        f = rest.pop(0)
        acc += f.degree()
        left.append(f)
    if not left:
        left.append(rest.pop(0))
    return integrate_product(_product(left), _product(rest))


def kummer_integral(n: int, a: int, b: int, l: H2Symbolic, x: H2Symbolic, e_power: int = 0, n_max: int | None = None) -> Fraction:
    """Integral over K_{n-1} of theta(l)^a theta(x)^b e^e_power."""
    n_max = DEFAULT_N_MAX if n_max is None else n_max
    if n < 3:
        raise ValueError("generalized Kummer integrals need n >= 3")
    if n > n_max:
        raise ValueError(f"n={n} exceeds oracle limit n_max={n_max}")
    if min(a, b, e_power) < 0 or a + b + e_power != 2 * n - 2:
        raise ValueError(f"degree mismatch: {a}+{b}+{e_power} != {2 * n - 2}")
    if e_power > 2:
        raise ValueError("only e^0, e^1, e^2 are supported")
    if e_power == 1:
        # theta(..) e pulls back to beta^*(..) * sum E_ij; beta_* of an
        # exceptional divisor onto a codimension-2 centre is zero.
        return Fraction(0)
    factors = [l.diagonal_sum(n)] * a + [x.diagonal_sum(n)] * b
    if e_power == 2:
        # beta_*(E_ij|E_ij) = -Delta^{ij}
        factors.append(-diagonal_sum(n))
    factors.append(sigma_omega(n))
    if any(not f for f in factors):
        return Fraction(0)
    return _integrate_factors(factors) / factorial(n)


def fujiki_constant(n: int) -> Fraction:
    """(2n-2)! n^2 / (n! 2^(n-1)), the leading coefficient of the closed forms."""
    return Fraction(factorial(2 * n - 2) * n * n, factorial(n) * 2 ** (n - 1))


def closed_form_integral(n: int, a: int, b: int, e_power: int, ll, lx, xx) -> Fraction:
    """Closed forms for the Kummer integrals in terms of (l^2), (l,x), (x^2).

    Powers of (l^2) are the ones forced by homogeneity of degree 2n-2.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    ll, lx, xx = Fraction(ll), Fraction(lx), Fraction(xx)
    c = fujiki_constant(n)
    m = 2 * n - 2
    pattern = (a, b, e_power)
    if pattern == (m, 0, 0):
        return c * ll ** (n - 1)
    if pattern == (0, m, 0):
        return c * xx ** (n - 1)
    if pattern == (m - 1, 1, 0):
        return c * ll ** (n - 2) * lx
    if pattern == (m - 2, 2, 0):
        return c / (2 * n - 3) * (ll ** (n - 2) * xx + (2 * n - 4) * ll ** (n - 3) * lx ** 2)
    if pattern == (m - 2, 0, 2):
        return c * ll ** (n - 2) * Fraction(-2 * n, 2 * n - 3)
    if pattern == (m - 2, 1, 1) or pattern == (m - 1, 0, 1):
        return Fraction(0)
    raise ValueError(f"no closed form for pattern l^{a} x^{b} e^{e_power} at n={n}")


@dataclass(frozen=True)
class FujikiReport:
    n: int
    lhs: Fraction
    rhs: Fraction
    q_lambda: int
    q_x: int
    recovered_ratio: Fraction | None

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def fujiki_check(n: int, l: Sequence[int], x: Sequence[int], k: int = 0, n_max: int | None = None) -> FujikiReport:
    """Check v(lam)^2 q(y) = q(lam)[(2m-1) v(lam) int lam^{2m-2} y^2 - (2m-2)(int lam^{2m-1} y)^2]

    for lam = theta(l), y = theta(x) + k e on K_{n-1} (m = n-1), with q from
    q(theta(x) + k e) = (x^2) - 2n k^2 and integrals from the oracle.
    ``l`` and ``x`` are elliptic-product H^2 vectors.
    """
    model = elliptic_product_model()
    L, Xs = H2Symbolic.from_model(l), H2Symbolic.from_model(x)
    m = n - 1

    def I(a, b, e):
        return kummer_integral(n, a, b, L, Xs, e, n_max=n_max)

    v = I(2 * m, 0, 0)
    A = I(2 * m - 2, 2, 0) + 2 * k * I(2 * m - 2, 1, 1) + k * k * I(2 * m - 2, 0, 2)
    B = I(2 * m - 1, 1, 0) + k * I(2 * m - 1, 0, 1)
    q_lam = model.dot(l, l)
    q_x = model.dot(x, x) - 2 * n * k * k
    bracket = (2 * m - 1) * v * A - (2 * m - 2) * B * B
    ratio = bracket / (v * v) if v else None
    return FujikiReport(n, v * v * q_x, q_lam * bracket, q_lam, q_x, ratio)
