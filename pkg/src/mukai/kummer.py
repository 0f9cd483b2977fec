"""Second cohomology of generalized Kummer varieties and the theta maps into it.

H^2(K_{n-1}, Z) = H^2(X, Z) + Z e with q(x + k e) = (x^2) - 2n k^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

from .cohomology import (
    DimensionError,
    EvenClass,
    SurfaceModel,
    elliptic_product_model,
    mukai_pair,
    twist,
)


class NotInComplement(ValueError):
    """The class is not orthogonal to the Mukai vector."""


@dataclass(frozen=True)
class KummerClass:
    x: Tuple[int, ...]
    k: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))
        if self.n < 2:
            raise ValueError("Kummer parameter n must be at least 2")


def beauville_q(c: KummerClass, s: SurfaceModel) -> int:
    return s.dot(c.x, c.x) - 2 * c.n * c.k * c.k


def beauville_pair(c: KummerClass, d: KummerClass, s: SurfaceModel) -> int:
    if c.n != d.n:
        raise ValueError("classes live on different Kummer varieties")
    return s.dot(c.x, d.x) - 2 * c.n * c.k * d.k


def theta_rank1(alpha: EvenClass, n: int) -> KummerClass:
    """theta_v for v = 1 - n w: x + k(1 + n w) maps to sum_i p_i^*x + k e."""
    if alpha.a != n * alpha.r:
        raise NotInComplement(f"{alpha} is not orthogonal to 1 - {n}w")
    return KummerClass(alpha.c1, alpha.r, n)


@dataclass(frozen=True)
class EllipticThetaData:
    """Integers with d*r1 - r*d1 = 1, r > r1 > 0 and r >= 2*r1."""

    r: int
    r1: int
    d: int
    d1: int
    n: int

    def __post_init__(self):
        if self.d * self.r1 - self.r * self.d1 != 1:
            raise ValueError("need d*r1 - r*d1 = 1")
        if not (self.r > self.r1 > 0):
            raise ValueError("need r > r1 > 0")
        if self.r < 2 * self.r1:
            raise ValueError("need r >= 2*r1 (use the dual vector otherwise)")
        if self.n < 1:
            raise ValueError("need n >= 1")

    def mukai_vector(self) -> EvenClass:
        """v = r + d f2 - (r - r1) n f1 - (d - d1) n w."""
        r, r1, d, d1, n = self.r, self.r1, self.d, self.d1, self.n
        return EvenClass(r, (-(r - r1) * n, d, 0, 0, 0, 0), -(d - d1) * n)


def _split_elliptic(x: EvenClass, s: SurfaceModel):
    if not s.is_elliptic_product:
        raise ValueError("theta_elliptic needs the elliptic-product surface model")
    if len(x.c1) != 6:
        raise DimensionError("expected 6 H^2 coordinates")
    # x = x1 + x2 f1 + x3 f2 + x4 w + D
    return x.r, x.c1[0], x.c1[1], x.a, x.c1[2:]


def theta_elliptic(x: EvenClass, t: EllipticThetaData, s: SurfaceModel | None = None):
    """Coordinates (y1, y2, y3, y4) and D-part of theta_v(x).

    y4 = <x, v>; when it vanishes theta_v(x) = y1 f2 + y2 f1 + D + y3 e.
    """
    s = s or elliptic_product_model()
    x1, x2, x3, x4, D = _split_elliptic(x, s)
    r, r1, d, d1, n = t.r, t.r1, t.d, t.d1, t.n
    y1 = d * x1 - r * x3
    y2 = -(d - d1) * x2 + (r - r1) * x4 - n * ((d - 2 * d1) * x1 - (r - 2 * r1) * x3)
    y3 = -d1 * x1 + r1 * x3
    y4 = d * x2 - r * x4 + n * ((d - d1) * x1 - (r - r1) * x3)
    return (y1, y2, y3, y4), tuple(D)


def theta_elliptic_matrix(t: EllipticThetaData):
    """Matrix of (x1, x2, x3, x4) -> (y1, y2, y3, y4)."""
    r, r1, d, d1, n = t.r, t.r1, t.d, t.d1, t.n
    return (
        (d, 0, -r, 0),
        (-n * (d - 2 * d1), -(d - d1), n * (r - 2 * r1), r - r1),
        (-d1, 0, r1, 0),
        (n * (d - d1), d, -n * (r - r1), -r),
    )


def theta_elliptic_inverse(y: Sequence[int], D: Sequence[int], t: EllipticThetaData) -> EvenClass:
    """Solve for x given (y1..y4, D) by exact elimination."""
    m = [[Fraction(v) for v in row] + [Fraction(yi)] for row, yi in zip(theta_elliptic_matrix(t), y)]
    for c in range(4):
        p = next(i for i in range(c, 4) if m[i][c])
        m[c], m[p] = m[p], m[c]
        for i in range(4):
            if i != c and m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    sol = [m[i][4] / m[i][i] for i in range(4)]
    if any(v.denominator != 1 for v in sol):
        raise ValueError("y is not in the image of an integral class")
    x1, x2, x3, x4 = (int(v) for v in sol)
    return EvenClass(x1, (x2, x3, *D), x4)


def theta_elliptic_q(x: EvenClass, t: EllipticThetaData, s: SurfaceModel | None = None) -> int:
    """2 y1 y2 + (D^2) - 2n y3^2 for x in v-perp."""
    s = s or elliptic_product_model()
    (y1, y2, y3, y4), D = theta_elliptic(x, t, s)
    if y4 != 0:
        raise NotInComplement(f"not in v-perp: y4 = {y4}")
    dd = s.dot((0, 0, *D), (0, 0, *D))
    return 2 * y1 * y2 + dd - 2 * t.n * y3 * y3


def theta_elliptic_class(x: EvenClass, t: EllipticThetaData, s: SurfaceModel | None = None) -> KummerClass:
    """theta_v(x) as a class in H^2(X) + Z e, for x in v-perp."""
    s = s or elliptic_product_model()
    (y1, y2, y3, y4), D = theta_elliptic(x, t, s)
    if y4 != 0:
        raise NotInComplement(f"not in v-perp: y4 = {y4}")
    return KummerClass((y2, y1, *D), y3, t.n)


def choose_r1_d1(r: int, d: int) -> Tuple[int, int]:
    """The unique (r1, d1) with 0 < r1 < r and d*r1 - r*d1 = 1."""
    if r < 2 or gcd(r, d) != 1:
        raise ValueError("need r >= 2 and gcd(r, d) = 1")
    r1 = pow(d, -1, r)
    d1 = (d * r1 - 1) // r
    return r1, d1


def normalize_elliptic_vector(v: EvenClass, r1: int, d1: int, s: SurfaceModel | None = None):
    """Twist v = r + d f2 + s f1 + a w into r + d f2 - (r-r1) n f1 - (d-d1) n w.

    Returns ``(v', s1, a1)`` where s = n r1 + s1 r, a = n d1 + a1 d and
    v' = v ch(O(-(n + s1) f1)).
    """
    s = s or elliptic_product_model()
    if not s.is_elliptic_product:
        raise ValueError("needs the elliptic-product surface model")
    r = v.r
    sf1, d = v.c1[0], v.c1[1]
    a = v.a
    if any(v.c1[2:]):
        raise ValueError("v must have no H^1 x H^1 component")
    if d * r1 - r * d1 != 1:
        raise ValueError(f"need d*r1 - r*d1 = 1, got {d * r1 - r * d1}")
    if not (r > r1 > 0):
        raise ValueError("need r > r1 > 0")
    if gcd(r, d) != 1:
        raise ValueError("need gcd(r, d) = 1")
    sq = mukai_pair(v, v, s)
    if sq <= 0:
        raise ValueError(f"<v^2> = {sq} must be positive")
    n = sq // 2
    if (sf1 - n * r1) % r or (a - n * d1) % d:
        raise ArithmeticError("internal: congruences for s1, a1 have no solution")
    s1 = (sf1 - n * r1) // r
    a1 = (a - n * d1) // d
    ell = [0] * 6
    ell[0] = -(n + s1)
    vp = twist(v, ell, s)
    target = EvenClass(r, (-(r - r1) * n, d, 0, 0, 0, 0), -(d - d1) * n)
    if vp != target:
        raise ArithmeticError(f"internal: twisted vector {vp} differs from {target}")
    return vp, s1, a1
