"""Regimes of <v^2> and the <v^2> = 4 passage to the Kummer K3 surface.

For v = r + dN + a w on an abelian surface with a (1,n)-polarisation N and
<v^2> = 4, the fibre K_H(v) is a moduli space of sheaves on Km(X) with an
isotropic Mukai vector w = r + xi + b w.  NS(Km(X)) is handled only through
intersection numbers on the blow-up X~ of the 16 two-torsion points:
(pi^*N)^2 = 2n, E_i^2 = -1, mixed products 0, and a class descending along
the double cover q2 has half the self-intersection upstairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Optional, Sequence, Tuple

from .cohomology import EvenClass, SurfaceModel, mukai_pair
from .lattice import IntegralLattice, is_decomposable_rank2, is_primitive, orthogonal_complement


class HypothesisError(ValueError):
    """An input violates a named hypothesis."""


@dataclass(frozen=True)
class PolarizedVector:
    r: int
    d: int
    n: int
    a: int

    def __post_init__(self):
        if self.r <= 0:
            raise HypothesisError("rank r must be positive")
        if self.n <= 0:
            raise HypothesisError("N must be a (1,n)-polarization with n > 0")
        if gcd(self.r, self.d) != 1:
            raise HypothesisError(f"(r,d)=1 fails: gcd({self.r},{self.d}) = {gcd(self.r, self.d)}")

    @property
    def square(self) -> int:
        return 2 * self.d * self.d * self.n - 2 * self.r * self.a

    def twisted(self) -> "PolarizedVector":
        """v ch(N): d -> d + r, a -> a + 2nd + rn."""
        return PolarizedVector(self.r, self.d + self.r, self.n, self.a + 2 * self.n * self.d + self.r * self.n)


@dataclass(frozen=True)
class TildeClass:
    """pi^*(N^dN) + sum (m_i / 2) E_i on X~, with N and m_i stored doubled."""

    dN2: int
    m: Tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if len(self.m) != 16:
            raise ValueError("need 16 exceptional coefficients")

    def self_intersection(self) -> Fraction:
        return Fraction(self.dN2 * self.dN2 * 2 * self.n - sum(v * v for v in self.m), 4)

    def descended_square(self) -> int:
        """(xi^2) for xi on Km(X) with q2^* xi = this class."""
        val = self.self_intersection() / 2
        if val.denominator != 1:
            raise ArithmeticError(f"(xi^2) = {val} is not an integer")
        return int(val)

    def degree_on_curve(self, i: int) -> Fraction:
        """xi . C_i = (q2^*xi . q2^*C_i)/2 = (N1 . 2 E_i)/2 = -m_i/2 (1-based i)."""
        return Fraction(-self.m[i - 1], 2)


CASE_I_EVEN, CASE_I_ODD, CASE_II = "I-even-a", "I-odd-a", "II"


@dataclass(frozen=True)
class KummerK3Vector:
    r: int
    xi: TildeClass
    b: int
    case_tag: str
    a_effective: int  # a after the Case II twist making d even
    checks: Dict[str, bool] = field(default_factory=dict, compare=False)

    @property
    def xi_square(self) -> int:
        return self.xi.descended_square()

    @property
    def square(self) -> int:
        return self.xi_square - 2 * self.r * self.b

    def k_profile(self) -> Tuple[int, ...]:
        """Splitting numbers k_i of q2^*F along E_i."""
        r = self.r
        if self.case_tag == CASE_II:
            return ((r - 1) // 2,) * 16
        return ((r - 2) // 2,) * 4 + (r // 2,) * 12


def expected_xi_square(case_tag: str, r: int, a: int) -> int:
    if case_tag == CASE_I_EVEN:
        return r * (a - 2 * r + 2)
    if case_tag == CASE_I_ODD:
        return r * (a - 2 * r + 1)
    return r * (a - 2 * r + 4)


def kummer_k3_vector(p: PolarizedVector) -> KummerK3Vector:
    if p.square != 4:
        raise HypothesisError(f"<v^2> = d^2 (N^2) - 2ra = {p.square}, not 4")
    r = p.r
    if r % 2 == 0:
        if p.d % 2 == 0:
            raise HypothesisError("Case I: r even forces d odd")
        if p.n % 2:
            raise HypothesisError("Case I: (N^2) = 2n must be divisible by 4")
        # the four points where the linearisation acts trivially are x1..x4
        m = [r - 2] * 4 + [r] * 12
        if p.a % 2 == 0:
            tag, b2 = CASE_I_EVEN, p.a - 2 * r + 2
        else:
            tag = CASE_I_ODD
            m[0] -= 2 * r  # N2 = N1(-r E1)
            b2 = p.a - 2 * r + 1
        xi = TildeClass(2 * p.d, m, p.n)
        a_eff = p.a
    else:
        q = p if p.d % 2 == 0 else p.twisted()
        if q.a % 2:
            raise HypothesisError("Case II: d even and r odd force a even")
        tag = CASE_II
        xi = TildeClass(2 * q.d, [r - 1] * 16, q.n)
        a_eff = q.a
        b2 = a_eff - 2 * r + 4
    if b2 % 2:
        raise ArithmeticError("internal: w coefficient is not an integer")
    w = KummerK3Vector(r, xi, b2 // 2, tag, a_eff)
    checks = {
        "xi_square_matches_closed_form": w.xi_square == expected_xi_square(tag, r, a_eff),
        "xi_square_even": w.xi_square % 2 == 0,
        "w_isotropic": w.square == 0,
        "elementary_transform_square_is_4": elementary_transform_square(r, w.k_profile()) == 4,
    }
    if not all(checks.values()):
        failed = [k for k, ok in checks.items() if not ok]
        raise ArithmeticError(f"internal consistency failure: {failed}")
    return KummerK3Vector(r, xi, b2 // 2, tag, a_eff, checks)


def elementary_transform_square(r: int, k: Sequence[int]) -> int:
    """<v(G)^2> = 4r^2 - sum k_i (r - k_i)."""
    if len(k) != 16:
        raise ValueError("need 16 splitting numbers")
    if any(not (0 <= ki <= r) for ki in k):
        raise ValueError("need 0 <= k_i <= r")
    return 4 * r * r - sum(ki * (r - ki) for ki in k)


def nonrigid_locus(w: KummerK3Vector, i: int) -> bool:
    """Whether N(w, i) is nonempty: r divides deg(F|C_i)."""
    if not 1 <= i <= 16:
        raise IndexError(i)
    if w.r < 2:
        return False  # a line bundle restricts to a single O(a) on C_i
    deg = w.xi.degree_on_curve(i)
    return deg.denominator == 1 and deg.numerator % w.r == 0


# ---------------------------------------------------------------------------


@dataclass
class Classification:
    square: int
    dim_moduli: int
    dim_fiber: Optional[int]
    regime: str
    statement: str
    perp_gram: Optional[Tuple[Tuple[int, ...], ...]] = None
    perp_basis: Optional[Tuple[Tuple[int, ...], ...]] = None
    indecomposable: Optional[bool] = None
    kummer_vector: Optional[KummerK3Vector] = None


def regime_of(square: int) -> str:
    if square < 0:
        return "negative"
    if square in (0, 2, 4):
        return str(square)
    return ">=6"  # Mukai lattices are even


def classify(v: EvenClass, s: SurfaceModel) -> Classification:
    if s.kind != "abelian":
        raise HypothesisError("classification is for abelian surfaces")
    if v.r <= 0:
        raise HypothesisError("hypothesis r > 0 fails")
    if not is_primitive((v.r, *v.c1)):
        raise HypothesisError("hypothesis 'r + xi is primitive' fails")
    sq = mukai_pair(v, v, s)
    reg = regime_of(sq)
    out = Classification(sq, sq + 2, sq - 2 if sq >= 2 else None, reg, "")
    if reg == "negative":
        out.statement = "M_H(v) is empty"
    elif reg == "0":
        out.statement = "M_H(v) is an abelian surface"
    elif reg == "2":
        out.statement = "M_H(v) = X x X^ via the albanese map"
    elif reg == "4":
        out.statement = "K_H(v) is a K3 surface isomorphic to M_{H'}(w) on Km(X)"
        if s.h2_rank == 1 and s.h2_gram[0][0] > 0:
            n = s.h2_gram[0][0] // 2
            try:
                out.kummer_vector = kummer_k3_vector(PolarizedVector(v.r, v.c1[0], n, v.a))
            except HypothesisError as exc:
                out.statement += f" (no explicit w: {exc})"
    else:
        half = sq // 2
        out.statement = f"K_H(v) is irreducible symplectic of dimension {sq - 2}; theta_v is a Hodge isometry"
        perp = orthogonal_complement(v, s)
        out.perp_gram = perp.gram
        out.perp_basis = perp.basis
        if perp.rank == 2:
            out.indecomposable = not is_decomposable_rank2(IntegralLattice(perp.gram)).decomposable
            if out.indecomposable:
                out.statement += f"; NS(K_H(v)) is indecomposable, so M_H(v) is not birational to Y^ x Hilb^{half}_Y"
    return out
