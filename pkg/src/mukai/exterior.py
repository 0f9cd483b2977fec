"""Exact exterior algebra on 4n anticommuting generators.

This is the cohomology ring of X^n for an abelian surface X: factor ``i``
(0-based) contributes the degree-1 generators with bit indices
``4*i .. 4*i + 3``.  A monomial is a bitmask; its canonical order is by
increasing bit index, so ``p_1^*w ^ p_2^*w ^ ... ^ p_n^*w`` is the all-ones
mask with coefficient +1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

Number = int | Fraction


def _coerce(c) -> Fraction | int:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return int(c)


def reorder_sign(a: int, b: int) -> int:
    """Sign of the permutation sorting the concatenation of masks ``a`` then ``b``.

    Caller guarantees ``a & b == 0``.
    """
    inversions = 0
    while b:
        low = b & -b
        j = low.bit_length() - 1
        inversions += (a >> (j + 1)).bit_count()
        b ^= low
    return -1 if inversions & 1 else 1


class ExteriorElement:
    """Finite linear combination of monomials with exact coefficients.

    Elements are treated as immutable; all operations return new objects.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[int, Number] | None = None):
        if n < 1:
            raise ValueError("need at least one factor")
        self.n = n
        full = (1 << (4 * n)) - 1
        clean: Dict[int, Number] = {}
        for mask, c in (terms or {}).items():
            if mask & ~full:
                raise ValueError(f"mask {mask:#x} exceeds {4 * n} generators")
            if c:
                clean[mask] = _coerce(c)
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "ExteriorElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "ExteriorElement":
        return cls(n, {0: 1})

    @classmethod
    def generator(cls, n: int, factor: int, j: int) -> "ExteriorElement":
        """The pullback ``p_factor^* alpha_j`` (both indices 0-based)."""
        if not (0 <= factor < n and 0 <= j < 4):
            raise IndexError((factor, j))
        return cls(n, {1 << (4 * factor + j): 1})

    @classmethod
    def monomial(cls, n: int, bits: Iterable[int], coeff: Number = 1) -> "ExteriorElement":
        """Product of generators in the order given (sign from reordering)."""
        mask = 0
        sign = 1
        for b in bits:
            bit = 1 << b
            if mask & bit:
                return cls(n)
            sign *= reorder_sign(mask, bit)
            mask |= bit
        return cls(n, {mask: sign * coeff})

    # -- structure --------------------------------------------------------
    @property
    def full_mask(self) -> int:
        return (1 << (4 * self.n)) - 1

    def degree_part(self, k: int) -> "ExteriorElement":
        return ExteriorElement(self.n, {m: c for m, c in self.terms.items() if m.bit_count() == k})

    def is_homogeneous(self) -> bool:
        return len({m.bit_count() for m in self.terms}) <= 1

    def degree(self) -> int:
        degs = {m.bit_count() for m in self.terms}
        if len(degs) != 1:
            raise ValueError("element is zero or not homogeneous")
        return degs.pop()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ExteriorElement):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return f"ExteriorElement(n={self.n}, 0)"
        parts = [f"{c}*{m:#x}" for m, c in sorted(self.terms.items())]
        return f"ExteriorElement(n={self.n}, {' + '.join(parts)})"

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "ExteriorElement"):
        if self.n != other.n:
            raise ValueError(f"factor count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExteriorElement(self.n, out)

    def __neg__(self) -> "ExteriorElement":
        return ExteriorElement(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def scale(self, c: Number) -> "ExteriorElement":
        return ExteriorElement(self.n, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, c: Number) -> "ExteriorElement":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, ExteriorElement):
            return wedge(self, other)
        return self.scale(other)

    def __pow__(self, k: int) -> "ExteriorElement":
        if k < 0:
            raise ValueError("negative power")
        out = ExteriorElement.one(self.n)
        for _ in range(k):
            out = wedge(out, self)
        return out

    def dual(self) -> "ExteriorElement":
        """Multiply the degree-2k part by (-1)^k (defined on even elements)."""
        out = {}
        for m, c in self.terms.items():
            d = m.bit_count()
            if d & 1:
                raise ValueError("dual is only defined on even-degree classes")
            out[m] = -c if (d // 2) & 1 else c
        return ExteriorElement(self.n, out)


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    """Exterior product with Koszul signs."""
    a._check(b)
    out: Dict[int, Number] = {}
    bt = list(b.terms.items())
    for ma, ca in a.terms.items():
        for mb, cb in bt:
            if ma & mb:
                continue
            m = ma | mb
            c = ca * cb if reorder_sign(ma, mb) > 0 else -(ca * cb)
            out[m] = out.get(m, 0) + c
    return ExteriorElement(a.n, out)


def integrate_top(e: ExteriorElement) -> Fraction:
    """Coefficient of the canonical top monomial (0 below top degree)."""
    return Fraction(e.terms.get(e.full_mask, 0))


def integrate_product(a: ExteriorElement, b: ExteriorElement) -> Fraction:
    """``integrate_top(wedge(a, b))`` without forming the product."""
    a._check(b)
    full = a.full_mask
    total: Number = 0
    bt = b.terms
    for ma, ca in a.terms.items():
        cb = bt.get(full ^ ma)
        if cb:
            s = reorder_sign(ma, full ^ ma)
            total += ca * cb if s > 0 else -(ca * cb)
    return Fraction(total)


def split_mask(mask: int, n: int) -> Tuple[int, ...]:
    """Per-factor 4-bit pieces of a monomial mask."""
    return tuple((mask >> (4 * i)) & 0xF for i in range(n))
