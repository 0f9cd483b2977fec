"""Even cohomology of an abelian or K3 surface with the Mukai pairing.

A class is written ``x = r + c1 + a*w`` with ``r`` in H^0, ``c1`` in H^2 (as
coordinates in the basis of a :class:`SurfaceModel`) and ``w`` the point
class.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]

ELLIPTIC_LABELS = ("f1", "f2", "d13", "d14", "d23", "d24")

# Realisation of the elliptic-product basis inside Lambda^2 H^1: label ->
# (i, j, sign) meaning sign * alpha_i ^ alpha_j (0-based generators).  The
# sign on d13 makes every hyperbolic pair pair to +1.
ELLIPTIC_REALIZATION = {
    "f1": (0, 1, 1),
    "f2": (2, 3, 1),
    "d13": (0, 2, -1),
    "d14": (0, 3, 1),
    "d23": (1, 2, 1),
    "d24": (1, 3, 1),
}


class DimensionError(ValueError):
    pass


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class SurfaceModel:
    """Lattice H^2 of the surface plus the data needed for H^ev.

    ``epsilon`` is 0 for abelian surfaces and 1 for K3 surfaces; it is the
    H^4 part of sqrt(td_X).
    """

    kind: str
    h2_gram: Matrix
    basis_labels: Tuple[str, ...]

    def __post_init__(self):
        if self.kind not in ("abelian", "k3"):
            raise ValueError(f"unknown surface kind {self.kind!r}")
        gram = _as_matrix(self.h2_gram)
        object.__setattr__(self, "h2_gram", gram)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        k = len(gram)
        if k == 0:
            raise ValueError("H^2 rank must be positive")
        if any(len(row) != k for row in gram):
            raise DimensionError("Gram matrix is not square")
        for i in range(k):
            if gram[i][i] % 2:
                raise ValueError("Gram matrix must have even diagonal")
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if len(self.basis_labels) != k:
            raise DimensionError("need one label per basis vector")
        if len(set(self.basis_labels)) != k:
            raise ValueError("basis labels must be distinct")

    @property
    def h2_rank(self) -> int:
        return len(self.h2_gram)

    @property
    def epsilon(self) -> int:
        return 0 if self.kind == "abelian" else 1

    @property
    def is_elliptic_product(self) -> bool:
        return self.kind == "abelian" and self.basis_labels == ELLIPTIC_LABELS and self.h2_gram == elliptic_product_model().h2_gram

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        """Intersection number of two H^2 classes."""
        k = self.h2_rank
        if len(u) != k or len(v) != k:
            raise DimensionError(f"H^2 vectors must have length {k}")
        g = self.h2_gram
        return sum(u[i] * g[i][j] * v[j] for i in range(k) if u[i] for j in range(k) if v[j])

    def label_index(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}; have {list(self.basis_labels)}") from None

    def vector(self, **coeffs: int) -> Tuple[int, ...]:
        """H^2 vector from label coefficients, e.g. ``model.vector(f1=1, f2=-3)``."""
        out = [0] * self.h2_rank
        for name, c in coeffs.items():
            out[self.label_index(name)] += int(c)
        return tuple(out)

    def mukai_gram(self) -> Matrix:
        """Gram matrix of H^ev in the ordered basis (1, H^2 basis, w)."""
        k = self.h2_rank
        size = k + 2
        rows = [[0] * size for _ in range(size)]
        rows[0][size - 1] = rows[size - 1][0] = -1
        for i in range(k):
            for j in range(k):
                rows[i + 1][j + 1] = self.h2_gram[i][j]
        return _as_matrix(rows)


def elliptic_product_model() -> SurfaceModel:
    """Full H^2 of an abelian surface, U+U+U on (f1,f2), (d13,d24), (d14,d23)."""
    g = [[0] * 6 for _ in range(6)]
    for i, j in ((0, 1), (2, 5), (3, 4)):
        g[i][j] = g[j][i] = 1
    return SurfaceModel("abelian", _as_matrix(g), ELLIPTIC_LABELS)


def polarized_model(n: int, kind: str = "abelian", label: str = "H") -> SurfaceModel:
    """NS-only model Z*H with (H^2) = 2n."""
    return SurfaceModel(kind, ((2 * n,),), (label,))


@dataclass(frozen=True)
class EvenClass:
    r: int
    c1: Tuple[int, ...] = field(default=())
    a: int = 0

    def __post_init__(self):
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "c1", tuple(int(v) for v in self.c1))
        object.__setattr__(self, "a", int(self.a))

    def coords(self) -> Tuple[int, ...]:
        """Coordinates in the basis (1, H^2 basis, w)."""
        return (self.r, *self.c1, self.a)

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "EvenClass":
        coords = list(coords)
        if len(coords) < 2:
            raise DimensionError("need at least the H^0 and H^4 coordinates")
        return cls(coords[0], tuple(coords[1:-1]), coords[-1])

    def __add__(self, other: "EvenClass") -> "EvenClass":
        if len(self.c1) != len(other.c1):
            raise DimensionError("H^2 length mismatch")
        return EvenClass(self.r + other.r, tuple(u + v for u, v in zip(self.c1, other.c1)), self.a + other.a)

    def __neg__(self) -> "EvenClass":
        return EvenClass(-self.r, tuple(-v for v in self.c1), -self.a)

    def __sub__(self, other: "EvenClass") -> "EvenClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "EvenClass":
        return EvenClass(k * self.r, tuple(k * v for v in self.c1), k * self.a)

    def is_zero(self) -> bool:
        return self.r == 0 and self.a == 0 and not any(self.c1)


def _check(x: EvenClass, s: SurfaceModel):
    if len(x.c1) != s.h2_rank:
        raise DimensionError(f"class has {len(x.c1)} H^2 coordinates, surface has rank {s.h2_rank}")


def zero_class(s: SurfaceModel) -> EvenClass:
    return EvenClass(0, (0,) * s.h2_rank, 0)


def unit_class(s: SurfaceModel) -> EvenClass:
    return EvenClass(1, (0,) * s.h2_rank, 0)


def point_class(s: SurfaceModel) -> EvenClass:
    return EvenClass(0, (0,) * s.h2_rank, 1)


def mukai_pair(x: EvenClass, y: EvenClass, s: SurfaceModel) -> int:
    """<x, y> = (x1.y1) - x0*y2 - x2*y0."""
    _check(x, s)
    _check(y, s)
    return s.dot(x.c1, y.c1) - x.r * y.a - x.a * y.r


def mukai_square(x: EvenClass, s: SurfaceModel) -> int:
    return mukai_pair(x, x, s)


def dual(x: EvenClass) -> EvenClass:
    return EvenClass(x.r, tuple(-v for v in x.c1), x.a)


def twist(x: EvenClass, ell: Sequence[int], s: SurfaceModel) -> EvenClass:
    """x * ch(L) for c1(L) = ell, truncated at degree 4."""
    _check(x, s)
    ell = tuple(int(v) for v in ell)
    if len(ell) != s.h2_rank:
        raise DimensionError("twisting class has wrong length")
    ll = s.dot(ell, ell)
    # even lattice, so r*ll/2 is an integer
    return EvenClass(
        x.r,
        tuple(c + x.r * e for c, e in zip(x.c1, ell)),
        x.a + s.dot(x.c1, ell) + x.r * (ll // 2),
    )


def euler_chi(x: EvenClass, y: EvenClass, s: SurfaceModel) -> int:
    """chi(E, F) = -<v(E), v(F)>."""
    return -mukai_pair(x, y, s)


def from_chern(r: int, c1: Sequence[int], ch2: int, s: SurfaceModel) -> EvenClass:
    """Mukai vector ch(E) * (1 + epsilon*w)."""
    c1 = tuple(int(v) for v in c1)
    if len(c1) != s.h2_rank:
        raise DimensionError("c1 has wrong length")
    return EvenClass(r, c1, int(ch2) + s.epsilon * int(r))


def u4_change_of_basis(s: SurfaceModel) -> Matrix:
    """Signed permutation P (columns = new basis in old coordinates) with
    P^T G P = U+U+U+U for the elliptic-product model's H^ev Gram matrix G.

    New basis: (f1, f2), (d13, d24), (d14, d23), (1, -w).
    """
    if not s.is_elliptic_product:
        raise ValueError("only defined for the elliptic-product model")
    # old coordinate order: 1, f1, f2, d13, d14, d23, d24, w
    cols = [(1, 1), (2, 1), (3, 1), (6, 1), (4, 1), (5, 1), (0, 1), (7, -1)]
    P = [[0] * 8 for _ in range(8)]
    for new, (old, sign) in enumerate(cols):
        P[old][new] = sign
    return _as_matrix(P)
