"""Integral lattices: kernels, saturation, Hermite forms, rank-2 splitting.

All matrices are tuples of tuples of Python ints.  Row vectors are used for
bases (each row is a basis vector in ambient coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

from .cohomology import EvenClass, SurfaceModel

Matrix = Tuple[Tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact integer linear algebra


def _mat(rows) -> Matrix:
    return tuple(tuple(int(v) for v in r) for r in rows)


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a, b) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    if any(len(r) != n for r in a):
        raise LatticeError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over Q."""
    rows = [[Fraction(v) for v in r] for r in m]
    if not rows:
        return 0
    r, ncols = 0, len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hermite_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form; zero rows dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    a = [list(map(int, r)) for r in rows]
    if not a:
        return ()
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        # gcd-combine column c of rows r.. into row r
        for i in range(r + 1, len(a)):
            if a[i][c]:
                g, s, t = xgcd(a[r][c], a[i][c])
                u, v = a[r][c] // g, a[i][c] // g
                a[r], a[i] = (
                    [s * x + t * y for x, y in zip(a[r], a[i])],
                    [-v * x + u * y for x, y in zip(a[r], a[i])],
                )
        if r >= len(a) or a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return _mat(row for row in a if any(row))


def integer_kernel(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Z-basis (rows) of {x : m x = 0}, in Hermite normal form.

    Computed by unimodular column reduction, so the result is saturated.
    """
    rows = [list(map(int, r)) for r in m]
    k = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    # columns of the augmented matrix [m; I]
    cols = [[r[j] for r in rows] + [1 if i == j else 0 for i in range(k)] for j in range(k)]
    nr = len(rows)
    piv = 0
    for i in range(nr):
        for j in range(piv + 1, k):
            if cols[j][i]:
                g, s, t = xgcd(cols[piv][i], cols[j][i])
                u, v = cols[piv][i] // g, cols[j][i] // g
                cols[piv], cols[j] = (
                    [s * x + t * y for x, y in zip(cols[piv], cols[j])],
                    [-v * x + u * y for x, y in zip(cols[piv], cols[j])],
                )
        if piv < k and cols[piv][i]:
            piv += 1
    kernel = [c[nr:] for c in cols[piv:]]
    return hermite_rows(kernel)


def content(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class IntegralLattice:
    """Lattice with Gram matrix ``gram``.

    When ``basis`` is given, its rows are the basis vectors in the
    coordinates of an ambient lattice with Gram matrix ``ambient_gram``.
    """

    gram: Matrix
    basis: Optional[Matrix] = None
    ambient_gram: Optional[Matrix] = None

    def __post_init__(self):
        g = _mat(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(r) != n for r in g):
            raise LatticeError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")
        if (self.basis is None) != (self.ambient_gram is None):
            raise LatticeError("basis and ambient_gram go together")
        if self.basis is not None:
            b, ag = _mat(self.basis), _mat(self.ambient_gram)
            object.__setattr__(self, "basis", b)
            object.__setattr__(self, "ambient_gram", ag)
            if len(b) != n:
                raise LatticeError("basis size does not match Gram rank")
            if n and rank(b) != n:
                raise LatticeError("basis rows are not linearly independent")
            if matmul(matmul(b, ag), transpose(b)) != g:
                raise LatticeError("gram != basis * ambient_gram * basis^T")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))

    @classmethod
    def from_surface(cls, s: SurfaceModel) -> "IntegralLattice":
        """The Mukai lattice H^ev of ``s`` in coordinates (1, H^2 basis, w)."""
        return cls(s.mukai_gram())


def _ambient(amb) -> IntegralLattice:
    if isinstance(amb, SurfaceModel):
        return IntegralLattice.from_surface(amb)
    if isinstance(amb, IntegralLattice):
        return amb
    return IntegralLattice(_mat(amb))


def _vec(x) -> Tuple[int, ...]:
    if isinstance(x, EvenClass):
        return x.coords()
    return tuple(int(v) for v in x)


def orthogonal_complement(v, ambient) -> IntegralLattice:
    """Saturated sublattice {x : <v, x> = 0} of ``ambient``.

    ``v`` is an :class:`EvenClass` or a coordinate vector in the ambient
    basis; ``ambient`` is a :class:`SurfaceModel` (Mukai lattice), an
    :class:`IntegralLattice` or a Gram matrix.  If the ambient lattice has
    its own ambient embedding, the result is expressed in that outer
    coordinate system.
    """
    L = _ambient(ambient)
    vv = _vec(v)
    if len(vv) != L.rank:
        raise LatticeError(f"vector has length {len(vv)}, lattice has rank {L.rank}")
    if not any(vv):
        raise LatticeError("orthogonal complement of 0 is the whole lattice")
    row = [sum(vv[i] * L.gram[i][j] for i in range(L.rank)) for j in range(L.rank)]
    if not any(row):
        raise LatticeError("v lies in the radical; complement is everything")
    basis = integer_kernel([row], L.rank)
    gram = matmul(matmul(basis, L.gram), transpose(basis))
    if L.basis is not None:
        return IntegralLattice(gram, matmul(basis, L.basis), L.ambient_gram)
    return IntegralLattice(gram, basis, L.gram)


def is_primitive(x, ambient=None) -> bool:
    """True iff the coordinates of ``x`` have gcd 1."""
    vv = _vec(x)
    if ambient is not None:
        L = _ambient(ambient)
        if len(vv) != L.rank:
            raise LatticeError("vector length does not match ambient rank")
    if not any(vv):
        raise LatticeError("the zero vector is not primitive")
    return content(vv) == 1


def is_saturated(basis: Sequence[Sequence[int]]) -> bool:
    """Whether the row span is primitive in Z^n (gcd of maximal minors is 1)."""
    from itertools import combinations

    b = _mat(basis)
    k = len(b)
    if k == 0:
        return True
    n = len(b[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det([[row[c] for c in cols] for row in b]))
        if g == 1:
            return True
    return g == 1


def discriminant(L) -> int:
    L = _ambient(L)
    return det(L.gram)


# ---------------------------------------------------------------------------
# rank-2 decomposability
#
# L = <m> + <k> orthogonally iff the binary form is GL2(Z)-equivalent to
# diag(m, k) for some factorisation m*k = det.  Equivalence is decided with
# a complete invariant: Gauss-reduced form (definite), the union of the two
# reduction cycles (indefinite, det not minus a square) or the normalised
# hyperbolic forms on both isotropic lines (det = -s^2).  Each invariant
# carries the basis change reaching it, which yields the witness.

Form = Tuple[int, int, int]  # Gram [[a, b], [b, c]]
Basis2 = Tuple[Tuple[int, int], Tuple[int, int]]  # columns are new basis vectors


def _apply(g: Form, P) -> Form:
    (p, q), (r, s) = P
    a, b, c = g
    return (
        a * p * p + 2 * b * p * r + c * r * r,
        a * p * q + b * (p * s + q * r) + c * r * s,
        a * q * q + 2 * b * q * s + c * s * s,
    )


def _mul2(P, Q):
    return (
        (P[0][0] * Q[0][0] + P[0][1] * Q[1][0], P[0][0] * Q[0][1] + P[0][1] * Q[1][1]),
        (P[1][0] * Q[0][0] + P[1][1] * Q[1][0], P[1][0] * Q[0][1] + P[1][1] * Q[1][1]),
    )


def _inv2(P):
    (p, q), (r, s) = P
    d = p * s - q * r
    if d not in (1, -1):
        raise LatticeError("basis change is not unimodular")
    return ((s * d, -q * d), (-r * d, p * d))


ID2 = ((1, 0), (0, 1))


def _definite_canonical(g: Form) -> List[Tuple[Form, Basis2]]:
    a, b, c = g
    flip = a < 0
    f = (-a, -b, -c) if flip else g
    P = ID2
    while True:
        a, b, c = f
        if abs(2 * b) > a:
            # nearest integer to b/a; ties go down, reduction still terminates
            t = (2 * b + a) // (2 * a)
            T = ((1, -t), (0, 1))
        elif a > c:
            T = ((0, 1), (1, 0))
        else:
            break
        f = _apply(f, T)
        P = _mul2(P, T)
    if f[1] < 0:
        T = ((1, 0), (0, -1))
        f, P = _apply(f, T), _mul2(P, T)
    if flip:
        f = (-f[0], -f[1], -f[2])
    return [(f, P)]


def _indefinite_canonical(g: Form) -> List[Tuple[Form, Basis2]]:
    # quadratic-form convention A x^2 + B x y + C y^2 with B = 2b
    A, B, C = g[0], 2 * g[1], g[2]
    disc = B * B - 4 * A * C
    s = isqrt(disc)

    def normalize(A, B, C, P):
        a = abs(A)
        lo = (-a + 1) if a > s else (s - 2 * a + 1)
        Bn = lo + (B - lo) % (2 * a)
        t = (Bn - B) // (2 * A)
        Cn = (Bn * Bn - disc) // (4 * A)
        return A, Bn, Cn, _mul2(P, ((1, t), (0, 1)))

    def reduced(A, B):
        a = abs(A)
        return B <= s and B >= s - 2 * a + 1 and B + s >= 2 * a

    def rho(A, B, C, P):
        return normalize(C, -B, A, _mul2(P, ((0, -1), (1, 0))))

    out = []
    for start in (ID2, ((1, 0), (0, -1))):
        f = _apply(g, start)
        st = normalize(f[0], 2 * f[1], f[2], start)
        while not reduced(st[0], st[1]):
            st = rho(*st)
        first = st[:3]
        while True:
            out.append(((st[0], st[1] // 2, st[2]), st[3]))
            st = rho(*st)
            if st[:3] == first:
                break
    return out


def _isotropic_canonical(g: Form, s: int) -> List[Tuple[Form, Basis2]]:
    a, b, c = g
    if a == 0:
        lines = [(1, 0)]
        if c == 0:
            lines.append((0, 1))
        else:
            # a y-line root: b*2*x*y + c*y^2 = 0 -> x/y = -c/(2b)
            lines.append((-c, 2 * b))
    elif c == 0:
        lines = [(0, 1), (-2 * b, a)]
    else:
        lines = [(-b + s, a), (-b - s, a)]
    out = []
    for x, y in lines:
        h = gcd(x, y)
        x, y = x // h, y // h
        _, u, w = xgcd(x, y)  # u*x + w*y = 1
        P = ((x, -w), (y, u))  # det = x*u + w*y = 1
        f = _apply(g, P)
        if f[0] != 0:
            raise LatticeError("internal: isotropic vector has nonzero square")
        if f[1] < 0:
            T = ((1, 0), (0, -1))
            f, P = _apply(f, T), _mul2(P, T)
        t = f[1]
        j = -(f[2] // (2 * t))
        T = ((1, j), (0, 1))
        f, P = _apply(f, T), _mul2(P, T)
        out.append((f, P))
    return out


def _canonical_forms(g: Form) -> List[Tuple[Form, Basis2]]:
    d = g[0] * g[2] - g[1] * g[1]
    if d == 0:
        raise LatticeError("degenerate binary lattice")
    if d > 0:
        return _definite_canonical(g)
    s = isqrt(-d)
    if s * s == -d:
        return _isotropic_canonical(g, s)
    return _indefinite_canonical(g)


def binary_isometry(g: Form, h: Form) -> Optional[Basis2]:
    """A unimodular P with P^T G P = H, or None if the forms are inequivalent."""
    if g[0] * g[2] - g[1] ** 2 != h[0] * h[2] - h[1] ** 2:
        return None
    cg = {}
    for f, P in _canonical_forms(g):
        cg.setdefault(f, P)
    for f, Q in _canonical_forms(h):
        if f in cg:
            return _mul2(cg[f], _inv2(Q))
    return None


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass(frozen=True)
class SplittingResult:
    decomposable: bool
    witness: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None  # orthogonal basis (rows)
    diagonal: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.decomposable


def is_decomposable_rank2(L) -> SplittingResult:
    """Decide whether a nondegenerate rank-2 lattice is <m> + <k> orthogonally."""
    L = _ambient(L)
    if L.rank != 2:
        raise LatticeError("rank-2 lattice required")
    g = (L.gram[0][0], L.gram[0][1], L.gram[1][1])
    d = g[0] * g[2] - g[1] ** 2
    if d == 0:
        raise LatticeError("degenerate lattice")
    if g[1] == 0:
        return SplittingResult(True, ((1, 0), (0, 1)), (g[0], g[2]))
    candidates = []
    for m in _divisors(d):
        for mm in (m, -m):
            k = d // mm
            if abs(mm) <= abs(k):
                candidates.append((mm, k))
    # definite lattices only split with both signs equal to the form's sign
    for m, k in sorted(candidates, key=lambda t: (abs(t[0]), -t[0])):
        P = binary_isometry(g, (m, 0, k))
        if P is not None:
            x = (P[0][0], P[1][0])
            y = (P[0][1], P[1][1])
            return SplittingResult(True, (x, y), (m, k))
    return SplittingResult(False)


def brute_force_split(L, bound: int) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Search an orthogonal basis with coordinates in [-bound, bound]."""
    L = _ambient(L)
    g = L.gram
    rng = range(-bound, bound + 1)
    for x0 in rng:
        for x1 in rng:
            if gcd(x0, x1) != 1:
                continue
            # y orthogonal to x: (g x) . y = 0, so y is +- the primitive normal
            u, v = g[0][0] * x0 + g[0][1] * x1, g[1][0] * x0 + g[1][1] * x1
            h = gcd(u, v)
            if h == 0:
                continue
            y = (-v // h, u // h)
            if abs(x0 * y[1] - x1 * y[0]) == 1 and max(map(abs, y)) <= bound:
                return ((x0, x1), y)
    return None
