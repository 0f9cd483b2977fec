"""Cohomological Fourier-Mukai transform between X and its dual.

X x X^ is modelled by the exterior algebra on 8 generators: bits 0-3 are
alpha_1..alpha_4 on X, bits 4-7 the dual basis on X^.  The Poincare class
is c1(P) = sum_k alpha_k beta_k, and ch(P) = exp c1(P) = prod_k (1 + alpha_k beta_k)
has integer coefficients.  Todd classes of abelian surfaces are trivial.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, Sequence, Tuple

from .cohomology import (
    ELLIPTIC_REALIZATION,
    DimensionError,
    EvenClass,
    SurfaceModel,
    elliptic_product_model,
    mukai_pair,
)
from .exterior import ExteriorElement, wedge
from .oracle import PAIRS, H2Symbolic

X_SIDE, DUAL_SIDE = 0, 1


def _model(s: SurfaceModel | None) -> SurfaceModel:
    s = s or elliptic_product_model()
    if not s.is_elliptic_product:
        raise ValueError("the Fourier-Mukai transform needs the full rank-6 H^2 model")
    return s


def to_exterior(x: EvenClass, side: int, s: SurfaceModel | None = None) -> ExteriorElement:
    """Pullback of an even class from one factor of X x X^."""
    s = _model(s)
    if len(x.c1) != 6:
        raise DimensionError("expected 6 H^2 coordinates")
    sh = 4 * side
    terms = {0: x.r, 0xF << sh: x.a}
    for lab, c in zip(s.basis_labels, x.c1):
        if c:
            i, j, sign = ELLIPTIC_REALIZATION[lab]
            m = (1 << (sh + i)) | (1 << (sh + j))
            terms[m] = terms.get(m, 0) + sign * c
    return ExteriorElement(2, terms)


def from_exterior(e: ExteriorElement, side: int, s: SurfaceModel | None = None) -> EvenClass:
    """Inverse of :func:`to_exterior`; fails on classes not pulled back from ``side``."""
    s = _model(s)
    sh = 4 * side
    terms = dict(e.terms)
    r = terms.pop(0, 0)
    a = terms.pop(0xF << sh, 0)
    c1 = []
    for lab in s.basis_labels:
        i, j, sign = ELLIPTIC_REALIZATION[lab]
        c1.append(sign * terms.pop((1 << (sh + i)) | (1 << (sh + j)), 0))
    if terms:
        raise ValueError(f"class has components outside H^ev of side {side}: {terms}")
    vals = [r, a, *c1]
    if any(getattr(v, "denominator", 1) != 1 for v in vals):
        raise ValueError("non-integral class")
    return EvenClass(int(r), tuple(int(v) for v in c1), int(a))


@lru_cache(maxsize=None)
def poincare_c1() -> ExteriorElement:
    return ExteriorElement(2, {(1 << k) | (1 << (4 + k)): 1 for k in range(4)})


@lru_cache(maxsize=None)
def poincare_kernel() -> ExteriorElement:
    """ch(P) = exp c1(P), truncated at degree 8 (automatically)."""
    out = ExteriorElement.one(2)
    for k in range(4):
        factor = ExteriorElement(2, {0: 1, (1 << k) | (1 << (4 + k)): 1})
        out = wedge(out, factor)
    return out


def _push(e: ExteriorElement, onto: int) -> ExteriorElement:
    """Integrate over the other factor; the kept factor's bits stay in place."""
    other = 0xF << (4 * (1 - onto))
    keep = 0xF << (4 * onto)
    out = {}
    for m, c in e.terms.items():
        if m & other == other:
            # X bits precede X^ bits; the integrated block is the full even
            # block w, which commutes with anything
            out[m & keep] = out.get(m & keep, 0) + c
    return ExteriorElement(2, out)


def fm_forward(x: EvenClass, s: SurfaceModel | None = None) -> EvenClass:
    """F(x) = p2_*(ch(P) p1^* x), a class on X^."""
    s = _model(s)
    prod = wedge(poincare_kernel(), to_exterior(x, X_SIDE, s))
    return from_exterior(_push(prod, DUAL_SIDE), DUAL_SIDE, s)


def fm_inverse(y: EvenClass, s: SurfaceModel | None = None) -> EvenClass:
    """F^(y) = p1_*(ch(P)^dual p2^* y), a class on X."""
    s = _model(s)
    prod = wedge(poincare_kernel().dual(), to_exterior(y, DUAL_SIDE, s))
    return from_exterior(_push(prod, X_SIDE), X_SIDE, s)


def adjoint_check(x: EvenClass, y: EvenClass, s: SurfaceModel | None = None) -> bool:
    """<F(x), y> on X^ equals <x, F^(y)> on X."""
    s = _model(s)
    return mukai_pair(fm_forward(x, s), y, s) == mukai_pair(x, fm_inverse(y, s), s)


def roundtrip_check(x: EvenClass, s: SurfaceModel | None = None) -> bool:
    s = _model(s)
    return fm_inverse(fm_forward(x, s), s) == x


def fm_matrix(direction: str = "forward", s: SurfaceModel | None = None) -> Tuple[Tuple[int, ...], ...]:
    """Matrix (columns = images of basis vectors) in coordinates (1, H^2, w)."""
    s = _model(s)
    f = fm_forward if direction == "forward" else fm_inverse
    cols = []
    for i in range(8):
        e = [0] * 8
        e[i] = 1
        cols.append(f(EvenClass.from_coords(e), s).coords())
    return tuple(zip(*cols))


def hat_line_bundle(c1: Sequence[int], s: SurfaceModel | None = None) -> Tuple[int, ...]:
    """c1 of det S(L) on X^: the H^2 part of F(v(L)), v(L) = 1 + c1 + (c1^2)/2 w."""
    s = _model(s)
    c1 = tuple(int(v) for v in c1)
    v = EvenClass(1, c1, s.dot(c1, c1) // 2)
    return fm_forward(v, s).c1


def _form_matrix(c1: Sequence[int]) -> List[List[int]]:
    sym = H2Symbolic.from_model(c1)
    m = [[0] * 4 for _ in range(4)]
    for (i, j), c in zip(PAIRS, sym.coords):
        m[i][j] = int(c)
        m[j][i] = -int(c)
    return m


def phi_map(c1: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """phi_L on H^1: contraction against the 2-form c1(L).

    The matrix maps H_1 coordinates of X to those of X^ = dual basis.  Both
    phi_L and phi_{L^} use the same contraction; the identification of X^^
    with X carries the sign of (-1)^*, which acts by -1 on H^1.
    """
    return tuple(tuple(r) for r in _form_matrix(c1))


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def phi_hat_map(c1: Sequence[int], s: SurfaceModel | None = None):
    """phi_{L^} : X^ -> X^^ = X, with the canonical double-dual sign."""
    m = phi_map(hat_line_bundle(c1, s))
    return tuple(tuple(-v for v in row) for row in m)


def phi_composition(c1: Sequence[int], s: SurfaceModel | None = None):
    return _matmul(phi_hat_map(c1, s), phi_map(c1))


def phi_composition_check(c1: Sequence[int], s: SurfaceModel | None = None) -> bool:
    """phi_{L^} o phi_L = -chi(L) Id and phi_L o phi_{L^} = -chi(L) Id."""
    s = _model(s)
    chi = s.dot(c1, c1) // 2
    target = tuple(tuple(-chi if i == j else 0 for j in range(4)) for i in range(4))
    other = _matmul(phi_map(c1), phi_hat_map(c1, s))
    return phi_composition(c1, s) == target and other == target


def covering_matrices(r: int, c1: Sequence[int], a: int, s: SurfaceModel | None = None):
    """(M, T): the albanese block matrix and tau, as 8x8 integer matrices on H_1(X x X^)."""
    s = _model(s)
    phi = phi_map(c1)
    phih = phi_hat_map(c1, s)
    I = lambda k: [[k if i == j else 0 for j in range(4)] for i in range(4)]

    def block(tl, tr, bl, br):
        rows = [list(tl[i]) + list(tr[i]) for i in range(4)]
        rows += [list(bl[i]) + list(br[i]) for i in range(4)]
        return tuple(tuple(r) for r in rows)

    neg = lambda m: [[-v for v in row] for row in m]
    # (x, y) -> (-a x + phi_{L^}(y), phi_L(x) + r y)
    M = block(I(-a), phih, phi, I(r))
    # tau(x, y) = (r x - phi_{L^}(y), -phi_L(x) - a y)
    T = block(I(r), neg(phih), neg(phi), I(-a))
    return M, T


def covering_identity(r: int, c1: Sequence[int], a: int, s: SurfaceModel | None = None) -> bool:
    """albanese(Phi(tau(x, y))) = (n x, n y) with n = <v^2>/2."""
    s = _model(s)
    n = s.dot(c1, c1) // 2 - r * a
    if n <= 0:
        raise ValueError(f"need <v^2>/2 > 0, got {n}")
    M, T = covering_matrices(r, c1, a, s)
    target = tuple(tuple(n if i == j else 0 for j in range(8)) for i in range(8))
    return _matmul(M, T) == target
