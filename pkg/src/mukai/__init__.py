"""Exact arithmetic for Mukai lattices of abelian surfaces, generalized
Kummer varieties and the cohomological Fourier-Mukai transform."""

from .cohomology import (
    DimensionError,
    EvenClass,
    SurfaceModel,
    dual,
    elliptic_product_model,
    euler_chi,
    from_chern,
    mukai_pair,
    mukai_square,
    polarized_model,
    twist,
)
from .correspondence import PolarizedVector, classify, kummer_k3_vector
from .lattice import IntegralLattice, is_decomposable_rank2, orthogonal_complement

__all__ = [
    "DimensionError",
    "EvenClass",
    "IntegralLattice",
    "PolarizedVector",
    "SurfaceModel",
    "classify",
    "dual",
    "elliptic_product_model",
    "euler_chi",
    "from_chern",
    "is_decomposable_rank2",
    "kummer_k3_vector",
    "mukai_pair",
    "mukai_square",
    "orthogonal_complement",
    "polarized_model",
    "twist",
]
