"""Exact computation of commutative post-Lie algebra (CPA) structures on Lie algebras."""

from .catalog import make as catalog_algebra
from .cpa import (
    AxiomReport,
    Classification,
    CPAProduct,
    annihilator,
    center_construction_product,
    central_z_product,
    classify,
    cocycle_product,
    cocycle_space,
    componentwise_product,
    detect_inner,
    ideal_chain,
    inner_solve,
    lie_eigenfunctional_product,
    phi_decompose,
    quadratic_residuals,
    quotient_cpa,
    solve_linear_part,
    verify_cpa,
)
from .lie import LieAlgebra, structure_report, validate
from .linalg import Matrix, Subspace

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "Classification",
    "CPAProduct",
    "annihilator",
    "center_construction_product",
    "central_z_product",
    "classify",
    "cocycle_product",
    "cocycle_space",
    "componentwise_product",
    "detect_inner",
    "ideal_chain",
    "inner_solve",
    "lie_eigenfunctional_product",
    "phi_decompose",
    "quadratic_residuals",
    "quotient_cpa",
    "solve_linear_part",
    "verify_cpa",
    "catalog_algebra",
    "LieAlgebra",
    "structure_report",
    "validate",
    "Matrix",
    "Subspace",
]
