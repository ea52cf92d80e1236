"""Exact computations with complexes, Koszul complexes, DG algebras and DG modules."""
from .arith import GF, QQ, Matrix, PolyRing
from .arith.backend import BACKEND
from .complexes import (ChainMap, Complex, hom_complex, homology, is_quasi_iso, mapping_cone,
                        soft_truncate, suspend, tensor_complex)
from .dg import (DGAlgebra, DGModule, DGMorphism, base_change, dg_hom, dg_tensor,
                 koszul_algebra, residue_module, trivial_koszul, verify_dg_algebra,
                 verify_dg_module)
from .errors import AxiomError, DGKitError, DimensionError, ParseError, PreconditionError
from .koszul import KoszulComplex, koszul_via_exterior, koszul_via_tensor
from .moduli import act_on, generate_constraints, tangent_space, yext_dimension
from .resolutions import build_buchsbaum_eisenbud, build_hilbert_burch
from .semifree import ext, is_semidualizing_dg, semifree_resolution

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "GF", "QQ", "Matrix", "PolyRing",
    "ChainMap", "Complex", "hom_complex", "homology", "is_quasi_iso", "mapping_cone",
    "soft_truncate", "suspend", "tensor_complex",
    "DGAlgebra", "DGModule", "DGMorphism", "base_change", "dg_hom", "dg_tensor",
    "koszul_algebra", "residue_module", "trivial_koszul", "verify_dg_algebra",
    "verify_dg_module",
    "AxiomError", "DGKitError", "DimensionError", "ParseError", "PreconditionError",
    "KoszulComplex", "koszul_via_exterior", "koszul_via_tensor",
    "act_on", "generate_constraints", "tangent_space", "yext_dimension",
    "build_buchsbaum_eisenbud", "build_hilbert_burch",
    "ext", "is_semidualizing_dg", "semifree_resolution",
]
