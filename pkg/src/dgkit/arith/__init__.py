"""Exact scalars, polynomials, matrices and linear algebra."""
from .fields import GF, QQ, ModInt, PrimeField, RationalField, field_from_tag
from .linalg import (image_basis, inverse, kernel, rank, rank_kernel, rref, solve,
                     solve_matrix)
from .matrix import Matrix, block_diag, det, matmul, minors, pfaffian, submaximal_pfaffians
from .poly import Poly, PolyRing

__all__ = [
    "GF", "QQ", "ModInt", "PrimeField", "RationalField", "field_from_tag",
    "Poly", "PolyRing", "Matrix", "block_diag", "det", "matmul", "minors",
    "pfaffian", "submaximal_pfaffians", "rank", "kernel", "rank_kernel", "rref",
    "solve", "solve_matrix", "inverse", "image_basis",
]
