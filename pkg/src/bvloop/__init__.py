"""Exact BV algebra computations on the loop homology of SU(n+1) and complex Stiefel manifolds."""

from .superalgebra import (
    AlgebraError,
    Basis,
    Element,
    Monomial,
    Signature,
    D_op,
    D_op_stiefel,
    degree,
    generator,
    make_monomial,
    monomials,
    mul,
    partial_alpha,
    word_merge,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "Basis",
    "D_op",
    "D_op_stiefel",
    "Element",
    "Monomial",
    "Signature",
    "degree",
    "generator",
    "make_monomial",
    "monomials",
    "mul",
    "partial_alpha",
    "word_merge",
]
