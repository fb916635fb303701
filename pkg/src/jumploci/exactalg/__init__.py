"""Exact arithmetic substrate: scalar fields, ternary forms, linear algebra."""
from .fields import GF, QQ, FieldMismatch, ModP, is_prime, random_prime
from .interpolate import InconsistentOracle, SingularFit, interpolate_homogeneous
from .linalg import FieldMatrix, determinant, kernel_basis
from .poly import (
    HPoly,
    InhomogeneousError,
    PolyError,
    VariableMismatch,
    canonicalize,
    content_and_primitive,
    exact_divide,
    monomials_of_degree,
    poly_arith,
    poly_diff,
    poly_eval,
)
from .univariate import BadPrime, NotSquarefree, factor_degrees_mod_p

__all__ = [
    "GF", "QQ", "FieldMismatch", "ModP", "is_prime", "random_prime",
    "InconsistentOracle", "SingularFit", "interpolate_homogeneous",
    "FieldMatrix", "determinant", "kernel_basis",
    "HPoly", "InhomogeneousError", "PolyError", "VariableMismatch",
    "canonicalize", "content_and_primitive", "exact_divide", "monomials_of_degree",
    "poly_arith", "poly_diff", "poly_eval",
    "BadPrime", "NotSquarefree", "factor_degrees_mod_p",
]
