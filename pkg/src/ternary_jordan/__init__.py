"""Exact computations with ternary Jordan algebras and their invariant operator spaces."""

__version__ = "0.1.0"

from .linalg import GF, QQ, FieldSpec, Subspace, lattice, minimal_polynomial
from .algebra import (BinaryAlgebra, TernaryAlgebra, annihilator, derived, direct_sum,
                      quotient, validate_binary, validate_ternary)
from .spaces import SpaceKind, all_spaces, invariant_space
from .constructions import hom_binary, j_alpha, tensor_ternary, ternary_slice, tilde
from .theorems import CheckId, CheckReport, Options, idempotent_decomposition, verify
from .io import emit_algebra, parse_algebra

__all__ = [
    "GF", "QQ", "FieldSpec", "Subspace", "lattice", "minimal_polynomial",
    "BinaryAlgebra", "TernaryAlgebra", "annihilator", "derived", "direct_sum", "quotient",
    "validate_binary", "validate_ternary",
    "SpaceKind", "all_spaces", "invariant_space",
    "hom_binary", "j_alpha", "tensor_ternary", "ternary_slice", "tilde",
    "CheckId", "CheckReport", "Options", "idempotent_decomposition", "verify",
    "emit_algebra", "parse_algebra",
]
