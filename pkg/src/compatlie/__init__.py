"""Exact computations with compatible Lie algebras.

Two Lie brackets on one vector space are compatible when every linear
combination of them is again a Lie bracket.  Everything here works over
the rationals, optionally extended by named parameters.
"""
from .algebra import (
    BracketTensor,
    CompatAlgebra,
    IdentityReport,
    JacobiError,
    ParametricError,
    TwoCochain,
    check_compatibility,
    check_jacobi,
    circle,
    extract_constraints,
    mixed_jacobiator,
    pencil,
)
from .constraints import ConstraintSet, reduce_constraints
from .linalg import Subspace, kernel, rank, rref
from .scalar import Poly, format_scalar, parse_scalar, substitute, var
from .serialize import load_algebra, parse_algebra, save_algebra, serialize_algebra
from .structure import (
    center,
    derived_series,
    is_ideal,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    nilindex,
    verify_nilradical,
)

__all__ = [
    "BracketTensor",
    "CompatAlgebra",
    "IdentityReport",
    "JacobiError",
    "ParametricError",
    "TwoCochain",
    "check_compatibility",
    "check_jacobi",
    "circle",
    "extract_constraints",
    "mixed_jacobiator",
    "pencil",
    "ConstraintSet",
    "reduce_constraints",
    "Subspace",
    "kernel",
    "rank",
    "rref",
    "Poly",
    "format_scalar",
    "parse_scalar",
    "substitute",
    "var",
    "load_algebra",
    "parse_algebra",
    "save_algebra",
    "serialize_algebra",
    "center",
    "derived_series",
    "is_ideal",
    "is_nilpotent",
    "is_solvable",
    "lower_central_series",
    "nilindex",
    "verify_nilradical",
]

__version__ = "0.1.0"
