"""Exact and numerical verification for quantum 2- and 4-sphere algebras.

Coefficients live in Q(q, p, s); algebras are confluent rewriting systems
in a free algebra; projectors, Chern components and FRT quantum matrices are
checked by reduction to normal form.
"""

from .coeff import ParamScalar, SpecializationError
from .exprio import ExprSyntaxError, format_element, format_scalar, parse_element, parse_matrix, parse_scalar
from .ncpoly import NCPoly, Presentation, PresentationError, confluence_check
from .presentations import ConfluenceError, build_presentation, extend_with_Z, get_presentation, list_catalog
from .matrix import AlgMatrix, block_projector, is_idempotent, is_self_adjoint, verify_det_condition
from .chern import chern_component
from .frt import make_quantum_matrix_algebra, quantum_det, sphere_from_frt, standard_R, ybe_check

__version__ = "0.1.0"

__all__ = [
    "ParamScalar", "SpecializationError",
    "ExprSyntaxError", "format_element", "format_scalar", "parse_element", "parse_matrix", "parse_scalar",
    "NCPoly", "Presentation", "PresentationError", "confluence_check",
    "ConfluenceError", "build_presentation", "extend_with_Z", "get_presentation", "list_catalog",
    "AlgMatrix", "block_projector", "is_idempotent", "is_self_adjoint", "verify_det_condition",
    "chern_component",
    "make_quantum_matrix_algebra", "quantum_det", "sphere_from_frt", "standard_R", "ybe_check",
]
