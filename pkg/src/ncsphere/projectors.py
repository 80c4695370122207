"""The explicit projectors over the catalog algebras, entered verbatim."""

from __future__ import annotations

from .exprio import parse_matrix, parse_scalar
from .matrix import AlgMatrix
from .presentations import get_presentation

__all__ = [
    "projector_e",
    "projector_f",
    "projector_etilde",
    "monopole_block_data",
    "PROJECTOR_E_TEXT",
    "PROJECTOR_F_TEXT",
    "PROJECTOR_ETILDE_TEXT",
]

PROJECTOR_E_TEXT = """1/(1+s^2) * [
  [1-zeta, 0, U, xi],
  [0, 1-q^2*zeta, -eta, -p*V],
  [V, xi, s^2+zeta, 0],
  [-eta, -p^-1*U, 0, s^2+q^2*zeta]
]"""

PROJECTOR_F_TEXT = """1/(1+s^2) * [
  [1-z, x],
  [-y, s^2+q^2*z]
]"""

PROJECTOR_ETILDE_TEXT = """1/(2*(1+s^2)) * [
  [1+s^2+2*Z, 0, 1-s^2-2*zeta, 2*xi],
  [0, 1+s^2+2*Z, -2*eta, s^2-1+2*q^2*zeta],
  [1-s^2-2*zeta, 2*xi, 1+s^2-2*Z, 0],
  [-2*eta, s^2-1+2*q^2*zeta, 0, 1+s^2-2*Z]
]"""


def projector_e() -> AlgMatrix:
    """4x4 projector over the 4-sphere algebra."""
    return parse_matrix(PROJECTOR_E_TEXT, get_presentation("sphere4"))


def projector_f() -> AlgMatrix:
    """2x2 monopole projector over the 2-sphere algebra."""
    return parse_matrix(PROJECTOR_F_TEXT, get_presentation("sphere2"))


def projector_etilde() -> AlgMatrix:
    """4x4 projector over the 4-sphere extended by Z with Z^2 = UV."""
    return parse_matrix(PROJECTOR_ETILDE_TEXT, get_presentation("sphere4_Z"))


def monopole_block_data():
    """(t, ttilde, Z-element) whose block projector is ``projector_etilde``.

    t = ttilde = 2/(1+s^2) [[1-zeta, xi], [-eta, s^2+q^2*zeta]] - 1 and the
    Z-element is 2Z/(1+s^2).
    """
    P = get_presentation("sphere4_Z")
    t = parse_matrix("2/(1+s^2) * [[1-zeta, xi], [-eta, s^2+q^2*zeta]]", P) - AlgMatrix.identity(P, 2)
    z = P.gen("Z").scale(parse_scalar("2/(1+s^2)"))
    return t, t, z
