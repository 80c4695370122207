"""Truncated Hilbert-space representations of the *-presented 4-sphere.

Basis vectors |k, l> with k = 0..K-1 and l = -L..L are flattened to
``k * (2L + 1) + (l + L)``.  The operators act by

    U |k,l>   = c |k,l+1>              U* |k,l> = conj(c) |k,l-1>
    zeta |k,l> = alpha q^(2k) |k,l>
    xi |k,l>  = p^l omega_{k+1} |k+1,l>
    xi* |k,l> = p^(-l) omega_k |k-1,l>

with omega_0 = 0, so the lowest k-level is annihilated by xi*.  Shifts that
leave the window map to zero; identities are therefore only compared on the
interior k <= K-2, |l| <= L-1.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

__all__ = [
    "DomainError",
    "ReprParams",
    "TruncatedOperator",
    "alpha_pm",
    "omega",
    "radicands",
    "build_operators",
    "relation_residuals",
    "bottom_level_residual",
    "ProjectorNumericReport",
    "projector_blocks",
    "omega_sequence",
    "PositivityReport",
    "check_projector_numeric",
    "zeta_spectrum",
    "positivity_scan",
    "write_csv",
]

RESIDUAL_TOL = 1e-10
SCALAR_TOL = 1e-12


class DomainError(ValueError):
    """Parameters outside the admissible range of the representations."""


@dataclass(frozen=True)
class ReprParams:
    q: float = 0.5
    s: float = 1.0
    c: complex = 0.3
    theta: float = 0.1
    sign: str = "+"
    K: int = 30
    L: int = 10

    def __post_init__(self):
        if not 0 < abs(self.q) < 1:
            raise DomainError(f"need 0 < |q| < 1, got q={self.q}")
        if not 0 < self.s <= 1:
            raise DomainError(f"need 0 < s <= 1, got s={self.s}")
        if abs(self.c) > self.s + SCALAR_TOL:
            raise DomainError(f"need |c| <= s, got |c|={abs(self.c)} > s={self.s}")
        if not 0 <= self.theta < 1:
            raise DomainError(f"need theta in [0, 1), got {self.theta}")
        if self.sign not in ("+", "-"):
            raise DomainError("sign must be '+' or '-'")
        if self.K < 2 or self.L < 2:
            raise DomainError("truncations K and L must be at least 2")

    @property
    def p(self) -> complex:
        return cmath.exp(2j * math.pi * self.theta)

    @property
    def dim(self) -> int:
        return self.K * (2 * self.L + 1)

    @property
    def alpha(self) -> float:
        ap, am = alpha_pm(self.s, self.c)
        return ap if self.sign == "+" else am

    def index(self, k: int, l: int) -> int:
        return k * (2 * self.L + 1) + (l + self.L)

    def interior(self) -> np.ndarray:
        idx = [self.index(k, l) for k in range(self.K - 1) for l in range(-self.L + 1, self.L)]
        return np.array(idx, dtype=int)


@dataclass
class TruncatedOperator:
    name: str
    matrix: np.ndarray

    def __matmul__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        return TruncatedOperator(f"{self.name}*{other.name}", self.matrix @ other.matrix)


def alpha_pm(s: float, c: complex, check: bool = True) -> Tuple[float, float]:
    """Roots of x^2 - (1 - s^2) x + (|c|^2 - s^2) = 0, larger first."""
    c2 = abs(c) ** 2
    if check and (abs(c) > s + SCALAR_TOL or s > 1 + SCALAR_TOL):
        raise DomainError(f"need |c| <= s <= 1, got |c|={abs(c)}, s={s}")
    disc = (s * s + 1) ** 2 - 4 * c2
    if disc < 0:
        if disc < -SCALAR_TOL:
            raise DomainError(f"complex roots: discriminant {disc} < 0")
        disc = 0.0
    root = math.sqrt(disc)
    return 0.5 * (1 - s * s + root), 0.5 * (1 - s * s - root)


def _radicand(k: int, alpha: float, s: float, c: complex, q: float) -> float:
    x = alpha * q ** (2 * k)
    return (1 - x) * (s * s + x) - abs(c) ** 2


def omega(k: int, alpha: float, s: float, c: complex, q: float, tol: float = SCALAR_TOL) -> float:
    """sqrt((1 - alpha q^2k)(s^2 + alpha q^2k) - |c|^2), clamped at 0 within tol."""
    rad = _radicand(k, alpha, s, c, q)
    if rad < -tol:
        raise DomainError(f"negative radicand {rad:.3e} at k={k}")
    return math.sqrt(max(rad, 0.0))


def radicands(s: float, c: complex, q: float, K: int) -> Dict[str, np.ndarray]:
    """Radicands for k = 0..K-1 for both roots, without the |c| <= s check."""
    ap, am = alpha_pm(s, c, check=False)
    return {sgn: np.array([_radicand(k, a, s, c, q) for k in range(K)])
            for sgn, a in (("+", ap), ("-", am))}


def build_operators(P: ReprParams, convention: str = "adopted") -> Dict[str, TruncatedOperator]:
    """Matrices of U, U*, zeta, xi, xi* on the truncated basis.

    ``convention="literal"`` instead uses zeta |k> = alpha q^(2(k-1)) |k> and
    xi |k> = p^l omega_k |k+1>, i.e. the level index shifted by one;
    it is kept only to document its residual at the bottom level.
    """
    if convention not in ("adopted", "literal"):
        raise ValueError("convention must be 'adopted' or 'literal'")
    N = P.dim
    a = P.alpha
    p = P.p
    U = np.zeros((N, N), dtype=complex)
    Z = np.zeros((N, N), dtype=complex)
    X = np.zeros((N, N), dtype=complex)
    for k in range(P.K):
        if convention == "adopted":
            zval = a * P.q ** (2 * k)
            w = omega(k + 1, a, P.s, P.c, P.q)
        else:
            zval = a * P.q ** (2 * (k - 1))
            w = omega(k, a, P.s, P.c, P.q, tol=np.inf)
        for l in range(-P.L, P.L + 1):
            i = P.index(k, l)
            Z[i, i] = zval
            if l < P.L:
                U[P.index(k, l + 1), i] = P.c
            if k + 1 < P.K:
                X[P.index(k + 1, l), i] = p ** l * w
    return {
        "U": TruncatedOperator("U", U),
        "U*": TruncatedOperator("U*", U.conj().T),
        "zeta": TruncatedOperator("zeta", Z),
        "xi": TruncatedOperator("xi", X),
        "xi*": TruncatedOperator("xi*", X.conj().T),
    }


def _relations(ops: Dict[str, TruncatedOperator], P: ReprParams) -> Dict[str, np.ndarray]:
    U, Us, Z, X, Xs = (ops[n].matrix for n in ("U", "U*", "zeta", "xi", "xi*"))
    one = np.eye(P.dim)
    q2, s2, p = P.q ** 2, P.s ** 2, P.p
    return {
        "zeta*xi - q^2*xi*zeta": Z @ X - q2 * X @ Z,
        "xi*U - p*U*xi": X @ U - p * U @ X,
        "U_star*xi - p*xi*U_star": Us @ X - p * X @ Us,
        "U*U_star - U_star*U": U @ Us - Us @ U,
        "U*zeta - zeta*U": U @ Z - Z @ U,
        "xi*xi_star + (zeta-1)*(zeta+s^2) + U*U_star": X @ Xs + (Z - one) @ (Z + s2 * one) + U @ Us,
        "xi_star*xi + (q^2*zeta-1)*(q^2*zeta+s^2) + U*U_star": Xs @ X + (q2 * Z - one) @ (q2 * Z + s2 * one) + U @ Us,
    }


def relation_residuals(P: ReprParams, convention: str = "adopted") -> Dict[str, float]:
    """Max |entry| of each relation's operator over interior columns."""
    ops = build_operators(P, convention)
    cols = P.interior()
    return {name: float(np.max(np.abs(M[:, cols])) if M.size else 0.0)
            for name, M in _relations(ops, P).items()}


def bottom_level_residual(P: ReprParams, convention: str) -> float:
    """Largest relation residual restricted to the k = 0 columns of the interior."""
    ops = build_operators(P, convention)
    cols = np.array([P.index(0, l) for l in range(-P.L + 1, P.L)])
    return max(float(np.max(np.abs(M[:, cols]))) for M in _relations(ops, P).values())


@dataclass
class ProjectorNumericReport:
    idempotence: float
    self_adjointness: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.idempotence < self.tol and self.self_adjointness < self.tol


def projector_blocks(P: ReprParams) -> np.ndarray:
    """The 4x4 projector e with eta = -xi* and V = U*, as a 4N x 4N matrix."""
    ops = build_operators(P)
    N = P.dim
    one = np.eye(N)
    U, V, Z, X = ops["U"].matrix, ops["U*"].matrix, ops["zeta"].matrix, ops["xi"].matrix
    E = -ops["xi*"].matrix
    q2, s2, p = P.q ** 2, P.s ** 2, P.p
    O = np.zeros((N, N))
    blocks = [
        [one - Z, O, U, X],
        [O, one - q2 * Z, -E, -p * V],
        [V, X, s2 * one + Z, O],
        [-E, -U / p, O, s2 * one + q2 * Z],
    ]
    return np.block(blocks) / (1 + s2)


def check_projector_numeric(P: ReprParams, tol: float = 1e-9) -> ProjectorNumericReport:
    """max |e^2 - e| and max |e - e^dagger| over the interior of each block."""
    e = projector_blocks(P)
    N = P.dim
    cols = np.concatenate([P.interior() + b * N for b in range(4)])
    idem = np.max(np.abs((e @ e - e)[:, cols]))
    # adjoint compares rows too, so restrict both sides to the interior
    sa = np.max(np.abs((e - e.conj().T)[np.ix_(cols, cols)]))
    return ProjectorNumericReport(float(idem), float(sa), tol)


def zeta_spectrum(P: ReprParams) -> np.ndarray:
    return np.real(np.diag(build_operators(P)["zeta"].matrix)[:: 2 * P.L + 1])


def omega_sequence(P: ReprParams) -> np.ndarray:
    a = P.alpha
    return np.array([omega(k, a, P.s, P.c, P.q) for k in range(P.K + 1)])


@dataclass
class PositivityReport:
    admissible_min: float
    inadmissible_mins: List[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.admissible_min >= -SCALAR_TOL and all(m < 0 for m in self.inadmissible_mins)


def positivity_scan(q: float, K: int, admissible: Sequence[Tuple[float, complex]],
                    inadmissible: Sequence[Tuple[float, complex]]) -> PositivityReport:
    """Minimum radicand for k >= 1 over each sample, both roots.

    A sample whose alpha-quadratic has no real root admits no representation
    and is reported with minimum -inf.
    """
    def lowest(s, c):
        try:
            r = radicands(s, c, q, K)
        except DomainError:
            return -math.inf
        return min(float(r["+"][1:].min()), float(r["-"][1:].min()))

    adm = min((lowest(s, c) for s, c in admissible), default=0.0)
    return PositivityReport(adm, [lowest(s, c) for s, c in inadmissible])


def write_csv(P: ReprParams, path: str) -> None:
    """Dump k, zeta eigenvalue and omega_k for the chosen root."""
    spec = zeta_spectrum(P)
    om = omega_sequence(P)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "zeta_eigenvalue", "omega_k"])
        for k in range(P.K):
            w.writerow([k, repr(float(spec[k])), repr(float(om[k]))])
