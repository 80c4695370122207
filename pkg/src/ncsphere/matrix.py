"""Matrices over a presented algebra, projector checks and block projectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .coeff import ONE, ParamScalar, as_scalar
from .ncpoly import NCPoly, Presentation, PresentationError
from .presentations import central_witness

__all__ = [
    "AlgMatrix",
    "MatrixReport",
    "DimensionError",
    "mat_mul",
    "is_idempotent",
    "is_self_adjoint",
    "mat_adjoint",
    "block_projector",
    "verify_det_condition",
]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class AlgMatrix:
    """Rectangular matrix of reduced elements of one presentation."""

    presentation: Presentation
    entries: Tuple[Tuple[NCPoly, ...], ...]

    @classmethod
    def from_rows(cls, P: Presentation, rows: Sequence[Sequence]) -> "AlgMatrix":
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(rows[0])
        out = []
        for row in rows:
            if len(row) != width:
                raise DimensionError("ragged rows")
            out.append(tuple(P.normal_form(e if isinstance(e, NCPoly) else NCPoly.scalar(e)) for e in row))
        return cls(P, tuple(out))

    @classmethod
    def identity(cls, P: Presentation, n: int, c=ONE) -> "AlgMatrix":
        return cls.from_rows(P, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, P: Presentation, rows: int, cols: int) -> "AlgMatrix":
        return cls.from_rows(P, [[0] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> NCPoly:
        i, j = ij
        return self.entries[i][j]

    def _same(self, other: "AlgMatrix"):
        if other.presentation is not self.presentation:
            raise PresentationError("matrices belong to different presentations")

    def __add__(self, other: "AlgMatrix") -> "AlgMatrix":
        self._same(other)
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return AlgMatrix(self.presentation, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> "AlgMatrix":
        return AlgMatrix(self.presentation, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: "AlgMatrix") -> "AlgMatrix":
        return self + (-other)

    def scale(self, c) -> "AlgMatrix":
        c = as_scalar(c)
        return AlgMatrix(self.presentation, tuple(tuple(a.scale(c) for a in r) for r in self.entries))

    def __matmul__(self, other: "AlgMatrix") -> "AlgMatrix":
        return mat_mul(self, other)

    def map(self, fn) -> "AlgMatrix":
        return AlgMatrix(self.presentation, tuple(tuple(fn(a) for a in r) for r in self.entries))

    def transpose(self) -> "AlgMatrix":
        return AlgMatrix(self.presentation, tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(not a for r in self.entries for a in r)

    def nonzero_entries(self) -> List[Tuple[int, int, NCPoly]]:
        return [(i, j, a) for i, r in enumerate(self.entries) for j, a in enumerate(r) if a]

    def specialize(self, at) -> "AlgMatrix":
        return self.map(lambda a: a.map_coefficients(lambda c: c.specialize(at)))

    def __str__(self):
        from .exprio import format_matrix

        return format_matrix(self)


def mat_mul(A: AlgMatrix, B: AlgMatrix) -> AlgMatrix:
    """Entries nf(sum_k A[i,k] * B[k,j]), A-entry on the left."""
    A._same(B)
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    P = A.presentation
    rows = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            acc = NCPoly()
            for k in range(A.cols):
                a, b = A.entries[i][k], B.entries[k][j]
                if a and b:
                    acc = acc + P.mul(a, b)
            row.append(acc)
        rows.append(tuple(row))
    return AlgMatrix(P, tuple(rows))


@dataclass
class MatrixReport:
    """Pass/fail with the offending entries ``(i, j, residual)`` (0-based)."""

    passed: bool
    failures: List[Tuple[int, int, NCPoly]] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def is_idempotent(A: AlgMatrix) -> MatrixReport:
    """Every entry of nf(A^2 - A) must vanish; all failures are listed."""
    if A.rows != A.cols:
        raise DimensionError("idempotence needs a square matrix")
    res = mat_mul(A, A) - A
    bad = res.nonzero_entries()
    return MatrixReport(not bad, bad)


def mat_adjoint(A: AlgMatrix) -> AlgMatrix:
    """Transpose combined with the involution on each entry."""
    P = A.presentation
    if not P.has_involution():
        raise PresentationError(f"presentation {P.name or '?'} has no involution")
    return A.transpose().map(P.star)


def is_self_adjoint(A: AlgMatrix) -> MatrixReport:
    res = mat_adjoint(A) - A
    bad = res.nonzero_entries()
    return MatrixReport(not bad, bad)


def _element(P: Presentation, z) -> NCPoly:
    if isinstance(z, NCPoly):
        return P.normal_form(z)
    return NCPoly.scalar(z)


def block_projector(t: AlgMatrix, ttilde: AlgMatrix, Z) -> AlgMatrix:
    """(1/2) [[1+Z, t], [ttilde, 1-Z]] for a central element Z.

    Does not assume the determinant condition; check that separately with
    :func:`verify_det_condition`.
    """
    t._same(ttilde)
    if t.shape != ttilde.shape or t.rows != t.cols:
        raise DimensionError("t and ttilde must be square of the same size")
    P = t.presentation
    z = _element(P, Z)
    wit = central_witness(P, z)
    if wit is not None:
        raise PresentationError(f"Z-element is not central: fails against generator {wit[0]}")
    n = t.rows
    half = ParamScalar.const(1) / 2
    one = NCPoly.scalar(1)
    rows = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            if i < n and j < n:
                e = (one + z) if i == j else NCPoly()
            elif i < n:
                e = t.entries[i][j - n]
            elif j < n:
                e = ttilde.entries[i - n][j]
            else:
                e = (one - z) if i == j else NCPoly()
            row.append(e.scale(half))
        rows.append(tuple(row))
    return AlgMatrix(P, tuple(rows))


@dataclass
class DetReport:
    passed: bool
    left: MatrixReport
    right: MatrixReport

    def __bool__(self):
        return self.passed


def verify_det_condition(t: AlgMatrix, ttilde: AlgMatrix, Z) -> DetReport:
    """ttilde*t = t*ttilde = (1 - Z^2) I, entrywise after reduction."""
    t._same(ttilde)
    if t.shape != ttilde.shape:
        raise DimensionError("t and ttilde must have the same shape")
    P = t.presentation
    z = _element(P, Z)
    target = AlgMatrix.identity(P, t.rows).map(lambda a: P.mul(a, NCPoly.scalar(1) - P.mul(z, z)))
    left = mat_mul(ttilde, t) - target
    right = mat_mul(t, ttilde) - target
    lbad, rbad = left.nonzero_entries(), right.nonzero_entries()
    return DetReport(not lbad and not rbad, MatrixReport(not lbad, lbad), MatrixReport(not rbad, rbad))
