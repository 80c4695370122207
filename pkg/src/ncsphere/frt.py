"""FRT construction: R-matrices, Yang-Baxter check, RTT algebras, quantum minors.

Index convention for an n^2 x n^2 matrix: the pair (i, j) (0-based) maps
to row/column ``i*n + j``, so ``E_ij (x) E_kl`` has its 1 at row (i, k),
column (j, l).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, ParamScalar, as_scalar
from .matrix import AlgMatrix, block_projector, is_idempotent, is_self_adjoint
from .ncpoly import NCPoly, Presentation, PresentationError, RewriteRule, TermOrder, confluence_check
from .presentations import ConfluenceError, central_witness, extend_with_Z, involution_failures

__all__ = [
    "RMatrix",
    "YBEReport",
    "QuantumMatrixAlgebra",
    "DetReport",
    "StarReport",
    "FRTSphere",
    "standard_R",
    "ybe_check",
    "rtt_relations",
    "make_quantum_matrix_algebra",
    "tilde_matrix",
    "quantum_det",
    "star_quantum_matrices",
    "sphere_from_frt",
]

Q = ParamScalar.param("q")
QINV = ParamScalar.param("q", -1)


@dataclass(frozen=True)
class RMatrix:
    n: int
    entries: Tuple[Tuple[ParamScalar, ...], ...]

    def __post_init__(self):
        m = self.n * self.n
        if len(self.entries) != m or any(len(r) != m for r in self.entries):
            raise ValueError(f"R-matrix for n={self.n} must be {m}x{m}")

    def __getitem__(self, idx) -> ParamScalar:
        (i, j), (k, l) = idx
        return self.entries[i * self.n + j][k * self.n + l]

    def scale(self, c) -> "RMatrix":
        c = as_scalar(c)
        return RMatrix(self.n, tuple(tuple(x * c for x in r) for r in self.entries))

    def specialize(self, at) -> "RMatrix":
        return RMatrix(self.n, tuple(tuple(x.specialize(at) for x in r) for r in self.entries))

    def is_identity(self) -> bool:
        m = self.n * self.n
        return all(self.entries[a][b] == (ONE if a == b else ZERO) for a in range(m) for b in range(m))

    @classmethod
    def identity(cls, n: int) -> "RMatrix":
        m = n * n
        return cls(n, tuple(tuple(ONE if a == b else ZERO for b in range(m)) for a in range(m)))


def standard_R(n: int) -> RMatrix:
    """GL_q(n) solution without the q^(-1/n) prefactor."""
    if n < 1:
        raise ValueError("n must be positive")
    m = n * n
    R = [[ZERO] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            R[i * n + j][i * n + j] = Q if i == j else ONE
    for i in range(n):
        for j in range(i):
            # E_ij (x) E_ji: row (i, j), column (j, i)
            R[i * n + j][j * n + i] = Q - QINV
    return RMatrix(n, tuple(tuple(r) for r in R))


# -- Yang-Baxter -----------------------------------------------------------

_Sparse = Dict[int, Dict[int, ParamScalar]]


def _embed(R: RMatrix, legs: Tuple[int, int]) -> _Sparse:
    n = R.n
    out: _Sparse = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        row = (a, b, c)
        x, y = row[legs[0]], row[legs[1]]
        r = {}
        for u in range(n):
            for v in range(n):
                val = R[(x, y), (u, v)]
                if val:
                    col = list(row)
                    col[legs[0]], col[legs[1]] = u, v
                    r[(col[0] * n + col[1]) * n + col[2]] = val
        out[(a * n + b) * n + c] = r
    return out


def _sparse_mul(A: _Sparse, B: _Sparse) -> _Sparse:
    out: _Sparse = {}
    for i, row in A.items():
        acc: Dict[int, ParamScalar] = {}
        for k, a in row.items():
            for j, b in B.get(k, {}).items():
                acc[j] = acc.get(j, ZERO) + a * b
        out[i] = {j: v for j, v in acc.items() if v}
    return out


@dataclass
class YBEReport:
    passed: bool
    mismatches: List[Tuple[int, int, ParamScalar, ParamScalar]] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def ybe_check(R: RMatrix) -> YBEReport:
    """Compare R12 R13 R23 with R23 R13 R12 entrywise on the n^3-dimensional space."""
    R12, R13, R23 = _embed(R, (0, 1)), _embed(R, (0, 2)), _embed(R, (1, 2))
    lhs = _sparse_mul(_sparse_mul(R12, R13), R23)
    rhs = _sparse_mul(_sparse_mul(R23, R13), R12)
    bad = []
    for i in sorted(set(lhs) | set(rhs)):
        a, b = lhs.get(i, {}), rhs.get(i, {})
        for j in sorted(set(a) | set(b)):
            x, y = a.get(j, ZERO), b.get(j, ZERO)
            if x != y:
                bad.append((i, j, x, y))
    return YBEReport(not bad, bad)


# -- RTT algebra -----------------------------------------------------------

def gen_index(n: int, i: int, j: int) -> int:
    return i * n + j


def gen_names(n: int) -> List[str]:
    return [f"t{i + 1}{j + 1}" if n < 10 else f"t{i + 1}_{j + 1}" for i in range(n) for j in range(n)]


def rtt_relations(R: RMatrix) -> List[NCPoly]:
    """The n^4 entries of R t1 t2 - t2 t1 R as free polynomials in t_ij.

    Entry ((i, j), (k, l)) is
    sum_ab R[(i,j),(a,b)] t_ak t_bl - sum_ab t_jb t_ia R[(a,b),(k,l)].
    """
    n = R.n
    t = lambda a, b: gen_index(n, a, b)
    rels = []
    for i, j, k, l in itertools.product(range(n), repeat=4):
        terms: Dict[Tuple[int, ...], ParamScalar] = {}
        for a in range(n):
            for b in range(n):
                c = R[(i, j), (a, b)]
                if c:
                    w = (t(a, k), t(b, l))
                    terms[w] = terms.get(w, ZERO) + c
                c = R[(a, b), (k, l)]
                if c:
                    w = (t(j, b), t(i, a))
                    terms[w] = terms.get(w, ZERO) - c
        rels.append(NCPoly(terms))
    return rels


def _row_reduce(rels: Sequence[NCPoly], order: TermOrder) -> List[NCPoly]:
    """Reduced row echelon form over Q(q, p, s), columns in deglex-descending order."""
    rows = [dict(r.terms) for r in rels if r]
    pivots: List[Tuple[Tuple[int, ...], Dict]] = []
    for row in rows:
        # eliminate existing pivots
        for pw, prow in pivots:
            c = row.get(pw)
            if c is not None:
                for w, v in prow.items():
                    x = row.get(w, ZERO) - c * v
                    if x:
                        row[w] = x
                    else:
                        row.pop(w, None)
        if not row:
            continue
        lead = max(row, key=order.key)
        inv = row[lead].inverse()
        row = {w: v * inv for w, v in row.items()}
        # back-substitute into earlier pivots
        for idx, (pw, prow) in enumerate(pivots):
            c = prow.get(lead)
            if c is not None:
                for w, v in row.items():
                    x = prow.get(w, ZERO) - c * v
                    if x:
                        prow[w] = x
                    else:
                        prow.pop(w, None)
        pivots.append((lead, row))
    return [NCPoly(r) for _, r in pivots]


@dataclass
class QuantumMatrixAlgebra:
    n: int
    presentation: Presentation
    R: RMatrix

    def t(self) -> AlgMatrix:
        n = self.n
        return AlgMatrix.from_rows(self.presentation,
                                   [[NCPoly.gen(gen_index(n, i, j)) for j in range(n)] for i in range(n)])


def make_quantum_matrix_algebra(R: RMatrix, check_ybe: bool = True) -> QuantumMatrixAlgebra:
    """Inter-reduce the RTT relations and orient each pivot word to its remainder.

    Generator precedence is row-major ascending (t11 smallest).  Raises
    ConfluenceError with the failing ambiguities if the oriented system is
    not confluent, PresentationError if R fails the Yang-Baxter check.
    """
    n = R.n
    if check_ybe:
        rep = ybe_check(R)
        if not rep.passed:
            raise PresentationError(f"R fails the Yang-Baxter equation at {len(rep.mismatches)} entries")
    names = gen_names(n)
    order = TermOrder.from_precedence(n * n, list(reversed(range(n * n))))
    reduced = _row_reduce(rtt_relations(R), order)
    rules = []
    for rel in reduced:
        lead = order.leading_word(rel)
        if len(lead) != 2:
            raise PresentationError("RTT relation with a non-quadratic pivot")
        rhs = NCPoly({w: -c for w, c in rel.terms.items() if w != lead})
        rules.append(RewriteRule(lead, rhs))
    P = Presentation(names, order, rules, name=f"A(R)_n{n}")
    report = confluence_check(P)
    if not report.passed:
        raise ConfluenceError(f"RTT algebra for n={n} is not confluent after degree-2 inter-reduction", report)
    return QuantumMatrixAlgebra(n, P, R)


def _inversions(perm: Sequence[int]) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def _minor_term_sum(n: int, rows: Sequence[int], cols: Sequence[int]) -> NCPoly:
    """sum_sigma (-q)^l(sigma) t[rows[0], cols[sigma 0]] ... t[rows[-1], cols[sigma -1]]."""
    out = NCPoly()
    mq = -Q
    for perm in itertools.permutations(range(len(cols))):
        w = tuple(gen_index(n, r, cols[p]) for r, p in zip(rows, perm))
        out = out + NCPoly.word(w, mq ** _inversions(perm))
    return out


def tilde_matrix(Qa: QuantumMatrixAlgebra, P: Optional[Presentation] = None) -> AlgMatrix:
    """Quantum-minor matrix: entry (i, j) is (-q)^(i-j) times the minor on
    rows {1..n} minus j and columns {1..n} minus i."""
    n = Qa.n
    P = P or Qa.presentation
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            ri = [a for a in range(n) if a != j]
            ci = [b for b in range(n) if b != i]
            row.append(_minor_term_sum(n, ri, ci).scale((-Q) ** (i - j)))
        rows.append(row)
    return AlgMatrix.from_rows(P, rows)


@dataclass
class DetReport:
    D: NCPoly
    t_ttilde: bool
    ttilde_t: bool
    central: bool
    matches_row_expansion: bool
    witnesses: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.t_ttilde and self.ttilde_t and self.central

    def __bool__(self):
        return self.passed


def quantum_det(Qa: QuantumMatrixAlgebra) -> DetReport:
    """D := nf((t ttilde)_11), then check t ttilde = ttilde t = D I and centrality."""
    from .exprio import format_element

    P = Qa.presentation
    n = Qa.n
    t = Qa.t()
    tt = tilde_matrix(Qa)
    left = t @ tt
    right = tt @ t
    D = left[0, 0]
    witnesses = []

    def scalar_check(M: AlgMatrix, label: str) -> bool:
        ok = True
        for i in range(n):
            for j in range(n):
                res = M[i, j] - (D if i == j else NCPoly())
                if res:
                    ok = False
                    witnesses.append(f"{label}[{i + 1},{j + 1}] - D*delta = {format_element(res, P)}")
        return ok

    ok_l = scalar_check(left, "t*ttilde")
    ok_r = scalar_check(right, "ttilde*t")
    wit = central_witness(P, D)
    if wit is not None:
        witnesses.append(f"D does not commute with {wit[0]}: {format_element(wit[1], P)}")
    candidate = P.normal_form(_minor_term_sum(n, list(range(n)), list(range(n))))
    return DetReport(D, ok_l, ok_r, wit is None, candidate == D, witnesses)


@dataclass
class StarReport:
    presentation: Presentation
    consistent: bool
    failures: List[Tuple[str, NCPoly]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.consistent


def star_quantum_matrices(Qa: QuantumMatrixAlgebra, P: Optional[Presentation] = None) -> StarReport:
    """Install the involution t_ij* = ttilde_ji and test it on every relation.

    For n = 1 the minor matrix is [1], which cannot define an involution;
    t11 is then taken self-adjoint and the anomaly is noted in the report.
    """
    n = Qa.n
    base = P or Qa.presentation
    notes = []
    if n == 1:
        table = {0: NCPoly.gen(0)}
        notes.append("n=1: ttilde = [1] would send t11 to 1; t11 is taken self-adjoint instead")
    else:
        tt = tilde_matrix(Qa, base)
        table = {gen_index(n, i, j): tt[j, i] for i in range(n) for j in range(n)}
    for g in range(n * n, base.ngens):
        table[g] = NCPoly.gen(g)  # extra central generators are self-adjoint
    starred = Presentation(base.names, base.order, base.rule_list(), table, aliases=base.aliases,
                           name=base.name + "_star")
    starred.confluent = base.confluent
    bad = involution_failures(starred)
    return StarReport(starred, not bad, bad, notes)


@dataclass
class FRTSphere:
    presentation: Presentation
    projector: AlgMatrix
    t: AlgMatrix
    ttilde: AlgMatrix
    idempotent: bool
    self_adjoint: Optional[bool]
    star: Optional[StarReport] = None


def sphere_from_frt(Qa: QuantumMatrixAlgebra, with_star: bool = True) -> FRTSphere:
    """Adjoin a central Z with D = 1 - Z^2 and build the block projector.

    Z sits on top of the precedence so the new rule reads Z^2 -> 1 - D.
    Raises ConfluenceError or PresentationError on failure; idempotence
    failure raises as well since the construction is then unsound.
    """
    det = quantum_det(Qa)
    if not det.passed:
        raise PresentationError("quantum determinant checks failed: " + "; ".join(det.witnesses))
    base = Qa.presentation
    ext = extend_with_Z(base, NCPoly.scalar(1) - det.D, below=None)
    star = None
    if with_star:
        star = star_quantum_matrices(Qa, ext)
        if star.consistent:
            ext = star.presentation
    t = Qa.t()
    t = AlgMatrix.from_rows(ext, t.entries)
    tt = tilde_matrix(Qa, ext)
    z = NCPoly.gen(ext.index("Z"))
    e = block_projector(t, tt, z)
    rep = is_idempotent(e)
    if not rep.passed:
        raise PresentationError(f"block projector is not idempotent ({len(rep.failures)} entries)")
    sa = is_self_adjoint(e).passed if ext.has_involution() else None
    return FRTSphere(ext, e, t, tt, True, sa, star)
