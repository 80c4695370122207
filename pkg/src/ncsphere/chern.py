"""Chern-Connes character components of an idempotent matrix as explicit tensors.

``ch_n(A)`` is the sum over index cycles i1 ... i_{2n+1} of

    (A - 1/2)_{i1 i2} (x) bar(A)_{i2 i3} (x) ... (x) bar(A)_{i_{2n+1} i1}

with the normalisation constant set to 1 and ``bar`` dropping the scalar
part of an element.  The sum is evaluated with a transfer-matrix recursion
over the running index, so the cost grows like the number of nonzero
entries rather than 4^(2n+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .coeff import ONE, ZERO, ParamScalar, as_scalar
from .matrix import AlgMatrix
from .ncpoly import NCPoly, Presentation, Word

__all__ = [
    "CyclicTensor",
    "ChernResult",
    "bar_project",
    "chern_component",
    "proportional_to",
    "tensor_specialize",
    "tensor_from_terms",
    "sphere4_ch1_closed_form",
    "block_ch1_expected",
]

TensorKey = Tuple[Word, ...]


class CyclicTensor:
    """Linear combination of (2n+1)-tuples of reduced words."""

    __slots__ = ("degree", "terms", "presentation")

    def __init__(self, degree: int, terms: Mapping[TensorKey, ParamScalar], presentation: Presentation = None):
        self.degree = degree
        self.presentation = presentation
        clean = {}
        for k, c in terms.items():
            if len(k) != 2 * degree + 1:
                raise ValueError(f"tensor of degree {degree} needs {2 * degree + 1} factors")
            if c:
                clean[tuple(k)] = c
        self.terms: Dict[TensorKey, ParamScalar] = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CyclicTensor):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __add__(self, other: "CyclicTensor") -> "CyclicTensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return CyclicTensor(self.degree, out, self.presentation or other.presentation)

    def __neg__(self):
        return CyclicTensor(self.degree, {k: -c for k, c in self.terms.items()}, self.presentation)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CyclicTensor":
        c = as_scalar(c)
        return CyclicTensor(self.degree, {k: v * c for k, v in self.terms.items()}, self.presentation)

    def support(self) -> List[TensorKey]:
        return self.sorted_keys()

    def sorted_keys(self) -> List[TensorKey]:
        P = self.presentation
        if P is None:
            return sorted(self.terms)
        return sorted(self.terms, key=lambda k: tuple(P.order.key(w) for w in k), reverse=True)

    def letters(self) -> set:
        return {g for k in self.terms for w in k for g in w}

    def format_lines(self) -> List[str]:
        from .exprio import format_scalar, format_word

        names = self.presentation.names if self.presentation else [f"g{i}" for i in range(64)]
        lines = []
        for k in self.sorted_keys():
            lines.append(f"{format_scalar(self.terms[k])} · " + " ⊗ ".join(format_word(w, names) for w in k))
        return lines

    def __str__(self):
        return "\n".join(self.format_lines()) if self.terms else "0"

    def to_json(self) -> dict:
        from .exprio import format_scalar, format_word

        names = self.presentation.names
        return {
            "degree": self.degree,
            "terms": [
                {"coefficient": format_scalar(self.terms[k]), "factors": [format_word(w, names) for w in k]}
                for k in self.sorted_keys()
            ],
        }


@dataclass
class ChernResult:
    tensor: CyclicTensor
    scalar_part: ParamScalar

    @property
    def vanishes(self) -> bool:
        return self.tensor.is_zero() and self.scalar_part.is_zero()


def bar_project(a: NCPoly) -> NCPoly:
    """Drop the empty-word (scalar) component."""
    if () not in a.terms:
        return a
    return NCPoly._raw({w: c for w, c in a.terms.items() if w})


def _common_denominator(A: AlgMatrix) -> ParamScalar:
    dens = []
    for row in A.entries:
        for a in row:
            for c in a.terms.values():
                if not c.den.is_one() and c.den not in dens:
                    dens.append(c.den)
    out = ONE
    for d in dens:
        out = out * ParamScalar(d)
    return out


def chern_component(A: AlgMatrix, n: int) -> ChernResult:
    """Degree-n component with normalisation 1.

    For n = 0 the single factor is bar-projected as well and the dropped
    scalar part, trace(A) - size/2, is returned in ``scalar_part``.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if A.rows != A.cols:
        raise ValueError("Chern components need a square matrix")
    P = A.presentation
    size = A.rows
    # pull out a common denominator so the inner loop stays polynomial
    d = _common_denominator(A)
    half = ParamScalar.const(1) / 2
    B = A.scale(d)
    first = [[(B.entries[i][j] - NCPoly.scalar(d * half) if i == j else B.entries[i][j]).terms
              for j in range(size)] for i in range(size)]
    bar = [[bar_project(B.entries[i][j]).terms for j in range(size)] for i in range(size)]

    if n == 0:
        scalar_part = ZERO
        out: Dict[TensorKey, ParamScalar] = {}
        for i in range(size):
            for w, c in first[i][i].items():
                if w:
                    out[(w,)] = out.get((w,), ZERO) + c
                else:
                    scalar_part = scalar_part + c
        inv = d.inverse()
        tensor = CyclicTensor(0, {k: c * inv for k, c in out.items()}, P)
        return ChernResult(tensor, scalar_part * inv)

    total: Dict[TensorKey, ParamScalar] = {}
    for i1 in range(size):
        # state[j] = partial tensor ending at running index j
        state: List[Dict[TensorKey, ParamScalar]] = [
            {(w,): c for w, c in first[i1][j].items()} for j in range(size)
        ]
        for _ in range(2 * n - 1):
            nxt: List[Dict[TensorKey, ParamScalar]] = [dict() for _ in range(size)]
            for j, part in enumerate(state):
                if not part:
                    continue
                for k in range(size):
                    ent = bar[j][k]
                    if ent:
                        _tensor_extend(nxt[k], part, ent)
            state = nxt
        for j, part in enumerate(state):
            ent = bar[j][i1]
            if part and ent:
                _tensor_extend(total, part, ent)
    inv = d.inverse() ** (2 * n + 1)
    tensor = CyclicTensor(n, {k: c * inv for k, c in total.items() if c}, P)
    return ChernResult(tensor, ZERO)


def _tensor_extend(out: Dict[TensorKey, ParamScalar], part: Mapping[TensorKey, ParamScalar],
                   ent: Mapping[Word, ParamScalar]):
    for key, c in part.items():
        for w, v in ent.items():
            k = key + (w,)
            x = c * v
            prev = out.get(k)
            if prev is not None:
                x = prev + x
                if not x:
                    del out[k]
                    continue
            out[k] = x


def tensor_from_terms(P: Presentation, degree: int, terms: Iterable[Tuple[object, Iterable[NCPoly]]]) -> CyclicTensor:
    """Expand sum_c c * a1 (x) a2 (x) ... into the word-tuple basis."""
    out: Dict[TensorKey, ParamScalar] = {}
    for c, factors in terms:
        part: Dict[TensorKey, ParamScalar] = {(): as_scalar(c)}
        for f in factors:
            nxt: Dict[TensorKey, ParamScalar] = {}
            _tensor_extend(nxt, part, P.normal_form(f).terms)
            part = nxt
        for k, v in part.items():
            out[k] = out.get(k, ZERO) + v
    return CyclicTensor(degree, out, P)


def proportional_to(T1: CyclicTensor, T2: CyclicTensor) -> Optional[ParamScalar]:
    """lambda with T1 = lambda * T2, or None.

    Two zero tensors give 1; a zero tensor against a nonzero one gives None
    (a nonzero multiple is required).
    """
    if T1.degree != T2.degree:
        raise ValueError("tensors of different degree")
    if T1.is_zero() and T2.is_zero():
        return ONE
    if T1.is_zero() or T2.is_zero():
        return None
    if set(T1.terms) != set(T2.terms):
        return None
    key = next(iter(T2.terms))
    lam = T1.terms[key] / T2.terms[key]
    for k, c in T2.terms.items():
        if T1.terms[k] != lam * c:
            return None
    return lam


def tensor_specialize(T: CyclicTensor, at: Mapping[str, object]) -> CyclicTensor:
    """Coefficient-wise specialization; zero coefficients are pruned."""
    return CyclicTensor(T.degree, {k: c.specialize(at) for k, c in T.terms.items()}, T.presentation)


def sphere4_ch1_closed_form(P: Presentation = None) -> CyclicTensor:
    """(q^2-1)/(1+s^2)^3 [zeta(x)(U(x)V - V(x)U) + U(x)(V(x)zeta - zeta(x)V)
    + V(x)(zeta(x)U - U(x)zeta)], entered term by term."""
    from .exprio import parse_scalar
    from .presentations import get_presentation

    P = P or get_presentation("sphere4")
    c = parse_scalar("(q^2-1)/(1+s^2)^3")
    z, u, v = P.gen("zeta"), P.gen("U"), P.gen("V")
    terms = [
        (c, (z, u, v)), (-c, (z, v, u)),
        (c, (u, v, z)), (-c, (u, z, v)),
        (c, (v, z, u)), (-c, (v, u, z)),
    ]
    return tensor_from_terms(P, 1, terms)


def block_ch1_expected(t: AlgMatrix, ttilde: AlgMatrix, Z: NCPoly) -> CyclicTensor:
    """sum_ij t_ij(x)(tt_ji(x)Z - Z(x)tt_ji) + tt_ji(x)(Z(x)t_ij - t_ij(x)Z)
    + Z(x)(t_ij(x)tt_ji - tt_ji(x)t_ij)."""
    P = t.presentation
    n = t.rows
    terms = []
    for i in range(n):
        for j in range(n):
            a, b = t[i, j], ttilde[j, i]
            terms += [
                (ONE, (a, b, Z)), (-ONE, (a, Z, b)),
                (ONE, (b, Z, a)), (-ONE, (b, a, Z)),
                (ONE, (Z, a, b)), (-ONE, (Z, b, a)),
            ]
    return tensor_from_terms(P, 1, terms)
