"""Text format for scalars, algebra elements, matrices and R-matrix files.

Grammar (``*`` is mandatory between factors; juxtaposition is an error)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' ['-'] int)?
    atom   := int | param | generator | '(' expr ')'
    matrix := [term '*'] '[' row (',' row)* ']'
    row    := '[' expr (',' expr)* ']'

``param`` is one of ``q``, ``p``, ``s``.  Division and negative powers are
only accepted on scalar (generator-free) operands.  Formatting emits words
in deglex-descending order and reparses to the same value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .coeff import PARAMS, LaurentPoly, ParamScalar, as_scalar
from .ncpoly import NCPoly, Presentation, Word

__all__ = [
    "ExprSyntaxError",
    "parse_element",
    "parse_scalar",
    "parse_matrix",
    "parse_rmatrix",
    "format_scalar",
    "format_element",
    "format_word",
    "format_matrix",
    "format_rmatrix",
]

UNICODE_ALIASES = {
    "ξ": "xi",
    "η": "eta",
    "ζ": "zeta",
}


class ExprSyntaxError(ValueError):
    """Lexical, syntax or resolution error.

    ``position`` is a UTF-8 byte offset into the source; ``column`` is the
    character index used to draw the caret.
    """

    def __init__(self, message: str, column: int, text: str = ""):
        self.message = message
        self.column = column
        self.text = text
        self.position = len(text[:column].encode("utf-8")) if text else column
        super().__init__(self._render())

    def _render(self) -> str:
        if not self.text:
            return f"{self.message} (at byte {self.position})"
        line_start = self.text.rfind("\n", 0, self.column) + 1
        line_end = self.text.find("\n", self.column)
        if line_end < 0:
            line_end = len(self.text)
        line = self.text[line_start:line_end]
        caret = " " * (self.column - line_start) + "^"
        return f"{self.message} (at byte {self.position})\n  {line}\n  {caret}"


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[^\W\d]\w*)
  | (?P<op>[-+*/^(),\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[i]!r}", i, text)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), i))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, presentation: Optional[Presentation]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.P = presentation

    # -- token helpers ----------------------------------------------------
    def peek(self, offset: int = 0) -> _Tok:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> _Tok:
        tok = self.peek()
        if tok.value != value or tok.kind not in ("op",):
            self.error(f"expected {value!r}", tok)
        return self.take()

    def error(self, message: str, tok: _Tok):
        raise ExprSyntaxError(message, tok.pos, self.text)

    def at_op(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.value == value

    # -- grammar ----------------------------------------------------------
    def expr(self) -> NCPoly:
        val = self.term()
        while self.at_op("+") or self.at_op("-"):
            op = self.take().value
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self, stop_before_bracket: bool = False) -> NCPoly:
        val = self.factor()
        while self.at_op("*") or self.at_op("/"):
            if stop_before_bracket and self.at_op("*") and self.peek(1).value == "[":
                break
            tok = self.take()
            rhs_tok = self.peek()
            rhs = self.factor()
            if tok.value == "*":
                val = val * rhs
            else:
                c = _as_scalar_value(rhs)
                if c is None:
                    self.error("division by an expression containing generators", rhs_tok)
                if c.is_zero():
                    self.error("division by zero", rhs_tok)
                val = val.scale(c.inverse())
        return val

    def factor(self) -> NCPoly:
        if self.at_op("-"):
            self.take()
            return -self.factor()
        start = self.peek()
        base = self.atom()
        if self.at_op("^"):
            self.take()
            sign = 1
            if self.at_op("-"):
                self.take()
                sign = -1
            tok = self.peek()
            if tok.kind != "int":
                self.error("expected an integer exponent", tok)
            self.take()
            n = sign * int(tok.value)
            c = _as_scalar_value(base)
            if c is not None:
                if n < 0 and c.is_zero():
                    self.error("negative power of zero", start)
                return NCPoly.scalar(c ** n)
            if n < 0:
                self.error("negative power of a generator", start)
            return base ** n
        return base

    def atom(self) -> NCPoly:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return NCPoly.scalar(int(tok.value))
        if tok.kind == "name":
            self.take()
            return self.resolve(tok)
        if self.at_op("("):
            self.take()
            val = self.expr()
            self.expect(")")
            return val
        if tok.kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {tok.value!r}", tok)

    def resolve(self, tok: _Tok) -> NCPoly:
        name = tok.value
        if name in PARAMS:
            return NCPoly.scalar(ParamScalar.param(name))
        if self.P is None:
            self.error(f"unknown symbol {name!r} (no generators in scalar context)", tok)
        name = UNICODE_ALIASES.get(name, name)
        try:
            return self.P.gen(name)
        except KeyError:
            self.error(f"unknown generator {tok.value!r}", tok)

    def end(self):
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind in ("name", "int", "op") and tok.value not in ")],":
                self.error(f"unexpected {tok.value!r} (is a '*' missing?)", tok)
            self.error(f"unexpected {tok.value!r}", tok)

    def matrix(self) -> Tuple[Optional[NCPoly], List[List[NCPoly]], List[_Tok]]:
        prefactor = None
        if not self.at_op("["):
            prefactor = self.term(stop_before_bracket=True)
            self.expect("*")
        self.expect("[")
        rows = []
        row_toks = []
        while True:
            row_toks.append(self.peek())
            self.expect("[")
            row = [self.expr()]
            while self.at_op(","):
                self.take()
                row.append(self.expr())
            self.expect("]")
            rows.append(row)
            if self.at_op(","):
                self.take()
                continue
            break
        self.expect("]")
        return prefactor, rows, row_toks


def _as_scalar_value(a: NCPoly) -> Optional[ParamScalar]:
    if all(len(w) == 0 for w in a.terms):
        return a.constant_term()
    return None


def parse_element(text: str, P: Presentation) -> NCPoly:
    """Parse an element of P's algebra and return its normal form."""
    parser = _Parser(text, P)
    val = parser.expr()
    parser.end()
    return P.normal_form(val)


def parse_scalar(text: str) -> ParamScalar:
    parser = _Parser(text, None)
    val = parser.expr()
    parser.end()
    return _as_scalar_value(val)


def parse_matrix(text: str, P: Presentation):
    """Parse ``[[a, b], [c, d]]`` (optionally ``scalar * [[...]]``) into an AlgMatrix."""
    from .matrix import AlgMatrix

    parser = _Parser(text, P)
    prefactor, rows, row_toks = parser.matrix()
    parser.end()
    width = len(rows[0])
    for row, tok in zip(rows, row_toks):
        if len(row) != width:
            raise ExprSyntaxError(
                f"ragged matrix: row has {len(row)} entries, expected {width}", tok.pos, text)
    if prefactor is not None:
        c = _as_scalar_value(prefactor)
        if c is None:
            raise ExprSyntaxError("matrix prefactor must be a scalar", 0, text)
        rows = [[e.scale(c) for e in row] for row in rows]
    return AlgMatrix.from_rows(P, rows)


def parse_rmatrix(text: str):
    """Parse an R-matrix file: a dimension line ``n`` then n^4 scalars, row-major.

    Scalars are separated by commas and/or newlines; ``#`` starts a comment.
    """
    from .frt import RMatrix

    lines = []
    offsets = []
    pos = 0
    for raw in text.splitlines(keepends=True):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append(body)
            offsets.append(pos)
        pos += len(raw)
    if not lines:
        raise ExprSyntaxError("empty R-matrix file", 0, text)
    head = lines[0].strip()
    if not head.isdigit() or int(head) < 1:
        raise ExprSyntaxError("first line must be the dimension n >= 1", offsets[0], text)
    n = int(head)
    entries = []
    for line, off in zip(lines[1:], offsets[1:]):
        col = 0
        for chunk in line.split(","):
            if chunk.strip():
                try:
                    entries.append(parse_scalar(chunk))
                except ExprSyntaxError as exc:
                    raise ExprSyntaxError(exc.message, off + col + exc.column, text) from None
            col += len(chunk) + 1
    if len(entries) != n ** 4:
        raise ExprSyntaxError(f"expected {n ** 4} entries for n={n}, found {len(entries)}", len(text), text)
    m = n * n
    return RMatrix(n, tuple(tuple(entries[r * m:(r + 1) * m]) for r in range(m)))


# -- formatting -----------------------------------------------------------

def _format_rational(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_monomial(exp) -> str:
    parts = []
    for name, e in zip(PARAMS, exp):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_laurent(poly: LaurentPoly) -> str:
    if poly.is_zero():
        return "0"
    out = []
    for exp in sorted(poly.terms, key=lambda e: (sum(e), e), reverse=True):
        c = poly.terms[exp]
        mono = _format_monomial(exp)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_rational(a)}*{mono}"
        if out:
            out.append(("-" if neg else "+") + body)
        else:
            out.append(("-" if neg else "") + body)
    return "".join(out)


def format_scalar(c: ParamScalar) -> str:
    c = as_scalar(c)
    num = _format_laurent(c.num)
    if c.den.is_one():
        return num
    if len(c.num.terms) > 1:
        num = f"({num})"
    return f"{num}/({_format_laurent(c.den)})"


def _is_plain_negative(c: ParamScalar) -> bool:
    return c.den.is_one() and len(c.num.terms) == 1 and next(iter(c.num.terms.values())) < 0


def _is_atomic(c: ParamScalar) -> bool:
    # safe as the left operand of '*' without parentheses
    if c.den.is_one():
        return len(c.num.terms) == 1 and next(iter(c.num.terms.values())) > 0
    return len(c.num.terms) > 1 or next(iter(c.num.terms.values())) > 0


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = j - i
        parts.append(names[w[i]] if n == 1 else f"{names[w[i]]}^{n}")
        i = j
    return "*".join(parts)


def format_element(a: NCPoly, P: Presentation) -> str:
    """Deterministic rendering, words in deglex-descending order."""
    if a.is_zero():
        return "0"
    out = []
    for w in sorted(a.terms, key=P.order.key, reverse=True):
        c = a.terms[w]
        neg = _is_plain_negative(c)
        if neg:
            c = -c
        if not w:
            body = format_scalar(c)
            if not _is_atomic(c) and not (c.den.is_one() and len(c.num.terms) == 1):
                body = f"({body})"
        else:
            word = format_word(w, P.names)
            if c.is_one():
                body = word
            elif _is_atomic(c):
                body = f"{format_scalar(c)}*{word}"
            else:
                body = f"({format_scalar(c)})*{word}"
        if out:
            out.append((" - " if neg else " + ") + body)
        else:
            out.append(("-" if neg else "") + body)
    return "".join(out)


def format_matrix(A) -> str:
    rows = []
    for row in A.entries:
        rows.append("[" + ", ".join(format_element(e, A.presentation) for e in row) + "]")
    return "[" + ",\n ".join(rows) + "]"


def format_rmatrix(R) -> str:
    lines = [str(R.n)]
    for row in R.entries:
        lines.append(", ".join(format_scalar(c) for c in row))
    return "\n".join(lines) + "\n"
