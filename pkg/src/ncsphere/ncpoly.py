"""Free noncommutative algebra over Q(q, p, s) with oriented rewrite rules.

Words are tuples of generator indices.  A :class:`Presentation` bundles the
generator names, a deglex :class:`TermOrder`, the rewrite rules and an
optional involution table; :meth:`Presentation.normal_form` reduces
modulo the rules and :func:`confluence_check` runs the diamond-lemma test
on every overlap and inclusion ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .coeff import ONE, ZERO, ParamScalar, as_scalar

Word = Tuple[int, ...]

__all__ = [
    "Word",
    "NCPoly",
    "TermOrder",
    "RewriteRule",
    "Presentation",
    "Ambiguity",
    "ConfluenceReport",
    "PresentationError",
    "word_compare",
    "poly_mul",
    "normal_form",
    "overlap_ambiguities",
    "confluence_check",
    "apply_involution",
    "specialize_poly",
]


class PresentationError(ValueError):
    """Malformed presentation data (non-decreasing rule, missing involution, ...)."""


class NCPoly:
    """Finite linear combination of words with ParamScalar coefficients.

    Products are free-algebra products (concatenation); use
    :meth:`Presentation.normal_form` to reduce.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Word, object]] = None):
        clean: Dict[Word, ParamScalar] = {}
        if terms:
            for w, c in terms.items():
                c = as_scalar(c)
                if c:
                    w = tuple(w)
                    prev = clean.get(w)
                    if prev is None:
                        clean[w] = c
                    else:
                        c = prev + c
                        if c:
                            clean[w] = c
                        else:
                            del clean[w]
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Word, ParamScalar]) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def scalar(cls, c) -> "NCPoly":
        c = as_scalar(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def word(cls, w: Sequence[int], c=ONE) -> "NCPoly":
        return cls({tuple(w): c})

    @classmethod
    def gen(cls, i: int) -> "NCPoly":
        return cls._raw({(i,): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self) -> ParamScalar:
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def generators_used(self) -> set:
        return {g for w in self.terms for g in w}

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        try:
            return self.terms == NCPoly.scalar(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return NCPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return NCPoly.scalar(other) - self

    def scale(self, c) -> "NCPoly":
        c = as_scalar(c)
        if not c:
            return NCPoly._raw({})
        if c.is_one():
            return self
        out = {}
        for w, v in self.terms.items():
            v = v * c
            if v:
                out[w] = v
        return NCPoly._raw(out)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "NCPoly":
        if n < 0:
            raise ValueError("negative power of an algebra element")
        out = NCPoly.scalar(ONE)
        for _ in range(n):
            out = out * self
        return out

    def map_coefficients(self, fn) -> "NCPoly":
        out = {}
        for w, c in self.terms.items():
            c = fn(c)
            if c:
                out[w] = c
        return NCPoly._raw(out)

    def __iter__(self) -> Iterator[Tuple[Word, ParamScalar]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"NCPoly({self.terms!r})"


def _accumulate(out: Dict[Word, ParamScalar], terms: Mapping[Word, ParamScalar], c: ParamScalar = None):
    """out += c * terms, in place, pruning zeros."""
    for w, v in terms.items():
        if c is not None:
            v = v * c
        prev = out.get(w)
        if prev is None:
            if v:
                out[w] = v
        else:
            v = prev + v
            if v:
                out[w] = v
            else:
                del out[w]


def poly_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    """Free-algebra product: bilinear extension of word concatenation (not reduced)."""
    out: Dict[Word, ParamScalar] = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = u + v
            x = c * d
            prev = out.get(w)
            if prev is not None:
                x = prev + x
            if x:
                out[w] = x
            elif prev is not None:
                del out[w]
    return NCPoly._raw(out)


@dataclass(frozen=True)
class TermOrder:
    """Deglex order: degree first, then lexicographic by generator precedence.

    ``rank[g]`` is the precedence of generator ``g``; larger rank means larger.
    """

    rank: Tuple[int, ...]

    @classmethod
    def from_precedence(cls, n_gens: int, descending: Sequence[int]) -> "TermOrder":
        """Build from generator indices listed from greatest to smallest."""
        if sorted(descending) != list(range(n_gens)):
            raise PresentationError("precedence must list every generator exactly once")
        rank = [0] * n_gens
        for r, g in enumerate(reversed(descending)):
            rank[g] = r
        return cls(tuple(rank))

    def key(self, w: Word):
        rank = self.rank
        return (len(w), tuple(rank[g] for g in w))

    def compare(self, u: Word, v: Word) -> int:
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)

    def leading_word(self, a: NCPoly) -> Word:
        return max(a.terms, key=self.key)


def word_compare(order: TermOrder, u: Word, v: Word) -> int:
    """-1, 0 or 1 as u is less than, equal to or greater than v."""
    return order.compare(tuple(u), tuple(v))


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCPoly


@dataclass(frozen=True)
class Ambiguity:
    """A word reducible by two rules.

    ``kind`` is ``"overlap"`` (suffix of ``first.lhs`` equals a prefix of
    ``second.lhs``) or ``"inclusion"`` (``second.lhs`` sits inside
    ``first.lhs`` at ``position``).
    """

    first: RewriteRule
    second: RewriteRule
    word: Word
    kind: str
    position: int


@dataclass
class ConfluenceReport:
    passed: bool
    checked: int
    failures: List[Tuple[Ambiguity, NCPoly, NCPoly]] = field(default_factory=list)


class Presentation:
    """Generators, deglex order, rewrite rules and an optional involution.

    The instance is treated as immutable once built; the only mutable state
    is the confluence flag (set by :func:`confluence_check`) and internal
    reduction caches.
    """

    def __init__(
        self,
        names: Sequence[str],
        order: TermOrder,
        rules: Iterable[RewriteRule],
        involution: Optional[Mapping[int, NCPoly]] = None,
        aliases: Optional[Mapping[str, str]] = None,
        name: str = "",
    ):
        self.names = tuple(names)
        self.order = order
        self.name = name
        self.aliases = dict(aliases or {})
        if len(order.rank) != len(self.names):
            raise PresentationError("term order and generator list disagree in size")
        self.rules: Dict[Word, NCPoly] = {}
        for rule in rules:
            if rule.lhs in self.rules:
                raise PresentationError(f"duplicate rule for {self.format_word(rule.lhs)}")
            key = order.key(rule.lhs)
            for w in rule.rhs.terms:
                if order.key(w) >= key:
                    raise PresentationError(
                        f"rule {self.format_word(rule.lhs)} -> ... is not order-decreasing "
                        f"(contains {self.format_word(w)})"
                    )
            self.rules[rule.lhs] = rule.rhs
        self._lengths = sorted({len(l) for l in self.rules}, reverse=True)
        self.involution = None if involution is None else {g: involution[g] for g in range(len(self.names))}
        self.confluent = False
        self._append_cache: Dict[Tuple[Word, int], Dict[Word, ParamScalar]] = {}

    # -- bookkeeping ------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        name = self.aliases.get(name, name)
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> NCPoly:
        return NCPoly.gen(self.index(name))

    def gens(self) -> List[NCPoly]:
        return [NCPoly.gen(i) for i in range(self.ngens)]

    def rule_list(self) -> List[RewriteRule]:
        return [RewriteRule(l, r) for l, r in self.rules.items()]

    def format_word(self, w: Word) -> str:
        from .exprio import format_word

        return format_word(w, self.names)

    def __repr__(self):
        return f"<Presentation {self.name or '?'}: {', '.join(self.names)}; {len(self.rules)} rules>"

    # -- reduction --------------------------------------------------------
    def _append(self, u: Word, g: int) -> Dict[Word, ParamScalar]:
        """Normal form of u*g for a normal word u."""
        key = (u, g)
        hit = self._append_cache.get(key)
        if hit is not None:
            return hit
        w = u + (g,)
        rules = self.rules
        result = None
        for length in self._lengths:
            if length <= len(w):
                tail = w[len(w) - length:]
                rhs = rules.get(tail)
                if rhs is not None:
                    prefix = w[: len(w) - length]
                    result = {}
                    for word, c in rhs.terms.items():
                        _accumulate(result, self._extend({prefix: ONE}, word), c)
                    break
        if result is None:
            result = {w: ONE}
        self._append_cache[key] = result
        return result

    def _extend(self, base: Dict[Word, ParamScalar], letters: Word) -> Dict[Word, ParamScalar]:
        """Normal form of base*letters for a reduced base."""
        cur = base
        for g in letters:
            nxt: Dict[Word, ParamScalar] = {}
            for u, c in cur.items():
                _accumulate(nxt, self._append(u, g), c)
            cur = nxt
        return cur

    def normal_form(self, a: NCPoly) -> NCPoly:
        out: Dict[Word, ParamScalar] = {}
        for w, c in a.terms.items():
            _accumulate(out, self._extend({(): ONE}, w), c)
        return NCPoly._raw(out)

    def nf_word(self, w: Sequence[int]) -> NCPoly:
        return NCPoly._raw(dict(self._extend({(): ONE}, tuple(w))))

    def mul(self, a: NCPoly, b: NCPoly) -> NCPoly:
        """Reduced product of two reduced elements."""
        out: Dict[Word, ParamScalar] = {}
        for v, d in b.terms.items():
            for u, c in a.terms.items():
                _accumulate(out, self._extend({u: ONE}, v), c * d)
        return NCPoly._raw(out)

    def is_reduced(self, a: NCPoly) -> bool:
        for w in a.terms:
            for length in self._lengths:
                for i in range(len(w) - length + 1):
                    if w[i:i + length] in self.rules:
                        return False
        return True

    def rewrite_step(self, a: NCPoly) -> Optional[NCPoly]:
        """One rewrite on the deglex-greatest reducible word, at its leftmost redex.

        Returns None when ``a`` is irreducible.  Used as a termination witness
        and for traces; :meth:`normal_form` uses a cached equivalent strategy.
        """
        for w in sorted(a.terms, key=self.order.key, reverse=True):
            for i in range(len(w)):
                for length in sorted(self._lengths):
                    sub = w[i:i + length]
                    if len(sub) == length and sub in self.rules:
                        c = a.terms[w]
                        rest = dict(a.terms)
                        del rest[w]
                        repl = poly_mul(poly_mul(NCPoly.word(w[:i]), self.rules[sub]), NCPoly.word(w[i + length:]))
                        _accumulate(rest, repl.terms, c)
                        return NCPoly._raw(rest)
        return None

    # -- involution -------------------------------------------------------
    def has_involution(self) -> bool:
        return self.involution is not None

    def star(self, a: NCPoly) -> NCPoly:
        if self.involution is None:
            raise PresentationError(f"presentation {self.name or '?'} has no involution")
        inv = self.involution
        out: Dict[Word, ParamScalar] = {}
        for w, c in a.terms.items():
            cur: Dict[Word, ParamScalar] = {(): c.conj()}
            for g in reversed(w):
                nxt: Dict[Word, ParamScalar] = {}
                for u, d in cur.items():
                    for v, e in inv[g].terms.items():
                        _accumulate(nxt, self._extend({u: ONE}, v), d * e)
                cur = nxt
            _accumulate(out, cur)
        return NCPoly._raw(out)


def normal_form(P: Presentation, a: NCPoly) -> NCPoly:
    return P.normal_form(a)


def overlap_ambiguities(P: Presentation) -> List[Ambiguity]:
    """All overlap and inclusion ambiguities between rule left-hand sides."""
    rules = P.rule_list()
    found: List[Ambiguity] = []
    for r1 in rules:
        l1 = r1.lhs
        for r2 in rules:
            l2 = r2.lhs
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    found.append(Ambiguity(r1, r2, l1 + l2[k:], "overlap", len(l1) - k))
            if r1 is not r2 and len(l2) <= len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2:
                        found.append(Ambiguity(r1, r2, l1, "inclusion", i))
    return found


def _resolve(P: Presentation, amb: Ambiguity) -> Tuple[NCPoly, NCPoly]:
    w = amb.word
    l1, l2 = amb.first.lhs, amb.second.lhs
    left = poly_mul(amb.first.rhs, NCPoly.word(w[len(l1):]))
    i = amb.position
    right = poly_mul(poly_mul(NCPoly.word(w[:i]), amb.second.rhs), NCPoly.word(w[i + len(l2):]))
    return P.normal_form(left), P.normal_form(right)


def confluence_check(P: Presentation) -> ConfluenceReport:
    """Reduce every ambiguity both ways; sets ``P.confluent`` on success."""
    ambs = overlap_ambiguities(P)
    report = ConfluenceReport(passed=True, checked=len(ambs))
    for amb in ambs:
        a, b = _resolve(P, amb)
        if a != b:
            report.failures.append((amb, a, b))
    report.passed = not report.failures
    if report.passed:
        P.confluent = True
    return report


def apply_involution(P: Presentation, a: NCPoly) -> NCPoly:
    """Antilinear antihomomorphism given by P's involution table, then reduced."""
    return P.star(a)


def specialize_poly(a: NCPoly, at: Mapping[str, object]) -> NCPoly:
    """Coefficient-wise specialization of parameters (no re-reduction)."""
    return a.map_coefficients(lambda c: c.specialize(at))


def orient(order: TermOrder, relation: NCPoly) -> RewriteRule:
    """Turn ``relation = 0`` into a rule rewriting its leading word."""
    if relation.is_zero():
        raise PresentationError("cannot orient the zero relation")
    lead = order.leading_word(relation)
    c = relation.terms[lead]
    inv = c.inverse()
    rhs = {w: -(v * inv) for w, v in relation.terms.items() if w != lead}
    return RewriteRule(lead, NCPoly._raw(rhs))
