"""Exact arithmetic in the coefficient field Q(q, p, s).

``q`` and ``p`` are Laurent variables (negative exponents are stored
directly), ``s`` is an ordinary polynomial variable.  A
:class:`ParamScalar` is a fully reduced fraction of two
:class:`LaurentPoly` values kept in a canonical form, so that equal field
elements always have identical representations.

Multivariate gcds are delegated to sympy's sparse polynomial rings; all
other arithmetic is done here on plain dictionaries of ``gmpy2.mpq``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from gmpy2 import mpq
from sympy.polys.domains import QQ as _SYMPY_QQ
from sympy.polys.rings import ring as _sympy_ring

__all__ = [
    "PARAMS",
    "LaurentPoly",
    "ParamScalar",
    "SpecializationError",
    "scalar_add",
    "scalar_mul",
    "scalar_inv",
    "scalar_conj",
    "scalar_specialize",
    "as_scalar",
]

PARAMS = ("q", "p", "s")
_INVERTIBLE = (True, True, False)

Exponent = Tuple[int, int, int]
Number = Union[int, mpq]

_SYMPY_RING = _sympy_ring("q,p,s", _SYMPY_QQ)[0]


class SpecializationError(ArithmeticError):
    """A substitution made a denominator vanish, or assigned 0 to q or p."""

    def __init__(self, message: str, assignment: Mapping[str, object]):
        super().__init__(message)
        self.assignment = dict(assignment)


def _deglex_key(exp: Exponent):
    return (sum(exp), exp)


class LaurentPoly:
    """Sparse polynomial in q^{+-1}, p^{+-1}, s with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponent, Number]] = None):
        clean: Dict[Exponent, mpq] = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    if exp[2] < 0:
                        raise ValueError("s-exponents must be non-negative")
                    clean[tuple(exp)] = mpq(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, mpq]) -> "LaurentPoly":
        # caller guarantees: no zero coefficients, valid exponents
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Number) -> "LaurentPoly":
        return cls._raw({(0, 0, 0): mpq(c)} if c else {})

    @classmethod
    def monomial(cls, exp: Exponent, c: Number = 1) -> "LaurentPoly":
        return cls({tuple(exp): c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0, 0, 0)) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading(self) -> Tuple[Exponent, mpq]:
        exp = max(self.terms, key=_deglex_key)
        return exp, self.terms[exp]

    def min_exponents(self) -> Exponent:
        exps = list(self.terms)
        return tuple(min(e[i] for e in exps) for i in range(3))

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = out.get(exp)
            if v is None:
                out[exp] = c
            else:
                v = v + c
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return LaurentPoly._raw(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self.terms, other.terms
        if len(a) == 1 and (0, 0, 0) in a:
            c = a[(0, 0, 0)]
            return other if c == 1 else LaurentPoly._raw({e: c * v for e, v in b.items()})
        if len(b) == 1 and (0, 0, 0) in b:
            c = b[(0, 0, 0)]
            return self if c == 1 else LaurentPoly._raw({e: c * v for e, v in a.items()})
        out: Dict[Exponent, mpq] = {}
        for (a0, a1, a2), c in a.items():
            for (b0, b1, b2), d in b.items():
                exp = (a0 + b0, a1 + b1, a2 + b2)
                v = out.get(exp)
                out[exp] = c * d if v is None else v + c * d
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    def scale(self, c: Number) -> "LaurentPoly":
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({e: v * c for e, v in self.terms.items()})

    def shift(self, exp: Exponent) -> "LaurentPoly":
        """Multiply by the monomial q^a p^b s^c."""
        a, b, c = exp
        return LaurentPoly({(e[0] + a, e[1] + b, e[2] + c): v for e, v in self.terms.items()})

    def conj(self) -> "LaurentPoly":
        return LaurentPoly._raw({(e[0], -e[1], e[2]): c for e, c in self.terms.items()})

    def substitute(self, values: Mapping[int, mpq]) -> "LaurentPoly":
        """Substitute rational values for the variables at the given indices."""
        out: Dict[Exponent, mpq] = {}
        for exp, c in self.terms.items():
            e = list(exp)
            for i, v in values.items():
                c = c * v ** e[i]
                e[i] = 0
            if c:
                key = tuple(e)
                out[key] = out.get(key, 0) + c
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    def to_sympy(self):
        return _SYMPY_RING.from_dict({e: _SYMPY_QQ.convert(c) for e, c in self.terms.items()})

    @classmethod
    def from_sympy(cls, poly) -> "LaurentPoly":
        return cls({tuple(e): mpq(c) for e, c in poly.items()})

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"


_ONE_POLY = LaurentPoly.constant(1)
_ZERO_POLY = LaurentPoly.constant(0)


@lru_cache(maxsize=65536)
def _cofactors(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    # both arguments are genuine polynomials without monomial content
    _, cn, cd = num.to_sympy().cofactors(den.to_sympy())
    return LaurentPoly.from_sympy(cn), LaurentPoly.from_sympy(cd)


def _strip_monomial(poly: LaurentPoly) -> Tuple[Exponent, LaurentPoly]:
    m = poly.min_exponents()
    if m == (0, 0, 0):
        return m, poly
    return m, LaurentPoly._raw({(e[0] - m[0], e[1] - m[1], e[2] - m[2]): c
                                for e, c in poly.terms.items()})


def _canonical(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in ParamScalar")
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if den.is_one():
        return num, den
    mn, n0 = _strip_monomial(num)
    md, d0 = _strip_monomial(den)
    if not d0.is_monomial():
        n0, d0 = _cofactors(n0, d0)
    ds = md[2] - mn[2]
    num_shift = (mn[0] - md[0], mn[1] - md[1], max(0, -ds))
    n1 = n0.shift(num_shift)
    d1 = d0.shift((0, 0, ds)) if ds > 0 else d0
    _, lc = d1.leading()
    if lc != 1:
        inv = 1 / lc
        n1 = n1.scale(inv)
        d1 = d1.scale(inv)
    return n1, d1


class ParamScalar:
    """Element of Q(q, p, s) in canonical reduced form.

    The denominator is a polynomial without q- or p-monomial content whose
    deglex-leading coefficient is 1; all Laurent monomials in q and p live
    in the numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _ONE_POLY):
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "ParamScalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Union[Number, "ParamScalar"]) -> "ParamScalar":
        if isinstance(c, ParamScalar):
            return c
        return cls._raw(LaurentPoly.constant(c), _ONE_POLY)

    @classmethod
    def param(cls, name: str, power: int = 1) -> "ParamScalar":
        idx = PARAMS.index(name)
        exp = [0, 0, 0]
        exp[idx] = power
        if power < 0 and not _INVERTIBLE[idx]:
            return cls(_ONE_POLY, LaurentPoly.monomial((0, 0, -power)))
        return cls._raw(LaurentPoly.monomial(tuple(exp)), _ONE_POLY)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def rational_value(self) -> Optional[mpq]:
        """The rational number this scalar equals, or None if it depends on a parameter."""
        if not self.den.is_one():
            return None
        if not self.num.terms:
            return mpq(0)
        if len(self.num.terms) == 1 and (0, 0, 0) in self.num.terms:
            return self.num.terms[(0, 0, 0)]
        return None

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        if not isinstance(other, ParamScalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        if self.den.is_one() and other.den.is_one():
            return ParamScalar._raw(self.num + other.num, _ONE_POLY)
        if self.den == other.den:
            return ParamScalar(self.num + other.num, self.den)
        return ParamScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        other = as_scalar(other)
        if self.den.is_one() and other.den.is_one():
            return ParamScalar._raw(self.num * other.num, _ONE_POLY)
        return ParamScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "ParamScalar":
        if self.is_zero():
            raise ZeroDivisionError("inversion of the zero scalar")
        return ParamScalar(self.den, self.num)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ParamScalar.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "ParamScalar":
        return ParamScalar(self.num.conj(), self.den.conj())

    def specialize(self, at: Mapping[str, Number]) -> "ParamScalar":
        values = {}
        for name, v in at.items():
            idx = PARAMS.index(name)
            v = mpq(v)
            if _INVERTIBLE[idx] and v == 0:
                raise SpecializationError(f"parameter {name} is invertible and cannot be 0", at)
            values[idx] = v
        if not values:
            return self
        den = self.den.substitute(values)
        if den.is_zero():
            raise SpecializationError(
                "denominator vanishes at " + ", ".join(f"{k}={v}" for k, v in at.items()), at)
        return ParamScalar(self.num.substitute(values), den)

    def __repr__(self):
        from .exprio import format_scalar

        return f"ParamScalar({format_scalar(self)!r})"

    def __str__(self):
        from .exprio import format_scalar

        return format_scalar(self)


ZERO = ParamScalar.const(0)
ONE = ParamScalar.const(1)


def as_scalar(x) -> ParamScalar:
    if isinstance(x, ParamScalar):
        return x
    if isinstance(x, (int, type(mpq(0)))):
        return ParamScalar._raw(LaurentPoly.constant(x), _ONE_POLY)
    try:
        from fractions import Fraction

        if isinstance(x, Fraction):
            return ParamScalar._raw(LaurentPoly.constant(mpq(x.numerator, x.denominator)), _ONE_POLY)
    except ImportError:  # pragma: no cover
        pass
    raise TypeError(f"cannot interpret {x!r} as a ParamScalar")


def scalar_add(a: ParamScalar, b: ParamScalar) -> ParamScalar:
    return as_scalar(a) + b


def scalar_mul(a: ParamScalar, b: ParamScalar) -> ParamScalar:
    return as_scalar(a) * b


def scalar_inv(a: ParamScalar) -> ParamScalar:
    """Field inverse; raises ZeroDivisionError on 0."""
    return as_scalar(a).inverse()


def scalar_conj(a: ParamScalar) -> ParamScalar:
    """Involution fixing q, s and the rationals, sending p to 1/p."""
    return as_scalar(a).conj()


def scalar_specialize(a: ParamScalar, at: Mapping[str, Number]) -> ParamScalar:
    """Substitute rational values for some of q, p, s.

    q and p must be sent to nonzero values; s may be sent to 0.
    """
    return as_scalar(a).specialize(at)


def product(values: Iterable[ParamScalar]) -> ParamScalar:
    out = ONE
    for v in values:
        out = out * v
    return out
