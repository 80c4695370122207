"""Catalog of the quantum 2- and 4-sphere algebras as confluent presentations.

Every catalog entry is oriented with a deglex order, checked for confluence
(diamond lemma) and for consistency of its involution before it is handed
out.  :func:`extend_with_Z` adjoins a central square root of a central
element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .ncpoly import (
    NCPoly,
    Presentation,
    PresentationError,
    RewriteRule,
    TermOrder,
    confluence_check,
    orient,
)

__all__ = [
    "CatalogEntry",
    "ConfluenceError",
    "build_presentation",
    "involution_failures",
    "make_sphere2",
    "make_sphere4",
    "make_sphere4_star",
    "make_sphere4_Z",
    "extend_with_Z",
    "list_catalog",
    "get_presentation",
    "presentation_to_dict",
    "presentation_from_dict",
    "export_presentation",
]

SCHEMA = "ncsphere.presentation/1"


class ConfluenceError(PresentationError):
    """A presentation that was required to be confluent is not."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


def _free(names: Sequence[str], precedence: Sequence[str]) -> Presentation:
    order = TermOrder.from_precedence(len(names), [list(names).index(n) for n in precedence])
    return Presentation(names, order, [])


def _parse_free(P: Presentation, text: str) -> NCPoly:
    from .exprio import parse_element

    return parse_element(text, P)


def build_presentation(
    name: str,
    names: Sequence[str],
    precedence: Sequence[str],
    relations: Sequence[str],
    involution: Optional[Mapping[str, str]] = None,
    aliases: Optional[Mapping[str, str]] = None,
    require_confluent: bool = True,
) -> Presentation:
    """Orient textual relations ``lhs = rhs`` (or ``expr`` meaning ``expr = 0``).

    Right-hand sides are inter-reduced against the other rules.  When
    ``require_confluent`` is set a :class:`ConfluenceError` is raised with the
    failing ambiguities.
    """
    free = _free(names, precedence)
    rules = []
    for text in relations:
        if "=" in text:
            lhs, rhs = text.split("=")
            rel = _parse_free(free, lhs) - _parse_free(free, rhs)
        else:
            rel = _parse_free(free, text)
        rules.append(orient(free.order, rel))
    draft = Presentation(names, free.order, rules, name=name)
    rules = [RewriteRule(r.lhs, draft.normal_form(r.rhs)) for r in rules]
    inv = None
    if involution is not None:
        inv = {free.index(g): _parse_free(free, img) for g, img in involution.items()}
    P = Presentation(names, free.order, rules, inv, aliases=aliases, name=name)
    if inv is not None:
        # images are reduced in the final algebra
        P.involution = {g: P.normal_form(v) for g, v in P.involution.items()}
    report = confluence_check(P)
    if require_confluent and not report.passed:
        raise ConfluenceError(f"presentation {name} is not confluent", report)
    return P


def involution_failures(P: Presentation) -> List[Tuple[str, NCPoly]]:
    """Relations (and generators) on which the involution table is inconsistent.

    Checks that every rule ``lhs -> rhs`` maps to ``0`` under ``*`` and that
    ``g** = g`` for each generator.  Returns ``(label, residual)`` pairs.
    """
    out = []
    for lhs, rhs in P.rules.items():
        rel = NCPoly.word(lhs) - rhs
        res = P.star(rel)
        if res:
            out.append((f"rule {P.format_word(lhs)}", res))
    for g in range(P.ngens):
        res = P.star(P.star(NCPoly.gen(g))) - NCPoly.gen(g)
        if res:
            out.append((f"{P.names[g]}** - {P.names[g]}", res))
    return out


def make_sphere2() -> Presentation:
    """The quantum 2-sphere on x, y, z with precedence y > x > z."""
    return build_presentation(
        "sphere2",
        ["x", "y", "z"],
        ["y", "x", "z"],
        [
            "z*x = q^2*x*z",
            "y*z = q^2*z*y",
            "x*y = (z-1)*(z+s^2)",
            "y*x = (q^2*z-1)*(q^2*z+s^2)",
        ],
        involution={"x": "-y", "y": "-x", "z": "z"},
    )


_S4_ALIASES = {"ξ": "xi", "η": "eta", "ζ": "zeta"}

_S4_RELATIONS = [
    "zeta*xi = q^2*xi*zeta",
    "eta*zeta = q^2*zeta*eta",
    "xi*U = p*U*xi",
    "V*xi = p*xi*V",
    "eta*V = p*V*eta",
    "U*eta = p*eta*U",
    "U*V = V*U",
    "U*zeta = zeta*U",
    "V*zeta = zeta*V",
    "xi*eta = (zeta-1)*(zeta+s^2) + U*V",
    "eta*xi = (q^2*zeta-1)*(q^2*zeta+s^2) + U*V",
]


def make_sphere4() -> Presentation:
    """The 4-sphere algebra on xi, eta, zeta, U, V; eta > xi > U > V > zeta."""
    return build_presentation(
        "sphere4",
        ["xi", "eta", "zeta", "U", "V"],
        ["eta", "xi", "U", "V", "zeta"],
        _S4_RELATIONS,
        involution={"xi": "-eta", "eta": "-xi", "zeta": "zeta", "U": "V", "V": "U"},
        aliases=_S4_ALIASES,
    )


def make_sphere4_star() -> Presentation:
    """*-presentation on xi, xi_star, zeta, U, U_star.

    The starred symbols are independent generators.  Besides the listed
    relations, their images under the involution are included so that the
    ideal is *-closed.
    """
    return build_presentation(
        "sphere4_star",
        ["xi", "xi_star", "zeta", "U", "U_star"],
        ["xi_star", "xi", "U", "U_star", "zeta"],
        [
            "zeta*xi = q^2*xi*zeta",
            "xi*U = p*U*xi",
            "U_star*xi = p*xi*U_star",
            "U*U_star = U_star*U",
            "U*zeta = zeta*U",
            "xi*xi_star + (zeta-1)*(zeta+s^2) + U*U_star",
            "xi_star*xi + (q^2*zeta-1)*(q^2*zeta+s^2) + U*U_star",
            # *-images of the non-self-adjoint relations
            "xi_star*zeta = q^2*zeta*xi_star",
            "U_star*xi_star = p^-1*xi_star*U_star",
            "xi_star*U = p^-1*U*xi_star",
            "zeta*U_star = U_star*zeta",
        ],
        involution={"xi": "xi_star", "xi_star": "xi", "zeta": "zeta", "U": "U_star", "U_star": "U"},
        aliases=_S4_ALIASES,
    )


def central_witness(P: Presentation, elem: NCPoly) -> Optional[Tuple[str, NCPoly]]:
    """First generator g with nf(g*elem - elem*g) != 0, or None if elem is central."""
    elem = P.normal_form(elem)
    for g in range(P.ngens):
        gp = NCPoly.gen(g)
        comm = P.mul(gp, elem) - P.mul(elem, gp)
        if comm:
            return P.names[g], comm
    return None


def extend_with_Z(
    P: Presentation,
    square_of: NCPoly,
    below: Optional[str] = None,
    name: str = "Z",
    require_confluent: bool = True,
) -> Presentation:
    """Adjoin a central generator Z with Z^2 = square_of.

    Z is placed in the precedence directly below the generator ``below``
    (on top when ``below`` is None).  Raises PresentationError if
    ``square_of`` is not central and ConfluenceError if the extension fails
    the diamond-lemma check.
    """
    wit = central_witness(P, square_of)
    if wit is not None:
        raise PresentationError(f"{name}^2 must be central; fails against generator {wit[0]}")
    n = P.ngens
    names = list(P.names) + [name]
    desc = sorted(range(n), key=lambda g: P.order.rank[g], reverse=True)
    if below is None:
        desc = [n] + desc
    else:
        at = desc.index(P.index(below))
        desc = desc[: at + 1] + [n] + desc[at + 1:]
    order = TermOrder.from_precedence(n + 1, desc)
    z = NCPoly.gen(n)
    rules = P.rule_list()
    for g in range(n):
        gp = NCPoly.gen(g)
        rules.append(orient(order, gp * z - z * gp))
    rules.append(orient(order, z * z - P.normal_form(square_of)))
    draft = Presentation(names, order, rules)
    rules = [RewriteRule(r.lhs, draft.normal_form(r.rhs)) for r in rules]
    inv = None
    if P.involution is not None:
        inv = dict(P.involution)
        inv[n] = z
    ext = Presentation(names, order, rules, inv, aliases=P.aliases, name=(P.name + "_" + name) if P.name else "")
    if inv is not None:
        ext.involution = {g: ext.normal_form(v) for g, v in ext.involution.items()}
    report = confluence_check(ext)
    if require_confluent and not report.passed:
        raise ConfluenceError(f"extension of {P.name or 'presentation'} by {name} is not confluent", report)
    return ext


def make_sphere4_Z() -> Presentation:
    """The 4-sphere extended by a central self-adjoint Z with Z^2 = UV."""
    P = make_sphere4()
    return extend_with_Z(P, P.gen("U") * P.gen("V"), below="V")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    presentation: Presentation
    metadata: Dict[str, object] = field(default_factory=dict)


_BUILDERS = {
    "sphere2": (make_sphere2, "quantum 2-sphere; *-algebra when q^2, s^2 real; C*-range -1<q<1, 0<=s<=1"),
    "sphere4": (make_sphere4, "quantum 4-sphere; *-algebra when q^2, s^2 real and |p| = 1"),
    "sphere4_star": (make_sphere4_star, "*-presentation on xi, zeta, U and their adjoints; -1<q<1, 0<s<=1, p = exp(2 pi i theta)"),
    "sphere4_Z": (make_sphere4_Z, "quantum 4-sphere with a central self-adjoint Z, Z^2 = UV"),
}


@lru_cache(maxsize=None)
def _catalog() -> Dict[str, CatalogEntry]:
    out = {}
    for key, (builder, doc) in _BUILDERS.items():
        P = builder()
        bad = involution_failures(P)
        if bad:
            raise PresentationError(f"involution of {key} is inconsistent: {bad[0][0]}")
        out[key] = CatalogEntry(key, P, {"constraints": doc, "involution": P.has_involution(),
                                         "confluent": P.confluent})
    return out


def get_presentation(name: str) -> Presentation:
    try:
        return _catalog()[name].presentation
    except KeyError:
        raise KeyError(f"unknown catalog presentation {name!r}; known: {', '.join(_BUILDERS)}") from None


def list_catalog() -> List[CatalogEntry]:
    return list(_catalog().values())


# -- export ---------------------------------------------------------------

def presentation_to_dict(P: Presentation) -> dict:
    from .exprio import format_element, format_word

    desc = sorted(range(P.ngens), key=lambda g: P.order.rank[g], reverse=True)
    return {
        "schema": SCHEMA,
        "name": P.name,
        "generators": list(P.names),
        "precedence": [P.names[g] for g in desc],
        "rules": [
            {"lhs": format_word(l, P.names), "rhs": format_element(r, P)}
            for l, r in sorted(P.rules.items(), key=lambda kv: P.order.key(kv[0]))
        ],
        "involution": None if P.involution is None else {
            P.names[g]: format_element(v, P) for g, v in P.involution.items()
        },
        "confluent": P.confluent,
    }


def export_presentation(P: Presentation) -> str:
    return json.dumps(presentation_to_dict(P), indent=2, ensure_ascii=False)


def presentation_from_dict(data: Mapping) -> Presentation:
    """Rebuild a presentation from :func:`presentation_to_dict` output.

    Rules are taken as given (lhs already oriented) and confluence is
    re-checked rather than trusted.
    """
    if data.get("schema") != SCHEMA:
        raise PresentationError(f"unsupported schema {data.get('schema')!r}")
    names = data["generators"]
    free = _free(names, data["precedence"])
    rules = [RewriteRule(tuple(_single_word(free, r["lhs"])), _parse_free(free, r["rhs"])) for r in data["rules"]]
    inv = None
    if data.get("involution") is not None:
        inv = {free.index(g): _parse_free(free, v) for g, v in data["involution"].items()}
    P = Presentation(names, free.order, rules, inv, name=data.get("name", ""))
    confluence_check(P)
    return P


def _single_word(free: Presentation, text: str):
    poly = _parse_free(free, text)
    if len(poly.terms) != 1:
        raise PresentationError(f"rule lhs {text!r} is not a single word")
    (w, c), = poly.terms.items()
    if not c.is_one():
        raise PresentationError(f"rule lhs {text!r} must have coefficient 1")
    return w
