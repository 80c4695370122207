"""Command-line driver: ``ncsphere verify|chern|frt|repr|catalog|export``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or domain
error.  ``--json`` switches the output to the report schema.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Dict, Optional, Sequence

from . import chern as ch
from . import frt
from . import representation as rp
from .exprio import (ExprSyntaxError, format_element, format_scalar, parse_element, parse_matrix, parse_rmatrix,
                     parse_scalar)
from .matrix import (AlgMatrix, block_projector, is_idempotent, is_self_adjoint,
                     verify_det_condition)
from .ncpoly import NCPoly, PresentationError, confluence_check
from .presentations import (ConfluenceError, export_presentation, get_presentation, involution_failures,
                            list_catalog)
from .projectors import monopole_block_data, projector_e, projector_etilde, projector_f
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PROJECTORS = {
    "e": (projector_e, "sphere4"),
    "f": (projector_f, "sphere2"),
    "etilde": (projector_etilde, "sphere4_Z"),
}

VERIFY_TARGETS = ["sphere2", "sphere4", "sphere4_star", "sphere4_Z",
                  "projector_e", "projector_f", "projector_etilde", "block", "all"]


class UsageError(Exception):
    pass


def _witness_entries(P, failures, limit: int = 4) -> Optional[str]:
    if not failures:
        return None
    lines = [f"({i + 1},{j + 1}): {format_element(r, P)}" for i, j, r in failures[:limit]]
    if len(failures) > limit:
        lines.append(f"... {len(failures) - limit} more")
    return "\n".join(lines)


def _presentation_checks(report: Report, name: str):
    t0 = time.perf_counter()
    P = get_presentation(name)
    rep = confluence_check(P)
    wit = None
    if rep.failures:
        amb, a, b = rep.failures[0]
        wit = f"{P.format_word(amb.word)}: {format_element(a, P)} vs {format_element(b, P)}"
    report.add(f"{name}: confluence", rep.passed, f"{rep.checked} ambiguities resolved", wit,
               time.perf_counter() - t0)
    t0 = time.perf_counter()
    bad = [l for l, r in P.rules.items() if P.normal_form(NCPoly.word(l) - r)]
    report.add(f"{name}: defining relations reduce to 0", not bad, f"{len(P.rules)} relations",
               None if not bad else P.format_word(bad[0]), time.perf_counter() - t0)
    if P.has_involution():
        t0 = time.perf_counter()
        fails = involution_failures(P)
        report.add(f"{name}: involution consistent", not fails, "relations and g** = g",
                   None if not fails else f"{fails[0][0]}: {format_element(fails[0][1], P)}",
                   time.perf_counter() - t0)
    return P


def _projector_checks(report: Report, label: str, A: AlgMatrix, self_adjoint: bool = True):
    P = A.presentation
    t0 = time.perf_counter()
    rep = is_idempotent(A)
    report.add(f"{label}: idempotent", rep.passed, f"{A.rows}x{A.cols}",
               _witness_entries(P, rep.failures), time.perf_counter() - t0)
    if self_adjoint:
        t0 = time.perf_counter()
        rep = is_self_adjoint(A)
        report.add(f"{label}: self-adjoint", rep.passed, "", _witness_entries(P, rep.failures),
                   time.perf_counter() - t0)


def _matrix_arg(text: str, P, n: int) -> AlgMatrix:
    if text.strip() == "I":
        return AlgMatrix.identity(P, n)
    if text.strip() == "0":
        return AlgMatrix.zeros(P, n, n)
    return parse_matrix(text, P)


def cmd_verify(args) -> Report:
    report = Report("verify", {"target": args.target})
    targets = [args.target] if args.target != "all" else [t for t in VERIFY_TARGETS if t not in ("all", "block")]
    for target in targets:
        if target in ("sphere2", "sphere4", "sphere4_star", "sphere4_Z"):
            _presentation_checks(report, target)
        elif target == "projector_e":
            _presentation_checks(report, "sphere4")
            _projector_checks(report, "e", projector_e())
        elif target == "projector_f":
            _presentation_checks(report, "sphere2")
            _projector_checks(report, "f", projector_f())
        elif target == "projector_etilde":
            _presentation_checks(report, "sphere4_Z")
            et = projector_etilde()
            _projector_checks(report, "etilde", et)
            t, tt, z = monopole_block_data()
            t0 = time.perf_counter()
            det = verify_det_condition(t, tt, z)
            report.add("etilde: t*ttilde = ttilde*t = 1 - (2Z/(1+s^2))^2", det.passed, "",
                       _witness_entries(t.presentation, det.left.failures + det.right.failures),
                       time.perf_counter() - t0)
            t0 = time.perf_counter()
            same = (block_projector(t, tt, z) - et).is_zero()
            report.add("etilde: equals block projector of monopole data", same, "", None,
                       time.perf_counter() - t0)
        elif target == "block":
            P = get_presentation(args.presentation)
            report.params.update({"presentation": args.presentation, "t": args.t, "ttilde": args.ttilde,
                                  "z": args.z, "n": args.n})
            t = _matrix_arg(args.t, P, args.n)
            tt = _matrix_arg(args.ttilde, P, t.rows)
            z = parse_element(args.z, P)
            t0 = time.perf_counter()
            det = verify_det_condition(t, tt, z)
            report.add("block: det condition", det.passed, "ttilde*t = t*ttilde = 1 - Z^2",
                       _witness_entries(P, det.left.failures + det.right.failures), time.perf_counter() - t0)
            try:
                e = block_projector(t, tt, z)
            except PresentationError as exc:
                raise UsageError(str(exc))
            _projector_checks(report, "block", e, self_adjoint=P.has_involution())
    return report


def _parse_assignment(text: Optional[str]) -> Dict[str, object]:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"bad assignment {part!r}; expected name=value")
        k, v = (x.strip() for x in part.split("=", 1))
        if k not in ("q", "p", "s"):
            raise UsageError(f"unknown parameter {k!r}")
        val = parse_scalar(v).rational_value()
        if val is None:
            raise UsageError(f"value for {k} must be a rational number")
        out[k] = val
    return out


def cmd_chern(args) -> Report:
    if args.degree < 0 or args.degree > args.max_degree:
        raise UsageError(f"degree must be in [0, {args.max_degree}] (raise --max-degree)")
    builder, _ = PROJECTORS[args.projector]
    at = _parse_assignment(args.specialize)
    report = Report("chern", {"projector": args.projector, "degree": args.degree,
                              "specialize": {k: str(v) for k, v in at.items()}})
    A = builder()
    t0 = time.perf_counter()
    res = ch.chern_component(A, args.degree)
    T = res.tensor
    if at:
        T = ch.tensor_specialize(T, at)
    elapsed = time.perf_counter() - t0
    zero = T.is_zero() and res.scalar_part.is_zero()
    report.add("computed", True, f"{len(res.tensor.terms)} terms before specialization", None, elapsed)
    report.output["zero"] = zero
    report.output["scalar_part"] = format_scalar(res.scalar_part)
    report.output["tensor"] = T.format_lines() or ["0"]
    if args.expect_zero is not None:
        report.add("vanishes" if args.expect_zero else "nonzero", zero == args.expect_zero)
    if args.projector == "e" and args.degree == 1:
        closed = ch.sphere4_ch1_closed_form(A.presentation)
        if at:
            closed = ch.tensor_specialize(closed, at)
        lam = ch.proportional_to(T, closed)
        report.output["proportionality"] = "none" if lam is None else format_scalar(lam)
    return report


def cmd_frt(args) -> Report:
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    unknown = set(checks) - {"ybe", "relations", "det", "star", "sphere"}
    if unknown:
        raise UsageError(f"unknown checks: {', '.join(sorted(unknown))}")
    if args.rmatrix:
        try:
            with open(args.rmatrix, encoding="utf-8") as fh:
                R = parse_rmatrix(fh.read())
        except OSError as exc:
            raise UsageError(str(exc))
        source = args.rmatrix
    else:
        R = frt.standard_R(args.n)
        source = "standard"
    n = R.n
    if {"det", "sphere", "star"} & set(checks) and n > args.max_n:
        raise UsageError(f"symbolic det/star/sphere checks are capped at n={args.max_n} (raise --max-n)")
    report = Report("frt", {"n": n, "rmatrix": source, "checks": checks})
    order = ["ybe", "relations", "det", "star", "sphere"]
    Qa = None

    def algebra():
        nonlocal Qa
        if Qa is None:
            Qa = frt.make_quantum_matrix_algebra(R, check_ybe=False)
        return Qa

    for name in order:
        if name not in checks:
            continue
        t0 = time.perf_counter()
        try:
            if name == "ybe":
                rep = frt.ybe_check(R)
                wit = None
                if rep.mismatches:
                    i, j, a, b = rep.mismatches[0]
                    wit = f"entry ({i},{j}): R12R13R23 = {format_scalar(a)}, R23R13R12 = {format_scalar(b)}"
                report.add("ybe", rep.passed, f"{len(rep.mismatches)} mismatching entries", wit,
                           time.perf_counter() - t0)
            elif name == "relations":
                A = algebra()
                P = A.presentation
                bad = [r for r in frt.rtt_relations(R) if P.normal_form(r)]
                report.add("relations: confluent RTT algebra", P.confluent, f"{len(P.rules)} rules")
                report.add("relations: all RTT relations reduce to 0", not bad,
                           f"{n ** 4} relations", None if not bad else format_element(bad[0], P),
                           time.perf_counter() - t0)
            elif name == "det":
                A = algebra()
                d = frt.quantum_det(A)
                report.add("det: t*ttilde = D*I", d.t_ttilde, "", "\n".join(d.witnesses) or None,
                           time.perf_counter() - t0)
                report.add("det: ttilde*t = D*I", d.ttilde_t)
                report.add("det: D central", d.central)
                report.output["D"] = format_element(d.D, A.presentation)
                report.output["D_matches_row_expansion"] = d.matches_row_expansion
            elif name == "star":
                st = frt.star_quantum_matrices(algebra())
                wit = None if st.consistent else f"{st.failures[0][0]}"
                report.add("star: involution consistent", st.consistent, "; ".join(st.notes), wit,
                           time.perf_counter() - t0)
            elif name == "sphere":
                S = frt.sphere_from_frt(algebra())
                report.add("sphere: block projector idempotent", S.idempotent, f"{2 * n}x{2 * n}", None,
                           time.perf_counter() - t0)
                if S.self_adjoint is not None:
                    report.add("sphere: block projector self-adjoint", S.self_adjoint)
        except (ConfluenceError, PresentationError) as exc:
            wit = None
            rep = getattr(exc, "report", None)
            if rep is not None and rep.failures:
                amb, a, b = rep.failures[0]
                wit = f"ambiguity {amb.word}: {len(a)} vs {len(b)} terms"
            report.add(name, False, str(exc), wit, time.perf_counter() - t0)
    return report


def cmd_repr(args) -> Report:
    try:
        P = rp.ReprParams(q=args.q, s=args.s, c=complex(args.c_re, args.c_im), theta=args.theta,
                          sign=args.sign, K=args.K, L=args.L)
    except rp.DomainError as exc:
        raise UsageError(str(exc))
    report = Report("repr", {"q": args.q, "s": args.s, "c_re": args.c_re, "c_im": args.c_im,
                             "theta": args.theta, "sign": args.sign, "K": args.K, "L": args.L})
    t0 = time.perf_counter()
    res = rp.relation_residuals(P)
    el = time.perf_counter() - t0
    for name, val in res.items():
        report.add(f"residual {name}", val < rp.RESIDUAL_TOL, f"{val:.3e}", None, el / len(res))
    om0 = rp.omega(0, P.alpha, P.s, P.c, P.q)
    report.add("omega_0 = 0", om0 < rp.SCALAR_TOL, f"{om0:.3e}")
    a_p, a_m = rp.alpha_pm(P.s, P.c)
    vieta = max(abs(a * a - (1 - P.s ** 2) * a + (abs(P.c) ** 2 - P.s ** 2)) for a in (a_p, a_m))
    report.add("alpha roots satisfy their quadratic", vieta < rp.SCALAR_TOL, f"{vieta:.3e}")
    spec = rp.zeta_spectrum(P)
    ok = spec.min() >= -P.s ** 2 - rp.RESIDUAL_TOL and spec.max() <= 1 + rp.RESIDUAL_TOL
    report.add("zeta spectrum in [-s^2, 1]", ok, f"[{spec.min():.6g}, {spec.max():.6g}]")
    radic = rp.radicands(P.s, P.c, P.q, P.K)
    low = min(radic["+"][1:].min(), radic["-"][1:].min())
    report.add("radicands non-negative", low >= -rp.SCALAR_TOL, f"min {low:.3e}")
    t0 = time.perf_counter()
    proj = rp.check_projector_numeric(P)
    report.add("projector e under pi", proj.passed,
               f"|e^2-e| = {proj.idempotence:.3e}, |e-e*| = {proj.self_adjointness:.3e}", None,
               time.perf_counter() - t0)
    report.output["alpha"] = {"+": a_p, "-": a_m}
    if args.csv:
        rp.write_csv(P, args.csv)
        report.output["csv"] = args.csv
    return report


def cmd_catalog(args) -> Report:
    report = Report("catalog")
    for entry in list_catalog():
        report.add(entry.name, bool(entry.presentation.confluent), str(entry.metadata["constraints"]))
    return report


def cmd_export(args) -> str:
    return export_presentation(get_presentation(args.name))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncsphere", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit the JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run presentation and projector checks")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--t", default="I", help="block: matrix t ('I', '0' or [[...]])")
    v.add_argument("--ttilde", default="I", help="block: matrix ttilde")
    v.add_argument("--z", default="0", help="block: central element Z")
    v.add_argument("--n", type=int, default=1, help="block: size used for 'I' and '0'")
    v.add_argument("--presentation", default="sphere4_Z", help="block: catalog algebra for entries")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("chern", help="Chern character components of a catalog projector")
    c.add_argument("--projector", choices=sorted(PROJECTORS), required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--specialize", default=None, help="e.g. q=1,s=1/2")
    c.add_argument("--max-degree", type=int, default=2)
    ez = c.add_mutually_exclusive_group()
    ez.add_argument("--expect-zero", dest="expect_zero", action="store_true", default=None)
    ez.add_argument("--expect-nonzero", dest="expect_zero", action="store_false")
    c.set_defaults(func=cmd_chern)

    f = sub.add_parser("frt", help="FRT construction checks")
    f.add_argument("--n", type=int, default=2)
    f.add_argument("--rmatrix", default=None, help="R-matrix file (overrides --n)")
    f.add_argument("--check", default="ybe,relations,det,star,sphere")
    f.add_argument("--max-n", type=int, default=3)
    f.set_defaults(func=cmd_frt)

    r = sub.add_parser("repr", help="numerical check of the truncated representations")
    r.add_argument("--q", type=float, default=0.5)
    r.add_argument("--s", type=float, default=1.0)
    r.add_argument("--c-re", type=float, default=0.3)
    r.add_argument("--c-im", type=float, default=0.0)
    r.add_argument("--theta", type=float, default=0.1)
    r.add_argument("--sign", choices=["+", "-"], default="+")
    r.add_argument("--K", type=int, default=30)
    r.add_argument("--L", type=int, default=10)
    r.add_argument("--csv", default=None)
    r.set_defaults(func=cmd_repr)

    sub.add_parser("catalog", help="list catalog presentations").set_defaults(func=cmd_catalog)
    e = sub.add_parser("export", help="print a catalog presentation as JSON")
    e.add_argument("name")
    e.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (UsageError, ExprSyntaxError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(result, str):
        print(result)
        return EXIT_OK
    print(result.dumps() if args.json else result.render())
    return EXIT_OK if result.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
