"""Acceptance suite: eleven criteria, each timed against its budget.

Every criterion prints a single ``[PASS]``/``[FAIL]`` line (bypassing pytest's
capture) and then asserts.  Run ``python3 tests/test_acceptance.py`` for the
lines alone.
"""

import cmath
import math
import random
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from ncsphere.chern import chern_component, proportional_to, sphere4_ch1_closed_form, tensor_specialize
from ncsphere.coeff import ZERO, ParamScalar
from ncsphere.exprio import format_element, format_scalar, parse_element, parse_scalar
from ncsphere.frt import (make_quantum_matrix_algebra, quantum_det, sphere_from_frt, standard_R, ybe_check)
from ncsphere.matrix import block_projector, is_idempotent, is_self_adjoint, verify_det_condition
from ncsphere.ncpoly import NCPoly, confluence_check, specialize_poly
from ncsphere.presentations import get_presentation, list_catalog
from ncsphere.projectors import monopole_block_data, projector_e, projector_etilde, projector_f
from ncsphere.representation import (ReprParams, alpha_pm, omega, positivity_scan,
                                     relation_residuals, zeta_spectrum)

from randgen import commutative_block_instance, rand_element, rand_scalar


@contextmanager
def criterion(number: int, title: str, budget: float, request=None):
    """Time the block; print one PASS/FAIL line; fail on error or overrun."""
    state = {"note": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        exc = sys.exc_info()[1]
        ok = exc is None and elapsed < budget
        note = state["note"]
        if exc is not None:
            note = f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        elif elapsed >= budget:
            note = f"over budget ({budget:.0f}s)"
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({elapsed:.2f}s)"
        if note:
            line += f" -- {note}"
        capman = request.config.pluginmanager.getplugin("capturemanager") if request else None
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print("\n" + line)
        else:
            print(line)
    assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s > {budget}s"


# ---------------------------------------------------------------------------

_RELATIONS = {
    "sphere2": [
        "z*x - q^2*x*z",
        "y*z - q^2*z*y",
        "x*y - (z-1)*(z+s^2)",
        "y*x - (q^2*z-1)*(q^2*z+s^2)",
    ],
    "sphere4": [
        "zeta*xi - q^2*xi*zeta",
        "eta*zeta - q^2*zeta*eta",
        "xi*U - p*U*xi",
        "V*xi - p*xi*V",
        "eta*V - p*V*eta",
        "U*eta - p*eta*U",
        "U*V - V*U",
        "U*zeta - zeta*U",
        "V*zeta - zeta*V",
        "xi*eta - (zeta-1)*(zeta+s^2) - U*V",
        "eta*xi - (q^2*zeta-1)*(q^2*zeta+s^2) - U*V",
    ],
    "sphere4_star": [
        "zeta*xi - q^2*xi*zeta",
        "xi*U - p*U*xi",
        "U_star*xi - p*xi*U_star",
        "U*U_star - U_star*U",
        "U*zeta - zeta*U",
        "xi*xi_star + (zeta-1)*(zeta+s^2) + U*U_star",
        "xi_star*xi + (q^2*zeta-1)*(q^2*zeta+s^2) + U*U_star",
    ],
}


def test_c01_relations_and_confluence(request):
    with criterion(1, "defining relations reduce to 0; catalog confluent", 5, request) as st:
        for name, rels in _RELATIONS.items():
            P = get_presentation(name)
            for text in rels:
                assert parse_element(text, P).is_zero(), f"{name}: {text}"
        checked = 0
        for entry in list_catalog():
            rep = confluence_check(entry.presentation)
            assert rep.passed, entry.name
            checked += rep.checked
        st["note"] = f"{sum(map(len, _RELATIONS.values()))} relations, {checked} ambiguities"


def test_c02_projector_e(request):
    with criterion(2, "e^2 = e and e* = e over the 4-sphere algebra", 10, request):
        e = projector_e()
        assert is_idempotent(e).passed
        assert is_self_adjoint(e).passed


def test_c03_projector_f(request):
    with criterion(3, "f^2 = f over the 2-sphere algebra", 2, request):
        assert is_idempotent(projector_f()).passed


def test_c04_Z_extension(request):
    with criterion(4, "etilde^2 = etilde, etilde* = etilde, det condition", 10, request):
        et = projector_etilde()
        assert is_idempotent(et).passed
        assert is_self_adjoint(et).passed
        t, tt, z = monopole_block_data()
        assert verify_det_condition(t, tt, z).passed
        assert block_projector(t, tt, z) == et


def test_c05_chern_vanishing(request):
    with criterion(5, "ch0(e) = 0; ch_k(etilde) = 0 for k = 0, 1, 2", 60, request):
        assert chern_component(projector_e(), 0).vanishes
        et = projector_etilde()
        for k in (0, 1, 2):
            assert chern_component(et, k).vanishes, k


def test_c06_chern_ch1(request):
    with criterion(6, "ch1(e) nonzero, zero at q = +-1, support {zeta,U,V}", 30, request) as st:
        e = projector_e()
        P = e.presentation
        T = chern_component(e, 1).tensor
        assert not T.is_zero()
        for qv in (1, -1):
            assert tensor_specialize(T, {"q": qv}).is_zero()
        allowed = {P.index("zeta"), P.index("U"), P.index("V")}
        assert all(len(k) == 3 and all(len(w) == 1 and w[0] in allowed for w in k) for k in T.terms)
        lam = proportional_to(T, sphere4_ch1_closed_form(P))
        assert lam is not None
        st["note"] = f"{len(T.terms)} terms, ch1 = {format_scalar(lam)} x closed form"


def test_c07_block_sufficiency(request):
    with criterion(7, "block projector idempotent iff det condition (50+2 / 10)", 30, request):
        rng = random.Random(20240607)
        for _ in range(50):
            t, tt, z = commutative_block_instance(rng)
            assert verify_det_condition(t, tt, z).passed
            assert is_idempotent(block_projector(t, tt, z)).passed
        t, tt, z = monopole_block_data()
        assert is_idempotent(block_projector(t, tt, z)).passed
        S = sphere_from_frt(make_quantum_matrix_algebra(standard_R(2)))
        Zf = S.projector[0, 0].scale(2) - NCPoly.scalar(1)
        assert verify_det_condition(S.t, S.ttilde, Zf).passed
        assert is_idempotent(block_projector(S.t, S.ttilde, Zf)).passed
        for _ in range(10):
            t, tt, z = commutative_block_instance(rng, violate=True)
            assert not verify_det_condition(t, tt, z).passed
            assert not is_idempotent(block_projector(t, tt, z)).passed


def test_c08_frt(request):
    with criterion(8, "FRT: YBE n<=4, confluent A(R), det n=2,3, sphere n=2", 120, request):
        for n in (2, 3, 4):
            assert ybe_check(standard_R(n)).passed, n
        for n in (2, 3):
            A = make_quantum_matrix_algebra(standard_R(n))
            assert confluence_check(A.presentation).passed
            d = quantum_det(A)
            assert d.t_ttilde and d.ttilde_t and d.central, n
        S = sphere_from_frt(make_quantum_matrix_algebra(standard_R(2)))
        assert S.projector.shape == (4, 4)
        assert S.idempotent and S.self_adjoint


def test_c09_classical_limits(request):
    with criterion(9, "commutators vanish at q = p = 1; R(q=1) = identity", 5, request):
        cases = [("sphere2", [{"q": 1}, {"q": 1, "s": 0}]),
                 ("sphere4", [{"q": 1, "p": 1}, {"q": 1, "p": 1, "s": 0}])]
        for name, points in cases:
            P = get_presentation(name)
            gens = P.gens()
            for at in points:
                for i in range(len(gens)):
                    for j in range(i + 1, len(gens)):
                        comm = P.normal_form(gens[i] * gens[j] - gens[j] * gens[i])
                        assert specialize_poly(comm, at).is_zero(), (name, at, i, j)
        assert standard_R(2).specialize({"q": 1}).is_identity()


def test_c10_representations(request):
    with criterion(10, "truncated representations: residuals, spectrum, positivity", 10, request) as st:
        P = ReprParams(q=0.5, s=1.0, c=0.3, theta=0.1, K=30, L=10)
        worst = 0.0
        for sign in ("+", "-"):
            Ps = ReprParams(q=0.5, s=1.0, c=0.3, theta=0.1, sign=sign, K=30, L=10)
            res = relation_residuals(Ps)
            worst = max(worst, max(res.values()))
            assert max(res.values()) < 1e-10, res
            assert omega(0, Ps.alpha, Ps.s, Ps.c, Ps.q) < 1e-12
            spec = zeta_spectrum(Ps)
            assert spec.min() >= -Ps.s ** 2 - 1e-10 and spec.max() <= 1 + 1e-10
        for a in alpha_pm(P.s, P.c):
            assert abs(a * a - (1 - P.s ** 2) * a + (abs(P.c) ** 2 - P.s ** 2)) < 1e-12
        rng = np.random.default_rng(10)
        admissible, inadmissible = [], []
        while len(admissible) < 20:
            s = rng.uniform(0.05, 1.0)
            admissible.append((s, rng.uniform(0, s) * cmath.exp(2j * math.pi * rng.uniform())))
        while len(inadmissible) < 5:
            s = rng.uniform(0.05, 1.0)
            r = rng.uniform(s * 1.01, (1 + s * s) / 2)
            if r > s:
                inadmissible.append((s, r * cmath.exp(2j * math.pi * rng.uniform())))
        rep = positivity_scan(0.5, 30, admissible, inadmissible)
        assert rep.admissible_min >= -1e-12
        assert all(m < 0 for m in rep.inadmissible_mins)
        st["note"] = f"max residual {worst:.1e}"


def test_c11_property_suites(request):
    with criterion(11, "round-trip, field axioms, nf properties (1000 cases each)", 60, request):
        rng = random.Random(11)
        S2, S4 = get_presentation("sphere2"), get_presentation("sphere4")
        # parser round-trip
        for k in range(1000):
            c = rand_scalar(rng)
            assert parse_scalar(format_scalar(c)) == c
            P = S2 if k % 2 else S4
            a = rand_element(rng, P)
            assert parse_element(format_element(a, P), P) == a
        # field axioms
        for _ in range(1000):
            a, b, c = rand_scalar(rng), rand_scalar(rng), rand_scalar(rng)
            assert a + b == b + a and a * b == b * a
            assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + ZERO == a and a - a == ZERO
            if b:
                assert (a / b) * b == a and b * b.inverse() == ParamScalar.const(1)
        # normal form properties
        Z4 = get_presentation("sphere4_Z")
        for k in range(1000):
            P = (S2, S4, Z4)[k % 3]
            a, b, c = (rand_element(rng, P, reduce=False) for _ in range(3))
            lam = rand_scalar(rng, rational_function=False)
            na, nb, nc = P.normal_form(a), P.normal_form(b), P.normal_form(c)
            assert P.normal_form(na) == na
            assert P.normal_form(a.scale(lam) + b) == na.scale(lam) + nb
            assert P.mul(P.mul(na, nb), nc) == P.mul(na, P.mul(nb, nc))
            assert P.normal_form(a * b) == P.mul(na, nb)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
