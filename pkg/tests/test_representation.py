import math

import numpy as np
import pytest

from ncsphere.representation import (RESIDUAL_TOL, DomainError, ReprParams, alpha_pm, bottom_level_residual,
                                     build_operators, check_projector_numeric, omega, positivity_scan,
                                     relation_residuals, write_csv, zeta_spectrum)

SMALL = dict(K=12, L=4)


@pytest.mark.parametrize("sign", ["+", "-"])
def test_relations_hold_on_interior(sign):
    P = ReprParams(sign=sign, **SMALL)
    res = relation_residuals(P)
    assert len(res) == 7
    assert max(res.values()) < RESIDUAL_TOL


def test_relations_with_complex_c():
    P = ReprParams(q=-0.7, s=0.8, c=0.3 + 0.4j, theta=0.37, **SMALL)
    assert max(relation_residuals(P).values()) < RESIDUAL_TOL


def test_literal_reading_breaks_at_bottom_level():
    P = ReprParams(**SMALL)
    assert bottom_level_residual(P, "adopted") < RESIDUAL_TOL
    assert bottom_level_residual(P, "literal") > 1.0


def test_alpha_roots_and_omega0():
    for s, c in [(1.0, 0.3), (0.5, 0.5), (0.9, 0.1j)]:
        for a in alpha_pm(s, c):
            assert abs(a * a - (1 - s * s) * a + abs(c) ** 2 - s * s) < 1e-12
            assert omega(0, a, s, c, 0.5) < 1e-12


def test_operators_are_adjoint_pairs():
    ops = build_operators(ReprParams(**SMALL))
    assert np.allclose(ops["U*"].matrix, ops["U"].matrix.conj().T)
    assert np.allclose(ops["xi*"].matrix, ops["xi"].matrix.conj().T)


def test_projector_numeric():
    assert check_projector_numeric(ReprParams(**SMALL)).passed


def test_spectrum_bounds():
    P = ReprParams(sign="-", **SMALL)
    spec = zeta_spectrum(P)
    assert spec.min() >= -P.s ** 2 - 1e-12 and spec.max() <= 1 + 1e-12


@pytest.mark.parametrize("kw", [dict(q=1.0), dict(q=0.0), dict(s=0.0), dict(s=1.5), dict(c=1.2),
                                dict(theta=1.0), dict(sign="0"), dict(K=1)])
def test_domain_errors(kw):
    with pytest.raises(DomainError):
        ReprParams(**kw)


def test_positivity_scan_separates_admissible_from_inadmissible():
    rep = positivity_scan(0.5, 30, [(1.0, 0.3), (0.4, 0.2j)], [(0.5, 0.6), (0.5, 0.7)])
    assert rep.passed
    assert rep.inadmissible_mins[1] == float("-inf")


def test_csv(tmp_path):
    out = tmp_path / "spec.csv"
    write_csv(ReprParams(**SMALL), str(out))
    rows = out.read_text().splitlines()
    assert rows[0] == "k,zeta_eigenvalue,omega_k"
    assert len(rows) == SMALL["K"] + 1
    assert math.isclose(float(rows[2].split(",")[2]), omega(1, ReprParams().alpha, 1.0, 0.3, 0.5))
