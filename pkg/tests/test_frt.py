import pytest

from ncsphere.coeff import ParamScalar
from ncsphere.exprio import format_element, parse_element
from ncsphere.frt import (RMatrix, make_quantum_matrix_algebra, quantum_det, rtt_relations, sphere_from_frt,
                          standard_R, star_quantum_matrices, tilde_matrix, ybe_check)
from ncsphere.ncpoly import confluence_check
from ncsphere.presentations import ConfluenceError

q = ParamScalar.param("q")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_standard_R_solves_ybe(n):
    assert ybe_check(standard_R(n)).passed


def test_perturbed_R_fails_ybe():
    R = standard_R(2)
    entries = [list(r) for r in R.entries]
    entries[1][2] = entries[1][2] + 1
    rep = ybe_check(RMatrix(2, tuple(tuple(r) for r in entries)))
    assert not rep.passed and rep.mismatches


def test_standard_R_is_identity_at_q_one():
    for n in (2, 3):
        assert standard_R(n).specialize({"q": 1}).is_identity()


def test_quantum_2x2_matrices():
    A = make_quantum_matrix_algebra(standard_R(2))
    P = A.presentation
    assert len(P.rules) == 6
    assert confluence_check(P).passed
    assert parse_element("t12*t11", P) == parse_element("q^-1*t11*t12", P)
    assert parse_element("t22*t11 - t11*t22", P) == parse_element("(q^-1-q)*t12*t21", P)
    for rel in rtt_relations(standard_R(2)):
        assert P.normal_form(rel).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_quantum_determinant(n):
    A = make_quantum_matrix_algebra(standard_R(n))
    d = quantum_det(A)
    assert d.passed and d.central and d.matches_row_expansion
    if n == 2:
        assert format_element(d.D, A.presentation) == "-q*t12*t21 + t11*t22"


def test_tilde_matrix_2x2():
    A = make_quantum_matrix_algebra(standard_R(2))
    P = A.presentation
    tt = tilde_matrix(A)
    assert tt[0, 0] == P.gen("t22")
    assert tt[0, 1] == P.gen("t12").scale(-q.inverse())
    assert tt[1, 0] == P.gen("t21").scale(-q)


def test_star_structure():
    assert star_quantum_matrices(make_quantum_matrix_algebra(standard_R(2))).consistent
    assert not star_quantum_matrices(make_quantum_matrix_algebra(standard_R(3))).consistent


def test_sphere_from_frt_n2():
    S = sphere_from_frt(make_quantum_matrix_algebra(standard_R(2)))
    assert S.projector.shape == (4, 4)
    assert S.idempotent and S.self_adjoint


def test_sphere_from_frt_n1_is_idempotent():
    S = sphere_from_frt(make_quantum_matrix_algebra(standard_R(1)))
    assert S.idempotent


def test_sphere_from_frt_n3_needs_completion():
    with pytest.raises(ConfluenceError):
        sphere_from_frt(make_quantum_matrix_algebra(standard_R(3)))


def test_adjoint_of_t_is_ttilde_on_the_frt_sphere():
    from ncsphere.matrix import mat_adjoint, verify_det_condition

    S = sphere_from_frt(make_quantum_matrix_algebra(standard_R(2)))
    P = S.projector.presentation
    assert mat_adjoint(S.t) == S.ttilde
    assert verify_det_condition(S.t, S.ttilde, P.gen("Z")).passed
