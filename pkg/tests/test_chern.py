import itertools

import pytest

from ncsphere.chern import (CyclicTensor, bar_project, block_ch1_expected, chern_component, proportional_to,
                            sphere4_ch1_closed_form, tensor_from_terms, tensor_specialize)
from ncsphere.coeff import ParamScalar
from ncsphere.frt import make_quantum_matrix_algebra, sphere_from_frt, standard_R
from ncsphere.ncpoly import NCPoly
from ncsphere.projectors import projector_e, projector_etilde, projector_f


def brute_force_chern(A, n):
    """Direct sum over all index cycles, as an independent oracle."""
    P = A.presentation
    size = A.rows
    half = NCPoly.scalar(ParamScalar.const(1) / 2)
    terms = []
    for idx in itertools.product(range(size), repeat=2 * n + 1):
        if n == 0:
            terms.append((1, [bar_project(A[idx[0], idx[0]])]))
            continue
        first = A[idx[0], idx[1]] - (half if idx[0] == idx[1] else NCPoly())
        rest = [bar_project(A[idx[k], idx[(k + 1) % (2 * n + 1)]]) for k in range(1, 2 * n + 1)]
        terms.append((1, [first] + rest))
    return tensor_from_terms(P, n, terms)


@pytest.mark.parametrize("builder, n", [(projector_e, 0), (projector_e, 1), (projector_f, 1),
                                        (projector_etilde, 1)])
def test_transfer_matrix_matches_brute_force(builder, n):
    A = builder()
    assert chern_component(A, n).tensor == brute_force_chern(A, n)


def test_ch0_of_e_vanishes_including_scalar_part():
    res = chern_component(projector_e(), 0)
    assert res.vanishes


@pytest.mark.parametrize("n", [0, 1, 2])
def test_ch_of_etilde_vanishes(n):
    assert chern_component(projector_etilde(), n).vanishes


def test_ch1_of_e_matches_closed_form_exactly():
    T = chern_component(projector_e(), 1).tensor
    assert len(T.terms) == 6
    P = T.presentation
    assert T.letters() == {P.index("zeta"), P.index("U"), P.index("V")}
    assert all(len(w) == 1 for k in T.terms for w in k)
    assert proportional_to(T, sphere4_ch1_closed_form(P)) == ParamScalar.const(1)


@pytest.mark.parametrize("qv", [1, -1])
def test_ch1_of_e_vanishes_at_classical_q(qv):
    T = chern_component(projector_e(), 1).tensor
    assert tensor_specialize(T, {"q": qv}).is_zero()
    assert not tensor_specialize(T, {"q": 2}).is_zero()


def test_ch1_of_f_is_nonzero():
    assert not chern_component(projector_f(), 1).tensor.is_zero()


def test_frt_block_ch1_proportional_to_general_formula():
    S = sphere_from_frt(make_quantum_matrix_algebra(standard_R(2)))
    Z = S.projector[0, 0].scale(2) - NCPoly.scalar(1)
    T = chern_component(S.projector, 1).tensor
    lam = proportional_to(T, block_ch1_expected(S.t, S.ttilde, Z))
    assert lam == ParamScalar.const(1) / 8


def test_proportional_to_edge_cases():
    P = projector_e().presentation
    z = CyclicTensor(1, {}, P)
    x = sphere4_ch1_closed_form(P)
    assert proportional_to(z, z) == ParamScalar.const(1)
    assert proportional_to(z, x) is None
    assert proportional_to(x.scale(3), x) == ParamScalar.const(3)
    with pytest.raises(ValueError):
        CyclicTensor(1, {((0,),): ParamScalar.const(1)}, P)


def test_json_and_lines():
    T = sphere4_ch1_closed_form()
    data = T.to_json()
    assert data["degree"] == 1 and len(data["terms"]) == 6
    assert all(" ⊗ " in line for line in T.format_lines())
