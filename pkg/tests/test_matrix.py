import random

import pytest

from ncsphere.matrix import (AlgMatrix, DimensionError, block_projector, is_idempotent, is_self_adjoint,
                             mat_adjoint, verify_det_condition)
from ncsphere.ncpoly import PresentationError
from ncsphere.presentations import get_presentation
from ncsphere.projectors import (monopole_block_data, projector_e, projector_etilde, projector_f)

from randgen import commutative_block_instance


def test_projector_e():
    e = projector_e()
    assert e.shape == (4, 4)
    assert is_idempotent(e).passed
    assert is_self_adjoint(e).passed


def test_projector_f():
    f = projector_f()
    assert is_idempotent(f).passed
    assert is_self_adjoint(f).passed


def test_projector_etilde_and_block_data():
    et = projector_etilde()
    assert is_idempotent(et).passed and is_self_adjoint(et).passed
    t, tt, z = monopole_block_data()
    assert verify_det_condition(t, tt, z).passed
    assert block_projector(t, tt, z) == et


def test_failure_report_lists_residual_entries():
    e = projector_e().scale(2)
    rep = is_idempotent(e)
    assert not rep.passed
    i, j, res = rep.failures[0]
    assert not res.is_zero()


def test_adjoint_is_involutive():
    e = projector_e()
    P = e.presentation
    m = AlgMatrix.from_rows(P, [[P.gen("xi"), P.gen("U")], [P.gen("zeta"), P.gen("eta")]])
    assert mat_adjoint(mat_adjoint(m)) == m
    assert mat_adjoint(m)[0, 1] == P.gen("zeta")


def test_block_requires_central_Z_and_square_shapes():
    P = get_presentation("sphere4")
    one = AlgMatrix.identity(P, 1)
    with pytest.raises(PresentationError):
        block_projector(one, one, P.gen("xi"))
    with pytest.raises(DimensionError):
        block_projector(one, AlgMatrix.identity(P, 2), P.gen("zeta").scale(0))


def test_random_commutative_blocks():
    rng = random.Random(21)
    for _ in range(15):
        t, tt, z = commutative_block_instance(rng)
        assert verify_det_condition(t, tt, z).passed
        assert is_idempotent(block_projector(t, tt, z)).passed
    for _ in range(5):
        t, tt, z = commutative_block_instance(rng, violate=True)
        assert not verify_det_condition(t, tt, z).passed
        assert not is_idempotent(block_projector(t, tt, z)).passed
