import pytest
from conftest import QQ_FIELD, mat

from exact.matrices import is_zero, same
from tdpair.leonard import construct_leonard
from tdpair.models import CheckId
from tdpair.rfl import check_rfl_ranks, check_rfl_relations, compute_rfl, rfl_coefficients
from tdpair.suite import run_checks
from tdpair.system import compute_relation_parameters


def test_raising_and_lowering_parts(kraw1):
    system, _ = kraw1
    rfl = compute_rfl(system)
    assert same(rfl.R, mat([[0, 0], [1, 0]]))
    assert same(rfl.L, mat([[0, 1], [0, 0]]))
    assert is_zero(rfl.F)


def test_parts_sum_to_a(kraw3):
    system, _ = kraw3
    rfl = compute_rfl(system)
    assert same(rfl.R + rfl.F + rfl.L, system.A)


def test_coefficients_and_indeterminates(kraw3):
    system, _ = kraw3
    coeffs = rfl_coefficients(system, compute_relation_parameters(system))
    assert coeffs.eplus[3] is None
    assert coeffs.eminus[1] is None
    half = system.field.scalar("-1/2")
    assert all(v == half for v in coeffs.gplus.values())
    assert all(v == half for v in coeffs.gminus.values())


def test_relations_hold(kraw2, kraw3, kraw3_gf):
    for system, _ in (kraw2, kraw3, kraw3_gf):
        residuals = check_rfl_relations(system)
        assert residuals
        assert all(r.is_zero for r in residuals), [r.label for r in residuals if not r.is_zero]


def test_relation_labels_cover_each_family(kraw3):
    labels = {r.label for r in check_rfl_relations(kraw3[0])}
    assert labels == {"g:L", "g:R", "e:L", "e:R", "F:LR"}


def test_rank_table(kraw3):
    system, _ = kraw3
    table = check_rfl_ranks(system)
    assert all(entry.ok for entry in table)
    # six rank kinds per pair i <= j
    assert len(table) == 6 * 10
    assert {entry.expected for entry in table} == {1}


@pytest.mark.parametrize(
    "theta, thetastar, table",
    [
        ([0, 1, 3], [0, 2, 3], "gplus"),
        ([0, 2, 3], [0, 1, 3], "gminus"),
    ],
)
def test_vanishing_outer_coefficient_is_allowed(theta, thetastar, table):
    # theta*_{d+1} = theta*_d (resp. theta*_{-1} = theta*_0) kills the coefficient at i = 2
    system, _ = construct_leonard(2, theta, thetastar, [1, 1], QQ_FIELD)
    coeffs = rfl_coefficients(system, compute_relation_parameters(system))
    assert getattr(coeffs, table)[2] == 0
    assert all(r.is_zero for r in check_rfl_relations(system))

    suite = run_checks(system)
    assert suite.passed
    assert suite.outcomes[CheckId.RFL_RELATIONS].passed
    assert suite.outcomes[CheckId.LEONARD].applicable
    assert suite.outcomes[CheckId.LEONARD].passed
