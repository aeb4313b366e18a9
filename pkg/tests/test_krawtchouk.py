from fractions import Fraction

import pytest
from conftest import GF101, QQ_FIELD, mat, scalars

from exact.fields import Field
from exact.matrices import same
from exact.spectral import nilpotent_exp_scaled
from tdpair.errors import InadmissibleParametersError, NotKrawtchoukError
from tdpair.krawtchouk import (
    KrawtchoukParams,
    check_krawtchouk_identities,
    construct_krawtchouk,
    is_krawtchouk,
    kronecker_sum_candidate,
    trivial_system,
)
from tdpair.models import CheckId, RejectReason, Relative
from tdpair.system import relatives


class TestParams:
    def test_closed_forms(self):
        forms = KrawtchoukParams.of(3, Fraction(1, 2), QQ_FIELD).closed_forms()
        assert forms["theta"] == scalars([3, 1, -1, -3])
        assert forms["phi"] == scalars([-6, -8, -6])
        assert forms["x"] == scalars([3, 4, 3])

    @pytest.mark.parametrize(
        "d, p, field",
        [(2, 0, QQ_FIELD), (2, 1, QQ_FIELD), (0, 2, QQ_FIELD), (5, 2, Field.prime(5)), (3, 2, Field.prime(3))],
    )
    def test_inadmissible(self, d, p, field):
        with pytest.raises(InadmissibleParametersError):
            KrawtchoukParams.of(d, p, field)


def test_construct_matches_matrix(kraw2):
    system, _ = kraw2
    assert same(system.A, mat([[0, 2, 0], [1, 0, 1], [0, 2, 0]]))
    assert same(system.Astar, mat([[2, 0, 0], [0, 0, 0], [0, 0, -2]]))
    assert is_krawtchouk(system)


def test_split_sequence_over_prime_field(kraw3_gf):
    # p = 3: phi_i = 12 i (i - 4)
    _, data = kraw3_gf
    assert data.phi == scalars([-36, -48, -36], GF101)


def test_identities_vanish(kraw1, kraw2, kraw3, kraw3_gf):
    for system, _ in (kraw1, kraw2, kraw3, kraw3_gf):
        bad = [(r.label, r.index) for r in check_krawtchouk_identities(system) if not r.is_zero]
        assert not bad


def test_psi_is_exponential(split1):
    assert same(nilpotent_exp_scaled(split1.lowering, QQ_FIELD.scalar("1/2")), mat([[1, -1], [0, 1]]))
    assert same(split1.psi, mat([[1, -1], [0, 1]]))


def test_rejects_other_orderings(kraw2):
    down = relatives(kraw2[0], Relative.DOWN)
    assert not is_krawtchouk(down)
    with pytest.raises(NotKrawtchoukError):
        check_krawtchouk_identities(down)


class TestKroneckerSum:
    def test_two_spin_halves_decompose(self, kraw1):
        outcome = kronecker_sum_candidate(kraw1[0], kraw1[0])
        assert outcome.verdict.reason is RejectReason.REDUCIBLE
        assert outcome.verdict.witness.dim in (1, 3)
        assert outcome.shape is None
        assert outcome.checks is None

    def test_trivial_factor(self, kraw1):
        outcome = kronecker_sum_candidate(kraw1[0], trivial_system(0, 0, QQ_FIELD))
        assert outcome.verdict.accepted
        assert outcome.shape == (1, 1)
        assert outcome.checks.passed

    def test_distinct_probabilities_give_a_wider_middle(self, kraw1):
        third = construct_krawtchouk(KrawtchoukParams.of(1, Fraction(1, 3), QQ_FIELD))[0]
        outcome = kronecker_sum_candidate(kraw1[0], third)
        assert outcome.verdict.accepted
        assert outcome.shape == (1, 2, 1)
        assert outcome.checks.passed
        assert [U.dim for U in outcome.checks.split.U] == [1, 2, 1]
        ranks = outcome.checks.outcomes[CheckId.RFL_RANKS].ranks
        assert ranks and all(entry.ok for entry in ranks)
        assert 2 in {entry.expected for entry in ranks}
        assert not outcome.checks.outcomes[CheckId.LEONARD].applicable
        assert outcome.checks.outcomes[CheckId.KRAWTCHOUK].applicable

    def test_fields_must_agree(self, kraw1, kraw3_gf):
        with pytest.raises(InadmissibleParametersError):
            kronecker_sum_candidate(kraw1[0], kraw3_gf[0])
