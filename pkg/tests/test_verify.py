"""
Tests for the verification harnesses.

Ranges are kept small so the default run stays fast; the wide sweeps are
marked slow.
"""

import pytest

from utils.counter import clear_memo
from utils.qpoly import LaurentPoly, Q, Q_MINUS_1
from utils.schemas import SampleSpec, VerificationReport
from utils.verify import (
    CLAIMS,
    _divide_qminus1,
    rank_one_hull_counterexample,
    run_claim,
    verify_conj_poinrothe,
    verify_conj_rookrothe,
    verify_conj_rothe,
    verify_mrp,
    verify_ne_formula,
    verify_numzeroes,
    verify_rank1_t_positivity,
    verify_rook_equinumerosity,
    verify_rook_identities,
    verify_rothe_symmetries,
)

SMALL_SAMPLE = SampleSpec(exhaustive_size=2, random_size=3, random_count=5, seed=7)


@pytest.fixture(autouse=True)
def fresh_memo():
    clear_memo()
    yield
    clear_memo()


@pytest.mark.unit
class TestHelpers:
    def test_divide_qminus1(self):
        poly = Q_MINUS_1 ** 2 * (Q + 1)
        assert _divide_qminus1(poly, 2) == Q + 1

    def test_divide_qminus1_not_divisible(self):
        assert _divide_qminus1(Q + 1, 1) is None

    def test_divide_zero(self):
        assert _divide_qminus1(LaurentPoly(), 3).is_zero()

    def test_rank_one_counterexample(self):
        rothe_side, hull_side = rank_one_hull_counterexample()
        assert rothe_side == 2 * Q + 1
        assert hull_side == LaurentPoly.constant(2)


@pytest.mark.integration
class TestRotheHarnesses:
    def test_rothe_small(self):
        report = verify_conj_rothe(4)
        assert report.passed, report.failures
        assert report.skipped_by_symmetry > 0
        assert report.n_range == [1, 4]

    def test_poinrothe_small(self):
        report = verify_conj_poinrothe(5)
        assert report.passed, report.failures
        assert report.n_range == [1, 5]

    def test_rookrothe_small(self):
        report = verify_conj_rookrothe(4)
        assert report.passed, report.failures
        assert any("w=21" in note for note in report.notes)

    def test_equinumerosity(self):
        report = verify_rook_equinumerosity(5)
        assert report.passed, report.failures
        assert report.instances == 1 + 2 + 6 + 24 + 120

    def test_mrp_small(self):
        report = verify_mrp(4)
        assert report.passed, report.failures
        # every permutation of size <= 4 is skew-vexillary
        assert report.instances == 1 + 2 + 6 + 24

    def test_symmetries(self):
        report = verify_rothe_symmetries(3)
        assert report.passed, report.failures

    def test_numzeroes(self):
        report = verify_numzeroes(5)
        assert report.passed, report.failures


@pytest.mark.integration
class TestBoardHarnesses:
    def test_rank1_t_positivity(self):
        report = verify_rank1_t_positivity(SMALL_SAMPLE)
        assert report.passed
        assert report.instances == 2 ** 4 + 5
        assert "seed 7" in report.notes[0]

    def test_rank1_detects_negative_coefficient(self, mocker):
        mocker.patch("utils.verify.count_rank1", return_value=Q_MINUS_1 ** 2 - 3 * Q_MINUS_1)
        report = verify_rank1_t_positivity(SampleSpec(exhaustive_size=1, random_count=0))
        assert not report.passed
        assert len(report.failures) == 2

    def test_rook_identities(self):
        report = verify_rook_identities(3)
        assert report.passed, report.failures
        assert report.instances > 0

    def test_ne_formula(self):
        report = verify_ne_formula(size=3, count=20, seed=1)
        assert report.passed, report.failures
        assert report.instances == 20


@pytest.mark.unit
class TestDispatch:
    def test_unknown_claim(self):
        with pytest.raises(ValueError, match="unknown claim"):
            run_claim("nope", 3)

    def test_dispatch_to_sweep(self):
        report = run_claim("numzeroes", 3)
        assert isinstance(report, VerificationReport)
        assert report.claim == "numzeroes"

    def test_dispatch_sampled(self):
        report = run_claim("rank1t", 0, sample_spec=SMALL_SAMPLE)
        assert report.claim == "rank1t"

    def test_claim_table(self):
        assert {"rothe", "poinrothe", "rookrothe", "mrp"} <= set(CLAIMS)

    def test_report_serializes(self):
        data = run_claim("equinumerosity", 3).model_dump()
        assert data["passed"] is True
        assert data["failures"] == []


@pytest.mark.slow
class TestWideSweeps:
    def test_rothe_to_six(self):
        assert verify_conj_rothe(6, threads=2).passed

    def test_mrp_to_six(self):
        assert verify_mrp(6, threads=2).passed

    def test_rook_identities_to_five(self):
        report = verify_rook_identities(5)
        assert report.passed, report.failures
