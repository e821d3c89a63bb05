"""
Unit tests for the criteria comparison orchestrator
"""
import pytest
from pydantic import ValidationError

from models import EnsembleSpec, MPCriterionConfig, PartitionSpec, StateKind, Verdict
from orchestrator import ComparisonOrchestrator, orchestrator, tmsv_label


@pytest.fixture
def labelled_ensembles():
    """100 separable products plus 100 TMSVs with r drawn from [0.5, 2]"""
    return [
        EnsembleSpec(n_states=100, kind=StateKind.SEPARABLE_PRODUCT, seed=11),
        EnsembleSpec(
            n_states=100,
            kind=StateKind.TWO_MODE_SQUEEZED,
            seed=12,
            squeezing_range=(0.5, 2.0),
        ),
    ]


class TestTmsvLabel:
    """Test the squeezed thermal entanglement threshold"""

    def test_vacuum_squeezing_entangled(self):
        assert tmsv_label(0.1, 0.0) == Verdict.ENTANGLED

    def test_no_squeezing_separable(self):
        assert tmsv_label(0.0, 0.0) == Verdict.SEPARABLE

    def test_thermal_noise_washes_out(self):
        assert tmsv_label(0.3, 0.5) == Verdict.SEPARABLE
        assert tmsv_label(0.5, 0.5) == Verdict.ENTANGLED


class TestEnsembleGeneration:
    """Test build_member and generate_ensemble"""

    def test_members_in_index_order(self):
        spec = EnsembleSpec(n_states=5, kind=StateKind.RANDOM_PURE, seed=3)
        members = orchestrator.generate_ensemble(spec)
        assert [index for index, _, _, _ in members] == list(range(5))
        assert all(label is None for _, _, _, label in members)
        assert all(state.n_modes == 2 for _, _, state, _ in members)

    def test_tmsv_squeezing_within_range(self):
        spec = EnsembleSpec(
            n_states=20, kind=StateKind.TWO_MODE_SQUEEZED, seed=4, squeezing_range=(0.5, 2.0)
        )
        for _, seed, state, label in orchestrator.generate_ensemble(spec):
            assert 0.5 <= state.params["r_sq"] <= 2.0
            assert state.seed == seed
            assert label == Verdict.ENTANGLED

    def test_multimode_pairs(self):
        spec = EnsembleSpec(n_states=2, n_modes_per_party=2, kind=StateKind.TWO_MODE_SQUEEZED, seed=5)
        _, _, state, _ = orchestrator.build_member(spec, 0)
        assert state.n_modes == 4

    def test_member_is_reproducible(self):
        spec = EnsembleSpec(n_states=3, kind=StateKind.SEPARABLE_PRODUCT, seed=8)
        first = orchestrator.build_member(spec, 2)[2].cov.matrix
        second = orchestrator.build_member(spec, 2)[2].cov.matrix
        assert (first == second).all()

    def test_fixed_kinds_rejected(self):
        with pytest.raises(ValidationError):
            EnsembleSpec(n_states=1, kind=StateKind.VACUUM, seed=0)


class TestCompareCriteria:
    """Test compare_criteria"""

    def test_simon_reproduces_labels(self, labelled_ensembles):
        report = orchestrator.compare_criteria(labelled_ensembles)
        assert report.n_states == 200
        assert report.labeled_states == 200
        assert report.simon_label_matches == 200
        assert report.confusion.total == 200
        assert report.confusion.separable_separable + report.confusion.separable_entangled == 100

    def test_agreement_rate_matches_confusion(self, labelled_ensembles):
        report = orchestrator.compare_criteria(labelled_ensembles)
        assert report.agreement_rate == pytest.approx(report.confusion.agreements / 200)
        disagreements = sum(1 for record in report.records if record.simon_verdict != record.mp_verdict)
        assert len(report.disagreeing_seeds) == disagreements

    def test_records_sorted_by_seed(self, labelled_ensembles):
        seeds = [record.seed for record in orchestrator.compare_criteria(labelled_ensembles).records]
        assert seeds == sorted(seeds)

    def test_independent_of_worker_count(self, labelled_ensembles):
        serial = ComparisonOrchestrator(max_workers=1).compare_criteria(labelled_ensembles)
        threaded = ComparisonOrchestrator(max_workers=4).compare_criteria(labelled_ensembles)
        assert serial.model_dump_json() == threaded.model_dump_json()

    def test_workers_from_environment(self, monkeypatch, labelled_ensembles):
        monkeypatch.setenv("GAUSSMP_MAX_WORKERS", "3")
        report = ComparisonOrchestrator().compare_criteria(labelled_ensembles[:1])
        assert report.n_states == 100

    def test_pooled_ks_per_kind(self, labelled_ensembles):
        report = orchestrator.compare_criteria(labelled_ensembles)
        assert sorted(report.pooled_ks) == ["separable-product", "tmsv"]
        assert all(0.0 <= value <= 1.0 for value in report.pooled_ks.values())

    def test_unlabelled_ensemble(self):
        spec = EnsembleSpec(n_states=10, kind=StateKind.RANDOM_MIXED, seed=21)
        report = orchestrator.compare_criteria(spec)
        assert report.labeled_states == 0
        assert report.simon_label_matches == 0
        assert report.n_states == 10

    def test_explicit_partition_and_config(self):
        spec = EnsembleSpec(n_states=10, kind=StateKind.TWO_MODE_SQUEEZED, seed=2, squeezing=2.0)
        config = MPCriterionConfig(r=0.5, support_tol=0.05)
        report = orchestrator.compare_criteria(spec, PartitionSpec(party_b_modes=[1]), config)
        assert report.config == config
        assert all(record.partition == [1] for record in report.records)
        # e^-4 / cosh 4 sits far below the lower edge
        assert report.confusion.entangled_entangled == 10
