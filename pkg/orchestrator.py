"""
Comparison Orchestrator
Generates labelled state ensembles and runs both separability criteria on them
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from config import LOG_MESSAGES, get_settings
from criteria import MPCriterion, SimonCriterion
from gaussian_states import (
    default_partition,
    derive_seed,
    random_mixed,
    random_pure,
    separable_product,
    two_mode_squeezed,
    two_mode_squeezed_pairs,
)
from models import (
    AgreementReport,
    ConfusionMatrix,
    EnsembleSpec,
    GaussianState,
    MPCriterionConfig,
    PartitionSpec,
    StateKind,
    StateRecord,
    Verdict,
)
from random_matrix import ks_distance, mp_params, pool_spectra

logger = logging.getLogger(__name__)

# (index, seed, state, construction label)
EnsembleMember = Tuple[int, int, GaussianState, Optional[Verdict]]


def tmsv_label(r_sq: float, occupation: float) -> Verdict:
    """A squeezed thermal pair is entangled exactly when (2n+1) e^{-2r} < 1"""
    if (2.0 * occupation + 1.0) * math.exp(-2.0 * r_sq) < 1.0:
        return Verdict.ENTANGLED
    return Verdict.SEPARABLE


class ComparisonOrchestrator:
    """
    Runs the Simon oracle and the MP criterion side by side over seeded ensembles

    Per-state seeds come from derive_seed(ensemble seed, index), so the
    report does not depend on the worker count.
    """

    def __init__(self, max_workers: Optional[int] = None):
        self.name = "comparison_orchestrator"
        self.max_workers = max_workers
        self.simon_criterion = SimonCriterion()
        self.mp_criterion = MPCriterion()
        logger.info(f"{self.name} initialized with both criteria")

    def _squeezings(self, spec: EnsembleSpec, seed: int) -> List[float]:
        if spec.squeezing_range is None:
            return [spec.squeezing] * spec.n_modes_per_party
        low, high = spec.squeezing_range
        generator = np.random.Generator(np.random.PCG64(seed))
        return generator.uniform(low, high, size=spec.n_modes_per_party).tolist()

    def build_member(self, spec: EnsembleSpec, index: int) -> EnsembleMember:
        """
        State number `index` of an ensemble with its construction label

        Random pure and random mixed states carry no label.
        """
        seed = derive_seed(spec.seed, index)
        n = spec.n_modes_per_party
        label = None
        if spec.kind == StateKind.SEPARABLE_PRODUCT:
            state = separable_product(n, seed, spec.noise)
            label = Verdict.SEPARABLE
        elif spec.kind == StateKind.RANDOM_PURE:
            state = random_pure(2 * n, seed)
        elif spec.kind == StateKind.RANDOM_MIXED:
            state = random_mixed(2 * n, seed, spec.noise)
        else:
            squeezings = self._squeezings(spec, seed)
            if n == 1:
                state = two_mode_squeezed(squeezings[0], spec.occupation)
            else:
                state = two_mode_squeezed_pairs(squeezings, spec.occupation)
            state = state.model_copy(update={"seed": seed})
            label = tmsv_label(max(squeezings), spec.occupation)
        return index, seed, state, label

    def generate_ensemble(self, spec: EnsembleSpec) -> List[EnsembleMember]:
        """All members of an ensemble, in index order"""
        logger.info(
            LOG_MESSAGES["ensemble_start"].format(
                kind=spec.kind.value, n_states=spec.n_states, seed=spec.seed
            )
        )
        return [self.build_member(spec, index) for index in range(spec.n_states)]

    def _evaluate(
        self,
        member: EnsembleMember,
        partition: PartitionSpec,
        config: MPCriterionConfig,
    ) -> Tuple[StateRecord, np.ndarray]:
        index, seed, state, label = member
        simon = self.simon_criterion.simon_check(state, partition)
        mp = self.mp_criterion.mp_separability_check(state, partition, config)
        record = StateRecord(
            index=index,
            seed=seed,
            kind=state.kind,
            label=label,
            params=state.params,
            partition=list(partition.party_b_modes),
            simon_verdict=simon.verdict,
            simon_min_eigenvalue=simon.min_eigenvalue,
            simon_regime=simon.regime,
            mp_verdict=mp.verdict,
            mp_violations=len(mp.violations),
            mp_ks_distance=mp.ks_distance,
        )
        return record, np.asarray(mp.eigenvalues_normalized)

    def compare_criteria(
        self,
        ensembles: Union[EnsembleSpec, Sequence[EnsembleSpec]],
        partition: Optional[PartitionSpec] = None,
        config: Optional[MPCriterionConfig] = None,
    ) -> AgreementReport:
        """
        Compare the MP criterion against the Simon oracle

        Args:
            ensembles: One ensemble or a labelled mixture of several
            partition: Party B modes; defaults to modes n..2n-1 of each ensemble
            config: MP criterion configuration

        Returns:
            AgreementReport: confusion matrix, label agreement, pooled KS per
            kind and per-state records sorted by seed
        """
        if isinstance(ensembles, EnsembleSpec):
            ensembles = [ensembles]
        config = config or MPCriterionConfig()
        max_workers = self.max_workers or get_settings().max_workers

        jobs = []
        for spec in ensembles:
            spec_partition = partition or default_partition(spec.n_modes_per_party)
            jobs.extend((member, spec_partition) for member in self.generate_ensemble(spec))
        logger.info(LOG_MESSAGES["compare_start"].format(n_states=len(jobs), n_ensembles=len(ensembles)))

        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(lambda job: self._evaluate(job[0], job[1], config), jobs))
        results.sort(key=lambda result: (result[0].seed, result[0].kind.value, result[0].index))

        confusion = ConfusionMatrix()
        spectra_by_kind = {}
        for record, spectrum in results:
            confusion = confusion.count(record.simon_verdict, record.mp_verdict)
            spectra_by_kind.setdefault(record.kind.value, []).append(spectrum)
        records = [record for record, _ in results]

        labeled = [record for record in records if record.label is not None]
        params = mp_params(config.r)
        pooled_ks = {
            kind: ks_distance(pool_spectra(spectra), params)
            for kind, spectra in sorted(spectra_by_kind.items())
        }
        disagreeing_seeds = [record.seed for record in records if record.simon_verdict != record.mp_verdict]
        agreement_rate = confusion.agreements / confusion.total if confusion.total else 0.0

        logger.info(
            LOG_MESSAGES["compare_done"].format(
                agreement=agreement_rate, disagreements=len(disagreeing_seeds)
            )
        )
        return AgreementReport(
            n_states=len(records),
            confusion=confusion,
            agreement_rate=agreement_rate,
            labeled_states=len(labeled),
            simon_label_matches=sum(1 for record in labeled if record.simon_verdict == record.label),
            disagreeing_seeds=disagreeing_seeds,
            pooled_ks=pooled_ks,
            config=config,
            records=records,
        )


# Global orchestrator instance
orchestrator = ComparisonOrchestrator()
