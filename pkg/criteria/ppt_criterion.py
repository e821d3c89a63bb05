"""
PPT Criterion
Partial transpose as a phase-space mirror reflection and the Simon test
Ṽ + (i/2) Omega >= 0 on covariance matrices
"""
import logging
from typing import Optional, Union

import numpy as np

from config import ERROR_MESSAGES, LOG_MESSAGES, REPORT_NOTES
from exceptions import DimensionMismatchError, OrderingMismatchError, PartitionError, UnphysicalStateError
from models import (
    CovarianceMatrix,
    CriterionRegime,
    GaussianState,
    MirrorMap,
    PartitionSpec,
    QuadratureOrdering,
    SimonReport,
    Verdict,
)
from symplectic import default_tolerance, mode_count, reorder_covariance, slot_index, uncertainty_check

logger = logging.getLogger(__name__)

StateLike = Union[GaussianState, CovarianceMatrix]


def as_covariance(state: StateLike) -> CovarianceMatrix:
    return state.cov if isinstance(state, GaussianState) else state


def resolve_partition(n_modes: int, partition: Optional[PartitionSpec]) -> PartitionSpec:
    """Given partition, or party B = modes N//2..N-1 when none is given"""
    if partition is None:
        if n_modes < 2:
            raise PartitionError(
                ERROR_MESSAGES["partition_empty"].format(last=n_modes - 1, modes=[])
            )
        partition = PartitionSpec(party_b_modes=range(n_modes // 2, n_modes))
    partition.validate_for(n_modes)
    return partition


def mirror_matrix(
    n_modes: int,
    partition: PartitionSpec,
    ordering: QuadratureOrdering = QuadratureOrdering.INTERLEAVED,
) -> MirrorMap:
    """
    Mirror reflection Lambda for a bipartition

    Args:
        n_modes: Total number of modes N
        partition: Party B modes
        ordering: Layout the diagonal is expressed in

    Returns:
        MirrorMap: +1 everywhere except -1 on the p slot of each party-B mode
    """
    partition.validate_for(n_modes)
    diagonal = np.ones(2 * n_modes)
    for mode in partition.party_b_modes:
        diagonal[slot_index(mode, "p", n_modes, ordering, partition)] = -1.0
    return MirrorMap(diagonal=diagonal, ordering=ordering)


def apply_mirror(cov: CovarianceMatrix, mirror: MirrorMap) -> CovarianceMatrix:
    """
    Lambda V Lambda for a mirror expressed in the same ordering as V

    Raises:
        OrderingMismatchError: mirror and covariance use different layouts
        DimensionMismatchError: mirror length is not 2N
    """
    if mirror.ordering != cov.ordering:
        raise OrderingMismatchError(
            ERROR_MESSAGES["ordering_mismatch"].format(left=mirror.ordering.value, right=cov.ordering.value)
        )
    if len(mirror.diagonal) != cov.dim:
        raise DimensionMismatchError(
            ERROR_MESSAGES["dimension_mismatch"].format(
                expected=len(mirror.diagonal), n_modes=cov.n_modes, shape=cov.matrix.shape
            )
        )
    signs = mirror.diagonal
    return cov.replace_matrix(signs[:, None] * cov.matrix * signs[None, :])


def partial_transpose(cov: CovarianceMatrix, partition: PartitionSpec) -> CovarianceMatrix:
    """
    Ṽ = Lambda V Lambda

    Only signs change, so applying it twice returns V bit for bit.
    """
    return apply_mirror(cov, mirror_matrix(cov.n_modes, partition, cov.ordering))


def block_transpose(cov: Union[CovarianceMatrix, np.ndarray]) -> CovarianceMatrix:
    """
    Transpose every 2x2 block sigma_ij of a matrix in the PAIRED layout

    Raises:
        DimensionMismatchError: matrix is not square with an even dimension
    """
    if isinstance(cov, CovarianceMatrix):
        matrix, ordering = cov.matrix, cov.ordering
    else:
        matrix, ordering = np.asarray(cov, dtype=float), QuadratureOrdering.PAIRED
    n_modes = mode_count(matrix)
    blocks = matrix.reshape(n_modes, 2, n_modes, 2).transpose(0, 3, 2, 1)
    return CovarianceMatrix(
        n_modes=n_modes,
        matrix=blocks.reshape(2 * n_modes, 2 * n_modes),
        ordering=ordering,
    )


def block_transpose_discrepancy(cov: CovarianceMatrix, partition: PartitionSpec) -> float:
    """
    max|block-transpose route - mirror route|

    The block route reorders to PAIRED, transposes each 2x2 block and
    reorders back. Zero for per-mode diagonal states such as thermal
    products; nonzero whenever party B has q-p or A-B correlations that
    the mirror flips (e.g. two-mode squeezing).
    """
    paired = reorder_covariance(cov, QuadratureOrdering.PAIRED, partition)
    block_route = reorder_covariance(block_transpose(paired), cov.ordering, partition).matrix
    mirror_route = partial_transpose(cov, partition).matrix
    return float(np.max(np.abs(block_route - mirror_route)))


class SimonCriterion:
    """Exact PPT oracle for Gaussian states"""

    def __init__(self):
        self.name = "simon_criterion"
        logger.info(LOG_MESSAGES["criterion_ready"].format(name=self.name))

    def regime(self, n_modes: int, partition: PartitionSpec) -> CriterionRegime:
        """PPT is necessary and sufficient only when one party holds a single mode"""
        if partition.is_one_by_n(n_modes):
            return CriterionRegime.EXACT
        return CriterionRegime.NECESSARY_ONLY

    def _note(self, n_modes: int, partition: PartitionSpec, regime: CriterionRegime, boundary: bool) -> str:
        if regime == CriterionRegime.EXACT:
            notes = [REPORT_NOTES["exact"]]
        else:
            notes = [
                REPORT_NOTES["necessary_only"].format(
                    n_a=len(partition.party_a_modes(n_modes)),
                    n_b=len(partition.party_b_modes),
                )
            ]
        if boundary:
            notes.append(REPORT_NOTES["boundary"])
        return "; ".join(notes)

    def simon_check(
        self,
        state: StateLike,
        partition: Optional[PartitionSpec] = None,
        tol: Optional[float] = None,
    ) -> SimonReport:
        """
        Run the PPT test on a physical state

        Args:
            state: GaussianState or bare covariance matrix
            partition: Party B modes (defaults to the upper half of the modes)
            tol: Verdict threshold; defaults to the uncertainty-check tolerance

        Returns:
            SimonReport: Entangled iff min eig(Ṽ + iOmega/2) < -tol

        Raises:
            UnphysicalStateError: the state itself fails the uncertainty relation
            PartitionError: partition does not fit the mode count
        """
        cov = as_covariance(state)
        tol = default_tolerance(cov.matrix, tol)
        physical = uncertainty_check(cov, tol)
        if not physical.passes:
            message = ERROR_MESSAGES["unphysical_state"].format(
                min_eigenvalue=physical.min_eigenvalue, tol=tol
            )
            logger.error(message)
            raise UnphysicalStateError(message)

        partition = resolve_partition(cov.n_modes, partition)
        min_eigenvalue = uncertainty_check(partial_transpose(cov, partition), tol).min_eigenvalue
        verdict = Verdict.ENTANGLED if min_eigenvalue < -tol else Verdict.SEPARABLE
        boundary = abs(min_eigenvalue) <= tol
        regime = self.regime(cov.n_modes, partition)

        logger.debug(
            LOG_MESSAGES["simon_result"].format(
                n_modes=cov.n_modes,
                partition=list(partition.party_b_modes),
                verdict=verdict.value,
                min_eigenvalue=min_eigenvalue,
                regime=regime.value,
            )
        )
        return SimonReport(
            verdict=verdict,
            min_eigenvalue=min_eigenvalue,
            regime=regime,
            tol=tol,
            boundary=boundary,
            n_modes=cov.n_modes,
            partition=list(partition.party_b_modes),
            note=self._note(cov.n_modes, partition, regime, boundary),
        )


simon_criterion = SimonCriterion()


def simon_check(
    state: StateLike,
    partition: Optional[PartitionSpec] = None,
    tol: Optional[float] = None,
) -> SimonReport:
    return simon_criterion.simon_check(state, partition, tol)
