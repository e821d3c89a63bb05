"""
Symplectic Core
Quadrature orderings, the symplectic form, reordering permutations
and the uncertainty-relation check V + (i/2) Omega >= 0
"""
import logging
from typing import Optional, Union

import numpy as np
from scipy.linalg import block_diag, eigvalsh

from config import ERROR_MESSAGES, TOLERANCES, get_settings
from exceptions import DimensionMismatchError, InvalidParameterError, PartitionError
from models import (
    CovarianceMatrix,
    PartitionSpec,
    QuadratureOrdering,
    SymplecticForm,
    SymplecticMatrix,
    UncertaintyReport,
)

logger = logging.getLogger(__name__)

J = np.array([[0.0, 1.0], [-1.0, 0.0]])

QUADRATURES = {"q": 0, "p": 1}


def default_tolerance(matrix: np.ndarray, tol: Optional[float] = None) -> float:
    """
    Resolve the pass/fail tolerance for a matrix

    Precedence: explicit tol > GAUSSMP_DEFAULT_TOL > 1e-9 * max(1, max|M|).
    """
    if tol is not None:
        return float(tol)
    override = get_settings().default_tol
    if override is not None:
        return float(override)
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    return TOLERANCES["uncertainty_relative"] * scale


def mode_count(matrix: np.ndarray) -> int:
    """N for a 2N x 2N matrix"""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(ERROR_MESSAGES["not_square"].format(shape=matrix.shape))
    if matrix.shape[0] == 0 or matrix.shape[0] % 2:
        raise DimensionMismatchError(ERROR_MESSAGES["odd_dimension"].format(dim=matrix.shape[0]))
    return matrix.shape[0] // 2


def _party_sequence(
    n_modes: int,
    ordering: QuadratureOrdering,
    partition: Optional[PartitionSpec],
) -> list[int]:
    """Mode order used by the q-half (and p-half) of a bipartite layout"""
    if partition is None:
        raise PartitionError(ERROR_MESSAGES["partition_required"].format(ordering=ordering.value))
    partition.validate_for(n_modes)
    party_a = list(partition.party_a_modes(n_modes))
    party_b = list(partition.party_b_modes)
    if len(party_a) != len(party_b):
        raise PartitionError(
            ERROR_MESSAGES["partition_unbalanced"].format(
                ordering=ordering.value, n_a=len(party_a), n_b=len(party_b)
            )
        )
    if ordering == QuadratureOrdering.PAPER_BIPARTITE:
        return party_a + party_b
    paired = []
    for mode_a, mode_b in zip(party_a, party_b):
        paired.extend([mode_a, mode_b])
    return paired


def slot_order(
    n_modes: int,
    ordering: QuadratureOrdering,
    partition: Optional[PartitionSpec] = None,
) -> np.ndarray:
    """
    Interleaved index (2*mode + quadrature) held by each slot of an ordering

    Args:
        n_modes: Total number of modes N
        ordering: Target layout
        partition: Bipartition, required for PAPER_BIPARTITE and PAIRED

    Returns:
        np.ndarray: Integer array of length 2N
    """
    if ordering == QuadratureOrdering.INTERLEAVED:
        return np.arange(2 * n_modes)
    if ordering == QuadratureOrdering.BLOCK_QP:
        modes = list(range(n_modes))
    else:
        modes = _party_sequence(n_modes, ordering, partition)
    return np.array([2 * m for m in modes] + [2 * m + 1 for m in modes])


def slot_index(
    mode: int,
    quadrature: str,
    n_modes: int,
    ordering: QuadratureOrdering,
    partition: Optional[PartitionSpec] = None,
) -> int:
    """Slot occupied by quadrature 'q' or 'p' of a mode"""
    order = slot_order(n_modes, ordering, partition)
    target = 2 * mode + QUADRATURES[quadrature]
    return int(np.flatnonzero(order == target)[0])


def _permutation(
    n_modes: int,
    source: QuadratureOrdering,
    target: QuadratureOrdering,
    partition: Optional[PartitionSpec],
) -> np.ndarray:
    source_order = slot_order(n_modes, source, partition)
    inverse = np.empty_like(source_order)
    inverse[source_order] = np.arange(len(source_order))
    return inverse[slot_order(n_modes, target, partition)]


def permutation_matrix(
    n_modes: int,
    source: QuadratureOrdering,
    target: QuadratureOrdering,
    partition: Optional[PartitionSpec] = None,
) -> np.ndarray:
    """Permutation P with M_target = P M_source P^T"""
    perm = _permutation(n_modes, source, target, partition)
    matrix = np.zeros((2 * n_modes, 2 * n_modes))
    matrix[np.arange(2 * n_modes), perm] = 1.0
    return matrix


def reorder(
    matrix: np.ndarray,
    source: QuadratureOrdering,
    target: QuadratureOrdering,
    partition: Optional[PartitionSpec] = None,
) -> np.ndarray:
    """
    Re-express a 2N x 2N phase-space matrix in another quadrature ordering

    Pure index permutation, so round trips are exact.

    Raises:
        DimensionMismatchError: matrix is not 2N x 2N
        PartitionError: a bipartite ordering is requested without a balanced partition
    """
    matrix = np.asarray(matrix, dtype=float)
    n_modes = mode_count(matrix)
    perm = _permutation(n_modes, source, target, partition)
    return matrix[np.ix_(perm, perm)]


def reorder_covariance(
    cov: CovarianceMatrix,
    target: QuadratureOrdering,
    partition: Optional[PartitionSpec] = None,
) -> CovarianceMatrix:
    """Covariance matrix viewed in another ordering"""
    return cov.replace_matrix(reorder(cov.matrix, cov.ordering, target, partition), ordering=target)


def build_omega(n_modes: int, ordering: QuadratureOrdering = QuadratureOrdering.INTERLEAVED) -> SymplecticForm:
    """
    Symplectic form for N modes

    INTERLEAVED gives diag(J, ..., J) with J = [[0, 1], [-1, 0]]; the other
    layouts put every q before every p in the same mode order, giving
    [[0, I], [-I, 0]].
    """
    if n_modes < 1:
        raise InvalidParameterError(f"n_modes must be >= 1, got {n_modes}")
    if ordering == QuadratureOrdering.INTERLEAVED:
        matrix = block_diag(*([J] * n_modes))
    else:
        identity = np.identity(n_modes)
        zeros = np.zeros((n_modes, n_modes))
        matrix = np.block([[zeros, identity], [-identity, zeros]])
    return SymplecticForm(n_modes=n_modes, matrix=matrix, ordering=ordering)


def uncertainty_check(cov: CovarianceMatrix, tol: Optional[float] = None) -> UncertaintyReport:
    """
    Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega

    Solved through the real symmetric embedding [[V, -Omega/2], [Omega/2, V]],
    whose spectrum is that of V + (i/2) Omega with every eigenvalue doubled.

    Args:
        cov: Covariance matrix
        tol: Pass threshold; see default_tolerance

    Returns:
        UncertaintyReport: min eigenvalue and passes = (min >= -tol)
    """
    tol = default_tolerance(cov.matrix, tol)
    half_omega = build_omega(cov.n_modes, cov.ordering).matrix / 2.0
    embedding = np.block([[cov.matrix, -half_omega], [half_omega, cov.matrix]])
    min_eigenvalue = float(eigvalsh(embedding)[0])
    return UncertaintyReport(
        min_eigenvalue=min_eigenvalue,
        passes=min_eigenvalue >= -tol,
        tol=tol,
    )


def is_symplectic(
    symplectic: Union[SymplecticMatrix, np.ndarray],
    tol: Optional[float] = None,
    ordering: QuadratureOrdering = QuadratureOrdering.INTERLEAVED,
) -> bool:
    """
    Check S^T Omega S = Omega in the max norm

    Args:
        symplectic: Candidate matrix (its own ordering wins over `ordering`)
        tol: Threshold, default 1e-10 * max(1, max|S|^2)

    Raises:
        DimensionMismatchError: matrix is not square with even dimension
    """
    if isinstance(symplectic, SymplecticMatrix):
        matrix, ordering = symplectic.matrix, symplectic.ordering
    else:
        matrix = np.asarray(symplectic, dtype=float)
    n_modes = mode_count(matrix)
    if tol is None:
        tol = TOLERANCES["symplectic_relative"] * max(1.0, float(np.max(np.abs(matrix))) ** 2)
    omega = build_omega(n_modes, ordering).matrix
    deviation = float(np.max(np.abs(matrix.T @ omega @ matrix - omega)))
    logger.debug(f"Symplectic deviation {deviation:.3e} (tol {tol:.3e})")
    return deviation <= tol
