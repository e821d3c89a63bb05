"""
Gaussian State Constructors
Vacuum, thermal, two-mode squeezed and seeded random covariance matrices

All constructors return interleaved covariance matrices. Bipartite states on
2n modes put party A on modes 0..n-1 and party B on modes n..2n-1.
Random states draw from numpy's PCG64 generator.
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import block_diag, expm

from config import ENSEMBLE_DEFAULTS, ERROR_MESSAGES
from exceptions import InvalidParameterError
from models import (
    CovarianceMatrix,
    GaussianState,
    PartitionSpec,
    StateKind,
    SymplecticMatrix,
    UncertaintyReport,
)
from symplectic import build_omega, uncertainty_check

logger = logging.getLogger(__name__)

PAULI_Z = np.diag([1.0, -1.0])


def _require_nonnegative(name: str, value: float) -> None:
    if not value >= 0:
        raise InvalidParameterError(ERROR_MESSAGES["negative_parameter"].format(name=name, value=value))


def _require_modes(n_modes: int) -> None:
    if n_modes < 1:
        raise InvalidParameterError(f"n_modes must be >= 1, got {n_modes}")


def _generator(seed: int) -> np.random.Generator:
    if not 0 <= seed <= ENSEMBLE_DEFAULTS["max_seed"]:
        raise InvalidParameterError(ERROR_MESSAGES["invalid_seed"].format(seed=seed))
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(base_seed: int, index: int) -> int:
    """
    Per-item seed mixed from a base seed and an index

    Uses SeedSequence([base_seed, index]) so items can be generated in any
    order or in parallel and still reproduce.
    """
    if not 0 <= base_seed <= ENSEMBLE_DEFAULTS["max_seed"]:
        raise InvalidParameterError(ERROR_MESSAGES["invalid_seed"].format(seed=base_seed))
    sequence = np.random.SeedSequence([base_seed, index])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def default_partition(n_modes_per_party: int) -> PartitionSpec:
    """Party B = modes n..2n-1"""
    return PartitionSpec(party_b_modes=range(n_modes_per_party, 2 * n_modes_per_party))


def _state(matrix: np.ndarray, kind: StateKind, params: dict, seed: Optional[int] = None) -> GaussianState:
    cov = CovarianceMatrix(n_modes=matrix.shape[0] // 2, matrix=matrix)
    return GaussianState(cov=cov, kind=kind, params=params, seed=seed)


def vacuum(n_modes: int) -> GaussianState:
    """Vacuum state, V = I/2"""
    _require_modes(n_modes)
    return _state(0.5 * np.identity(2 * n_modes), StateKind.VACUUM, {"n_modes": n_modes})


def thermal(occupations: Sequence[float]) -> GaussianState:
    """
    Product of thermal states

    Args:
        occupations: Mean photon number per mode, each >= 0

    Returns:
        GaussianState: V = diag((n_k + 1/2) I_2)
    """
    occupations = [float(n) for n in occupations]
    _require_modes(len(occupations))
    for occupation in occupations:
        _require_nonnegative("occupation", occupation)
    diagonal = np.repeat(np.array(occupations) + 0.5, 2)
    return _state(np.diag(diagonal), StateKind.THERMAL, {"occupations": occupations})


def _tmsv_blocks(r_sq: float, occupation: float) -> tuple[np.ndarray, np.ndarray]:
    scale = (2.0 * occupation + 1.0) / 2.0
    diagonal = scale * math.cosh(2.0 * r_sq) * np.identity(2)
    off_diagonal = scale * math.sinh(2.0 * r_sq) * PAULI_Z
    return diagonal, off_diagonal


def two_mode_squeezed(r_sq: float, occupation: float = 0.0) -> GaussianState:
    """
    Two-mode squeezed (thermal) state, partition mode 0 | mode 1

    V = (2n+1)/2 [[cosh2r I, sinh2r Z], [sinh2r Z, cosh2r I]] with Z = diag(1, -1).
    occupation = 0 is the pure two-mode squeezed vacuum; the state is
    entangled exactly when (2n+1) e^{-2r} < 1.
    """
    _require_nonnegative("r_sq", r_sq)
    _require_nonnegative("occupation", occupation)
    diagonal, off_diagonal = _tmsv_blocks(r_sq, occupation)
    matrix = np.block([[diagonal, off_diagonal], [off_diagonal, diagonal]])
    return _state(
        matrix,
        StateKind.TWO_MODE_SQUEEZED,
        {"r_sq": float(r_sq), "occupation": float(occupation)},
    )


def two_mode_squeezed_pairs(squeezings: Sequence[float], occupation: float = 0.0) -> GaussianState:
    """n independent squeezed pairs (A_k, B_k) = (mode k, mode n+k)"""
    squeezings = [float(r) for r in squeezings]
    _require_modes(len(squeezings))
    _require_nonnegative("occupation", occupation)
    n_pairs = len(squeezings)
    matrix = np.zeros((4 * n_pairs, 4 * n_pairs))
    for k, r_sq in enumerate(squeezings):
        _require_nonnegative("r_sq", r_sq)
        diagonal, off_diagonal = _tmsv_blocks(r_sq, occupation)
        a, b = 2 * k, 2 * (n_pairs + k)
        matrix[a:a + 2, a:a + 2] = diagonal
        matrix[b:b + 2, b:b + 2] = diagonal
        matrix[a:a + 2, b:b + 2] = off_diagonal
        matrix[b:b + 2, a:a + 2] = off_diagonal
    return _state(
        matrix,
        StateKind.TWO_MODE_SQUEEZED,
        {"squeezings": squeezings, "occupation": float(occupation)},
    )


def random_symplectic(n_modes: int, seed: int) -> SymplecticMatrix:
    """
    Random symplectic matrix S = expm(Omega A)

    A is symmetric with standard normal entries scaled by 1/sqrt(2N);
    Omega A is Hamiltonian, so its exponential is symplectic.
    """
    _require_modes(n_modes)
    generator = _generator(seed)
    dim = 2 * n_modes
    gaussian = generator.standard_normal((dim, dim))
    hamiltonian = (np.triu(gaussian) + np.triu(gaussian, 1).T) / math.sqrt(dim)
    omega = build_omega(n_modes).matrix
    return SymplecticMatrix(matrix=expm(omega @ hamiltonian))


def random_pure(n_modes: int, seed: int) -> GaussianState:
    """Pure state V = S S^T / 2 for a random symplectic S"""
    symplectic = random_symplectic(n_modes, seed).matrix
    return _state(
        0.5 * symplectic @ symplectic.T,
        StateKind.RANDOM_PURE,
        {"n_modes": n_modes},
        seed=seed,
    )


def random_mixed(n_modes: int, seed: int, noise: float) -> GaussianState:
    """Random pure state plus classical noise: V = S S^T / 2 + noise * I"""
    _require_nonnegative("noise", noise)
    symplectic = random_symplectic(n_modes, seed).matrix
    matrix = 0.5 * symplectic @ symplectic.T + noise * np.identity(2 * n_modes)
    return _state(
        matrix,
        StateKind.RANDOM_MIXED,
        {"n_modes": n_modes, "noise": float(noise)},
        seed=seed,
    )


def separable_product(
    n_modes_per_party: int,
    seed: int,
    noise: float = ENSEMBLE_DEFAULTS["noise"],
) -> GaussianState:
    """
    Product state V_A (+) V_B of two independent random mixed states

    Party seeds are derive_seed(seed, 0) and derive_seed(seed, 1); the
    off-diagonal A|B blocks are exactly zero.
    """
    _require_modes(n_modes_per_party)
    party_a = random_mixed(n_modes_per_party, derive_seed(seed, 0), noise)
    party_b = random_mixed(n_modes_per_party, derive_seed(seed, 1), noise)
    return _state(
        block_diag(party_a.cov.matrix, party_b.cov.matrix),
        StateKind.SEPARABLE_PRODUCT,
        {"n_modes_per_party": n_modes_per_party, "noise": float(noise)},
        seed=seed,
    )


def validate(state: GaussianState, tol: Optional[float] = None) -> UncertaintyReport:
    """Uncertainty-relation report for a state"""
    return uncertainty_check(state.cov, tol)
