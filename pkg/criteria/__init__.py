"""
Criteria Package
Separability criteria for bipartite Gaussian states
"""
from .ppt_criterion import (
    SimonCriterion,
    apply_mirror,
    block_transpose,
    block_transpose_discrepancy,
    mirror_matrix,
    partial_transpose,
    resolve_partition,
    simon_check,
    simon_criterion,
)
from .mp_criterion import (
    MPCriterion,
    check_spectrum,
    mp_criterion,
    mp_separability_check,
    normalize_spectrum,
)

__all__ = [
    "SimonCriterion",
    "MPCriterion",
    "simon_criterion",
    "mp_criterion",
    "mirror_matrix",
    "apply_mirror",
    "partial_transpose",
    "block_transpose",
    "block_transpose_discrepancy",
    "resolve_partition",
    "simon_check",
    "mp_separability_check",
    "normalize_spectrum",
    "check_spectrum",
]
