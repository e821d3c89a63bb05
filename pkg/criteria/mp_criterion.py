"""
Marchenko-Pastur Criterion
Support test of the partially transposed covariance spectrum against MP(r)
"""
import logging
from typing import Optional, Sequence, Union

import numpy as np
from scipy.linalg import eigvalsh

from config import ERROR_MESSAGES, LOG_MESSAGES, MP_DEFAULTS, REPORT_NOTES
from exceptions import UnphysicalStateError
from models import (
    MPCriterionConfig,
    MPVerdict,
    Normalization,
    PartitionSpec,
    SpectrumReport,
    SupportViolation,
    Verdict,
)
from random_matrix import empirical_density, ks_distance, mp_params, mp_pdf
from symplectic import uncertainty_check

from .ppt_criterion import StateLike, as_covariance, partial_transpose, resolve_partition

logger = logging.getLogger(__name__)


def normalize_spectrum(eigenvalues: Sequence[float], normalization: Normalization) -> np.ndarray:
    """Divide by the mean for MEAN_ONE / TRACE_DIM, identity for NONE"""
    values = np.asarray(eigenvalues, dtype=float)
    if normalization == Normalization.NONE:
        return values.copy()
    mean = float(np.mean(values))
    if mean <= 0:
        raise UnphysicalStateError(f"Cannot rescale a spectrum with mean {mean!r} to mean one")
    return values / mean


def check_spectrum(
    eigenvalues: Sequence[float],
    config: Optional[MPCriterionConfig] = None,
    n_modes: Optional[int] = None,
) -> MPVerdict:
    """
    Support test on an arbitrary spectrum

    Separable iff every normalized eigenvalue lies in
    [lo - support_tol, hi + support_tol]. The KS distance against MP(r) is
    reported alongside but plays no part in the verdict.
    """
    config = config or MPCriterionConfig()
    raw = np.sort(np.asarray(eigenvalues, dtype=float).ravel())
    normalized = normalize_spectrum(raw, config.normalization)
    lo, hi = config.bounds()
    lower_edge, upper_edge = lo - config.support_tol, hi + config.support_tol

    violations = []
    for index, value in enumerate(normalized):
        if value < lower_edge:
            violations.append(SupportViolation(index=index, value=float(value), distance=float(lower_edge - value)))
        elif value > upper_edge:
            violations.append(SupportViolation(index=index, value=float(value), distance=float(value - upper_edge)))

    return MPVerdict(
        verdict=Verdict.ENTANGLED if violations else Verdict.SEPARABLE,
        r=config.r,
        normalization=config.normalization,
        bound_source=config.bound_source,
        bounds=(lo, hi),
        support_tol=config.support_tol,
        eigenvalues_raw=raw.tolist(),
        eigenvalues_normalized=normalized.tolist(),
        violations=violations,
        ks_distance=ks_distance(normalized, mp_params(config.r)),
        n_modes=n_modes,
        note=REPORT_NOTES["finite_size"].format(dim=len(raw)),
    )


class MPCriterion:
    """Marchenko-Pastur separability test on Ṽ = Lambda V Lambda"""

    def __init__(self):
        self.name = "mp_criterion"
        logger.info(LOG_MESSAGES["criterion_ready"].format(name=self.name))

    def partial_transpose_spectrum(
        self,
        state: StateLike,
        partition: Optional[PartitionSpec] = None,
    ) -> np.ndarray:
        """
        Sorted eigenvalues of Ṽ for a physical state

        Raises:
            UnphysicalStateError: the state fails the uncertainty relation
        """
        cov = as_covariance(state)
        physical = uncertainty_check(cov)
        if not physical.passes:
            message = ERROR_MESSAGES["unphysical_state"].format(
                min_eigenvalue=physical.min_eigenvalue, tol=physical.tol
            )
            logger.error(message)
            raise UnphysicalStateError(message)
        partition = resolve_partition(cov.n_modes, partition)
        return eigvalsh(partial_transpose(cov, partition).matrix)

    def mp_separability_check(
        self,
        state: StateLike,
        partition: Optional[PartitionSpec] = None,
        config: Optional[MPCriterionConfig] = None,
    ) -> MPVerdict:
        """
        Apply the support test to the spectrum of the partially transposed state

        Args:
            state: GaussianState or covariance matrix
            partition: Party B modes (defaults to the upper half of the modes)
            config: Reference law, normalization, bounds and slack

        Returns:
            MPVerdict: verdict, both spectra, violations and KS distance
        """
        config = config or MPCriterionConfig()
        cov = as_covariance(state)
        spectrum = self.partial_transpose_spectrum(cov, partition)
        verdict = check_spectrum(spectrum, config, n_modes=cov.n_modes)
        logger.debug(
            LOG_MESSAGES["mp_result"].format(
                n_modes=cov.n_modes,
                verdict=verdict.verdict.value,
                violations=len(verdict.violations),
                ks=verdict.ks_distance,
            )
        )
        return verdict

    def spectrum_report(
        self,
        state: StateLike,
        partition: Optional[PartitionSpec] = None,
        config: Optional[MPCriterionConfig] = None,
        bins: Union[str, int] = "fd",
    ) -> SpectrumReport:
        """Histogram of the normalized Ṽ spectrum with the MP density on [0, b + 0.5]"""
        config = config or MPCriterionConfig()
        params = mp_params(config.r)
        spectrum = self.partial_transpose_spectrum(state, partition)
        normalized = normalize_spectrum(spectrum, config.normalization)
        grid = np.linspace(
            0.0,
            params.b + MP_DEFAULTS["grid_padding"],
            MP_DEFAULTS["grid_points"],
        )
        return SpectrumReport(
            histogram=empirical_density(normalized, bins),
            grid=grid.tolist(),
            mp_density=mp_pdf(grid, params).tolist(),
            ks_distance=ks_distance(normalized, params),
            r=config.r,
            bounds=config.bounds(),
        )


mp_criterion = MPCriterion()


def mp_separability_check(
    state: StateLike,
    partition: Optional[PartitionSpec] = None,
    config: Optional[MPCriterionConfig] = None,
) -> MPVerdict:
    return mp_criterion.mp_separability_check(state, partition, config)
