"""
Random Matrix Toolkit
Wishart sampling, the Marchenko-Pastur law, log-gas energy and
empirical spectral statistics
"""
import logging
import math
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np
from scipy import stats
from scipy.integrate import quad
from scipy.linalg import eigvalsh
from scipy.optimize import brentq

from config import ENSEMBLE_DEFAULTS, ERROR_MESSAGES, LOG_MESSAGES, MP_DEFAULTS, TOLERANCES
from exceptions import DegenerateSpectrumError, InvalidParameterError
from models import Histogram, MPParams, SpectralSample

logger = logging.getLogger(__name__)

SpectrumLike = Union[SpectralSample, Sequence[float], np.ndarray]


def _values(sample: SpectrumLike) -> np.ndarray:
    if isinstance(sample, SpectralSample):
        return sample.eigenvalues
    return np.sort(np.asarray(sample, dtype=float).ravel())


def wishart_matrix(m: int, n: int, seed: int) -> np.ndarray:
    """
    Empirical covariance Sigma = Y Y^T / n of n standard normal vectors in R^m

    Raises:
        InvalidParameterError: unless 1 <= m <= n, or the seed is not a uint64
    """
    if not 1 <= m <= n:
        raise InvalidParameterError(ERROR_MESSAGES["wishart_shape"].format(m=m, n=n))
    if not 0 <= seed <= ENSEMBLE_DEFAULTS["max_seed"]:
        raise InvalidParameterError(ERROR_MESSAGES["invalid_seed"].format(seed=seed))
    generator = np.random.Generator(np.random.PCG64(seed))
    samples = generator.standard_normal((m, n))
    sigma = samples @ samples.T / n
    return (sigma + sigma.T) / 2.0


def sample_wishart(m: int, n: int, seed: int) -> SpectralSample:
    """Sorted eigenvalues of a seeded Wishart matrix"""
    eigenvalues = eigvalsh(wishart_matrix(m, n, seed))
    logger.debug(LOG_MESSAGES["wishart_sampled"].format(m=m, n=n, seed=seed))
    return SpectralSample(eigenvalues=eigenvalues, m=m, n=n)


def mp_params(r: float) -> MPParams:
    """MPParams with the range check reported as InvalidParameterError"""
    if not 0 < r <= 1:
        raise InvalidParameterError(ERROR_MESSAGES["invalid_ratio"].format(r=r))
    return MPParams(r=r)


def mp_pdf(x: Union[float, np.ndarray], params: MPParams) -> Union[float, np.ndarray]:
    """
    Marchenko-Pastur density sqrt((x-a)(b-x)) / (2 pi r x) on [a, b], 0 elsewhere

    For r = 1 (a = 0) this is the quarter-circle law sqrt((4-x)/x) / (2 pi),
    with the value 0 returned at x = 0.
    """
    x = np.asarray(x, dtype=float)
    flat = np.atleast_1d(x)
    density = np.zeros_like(flat)
    inside = (flat > params.a) & (flat < params.b) & (flat > 0)
    values = flat[inside]
    density[inside] = np.sqrt((values - params.a) * (params.b - values)) / (2.0 * math.pi * params.r * values)
    if x.ndim == 0:
        return float(density[0])
    return density.reshape(x.shape)


def _quad(func: Callable[[float], float], lo: float, hi: float, wvar: tuple) -> float:
    value, _ = quad(
        func,
        lo,
        hi,
        weight="alg",
        wvar=wvar,
        epsabs=TOLERANCES["quadrature_abs"],
        epsrel=TOLERANCES["quadrature_rel"],
        limit=MP_DEFAULTS["quadrature_limit"],
    )
    return value


def _mp_cdf_scalar(x: float, params: MPParams) -> float:
    a, b, r = params.a, params.b, params.r
    if x <= a:
        return 0.0
    if x >= b:
        return 1.0
    scale = 2.0 * math.pi * r
    # Integrate from whichever edge is nearer so the weight's square root
    # singularity sits at an endpoint of the integration interval.
    if x <= (a + b) / 2.0:
        if a == 0.0:
            lower = _quad(lambda t: math.sqrt(b - t) / scale, 0.0, x, (-0.5, 0.0))
        else:
            lower = _quad(lambda t: math.sqrt(b - t) / (scale * t), a, x, (0.5, 0.0))
        return min(1.0, max(0.0, lower))
    upper = _quad(lambda t: math.sqrt(t - a) / (scale * t), x, b, (0.0, 0.5))
    return min(1.0, max(0.0, 1.0 - upper))


def mp_cdf(x: Union[float, np.ndarray], params: MPParams) -> Union[float, np.ndarray]:
    """
    Marchenko-Pastur CDF by adaptive algebraic-weight quadrature

    Args:
        x: Point or array of points
        params: Law parameters

    Returns:
        float or np.ndarray: 0 below a, 1 above b, monotone in between
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return _mp_cdf_scalar(float(x), params)
    return np.array([_mp_cdf_scalar(float(value), params) for value in x.ravel()]).reshape(x.shape)


def mp_quantile(p: float, params: MPParams) -> float:
    """Inverse CDF by Brent root finding on [a, b]"""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(ERROR_MESSAGES["probability_range"].format(p=p))
    if p == 0.0:
        return params.a
    if p == 1.0:
        return params.b
    return brentq(
        lambda x: _mp_cdf_scalar(x, params) - p,
        params.a,
        params.b,
        xtol=TOLERANCES["quantile_xtol"],
    )


def mp_moment(order: int, params: MPParams) -> float:
    """
    k-th moment of the law; order 0 is the total mass

    The first two moments are 1 and 1 + r.
    """
    if order < 0:
        raise InvalidParameterError(ERROR_MESSAGES["negative_parameter"].format(name="order", value=order))
    scale = 2.0 * math.pi * params.r
    if params.a == 0.0:
        return _quad(lambda t: t ** order / scale, 0.0, params.b, (-0.5, 0.5))
    return _quad(lambda t: t ** (order - 1) / scale, params.a, params.b, (0.5, 0.5))


def ks_distance(sample: SpectrumLike, params: MPParams) -> float:
    """Kolmogorov-Smirnov distance between a spectrum and MP(r)"""
    values = _values(sample)
    result = stats.kstest(values, lambda x: mp_cdf(x, params))
    return float(result.statistic)


def empirical_density(sample: SpectrumLike, binning: Union[str, int] = "fd") -> Histogram:
    """
    Density-normalized histogram of a spectrum

    Args:
        sample: Eigenvalues
        binning: numpy bin rule or bin count; the Freedman-Diaconis rule falls
            back to ceil(sqrt(m)) bins when the interquartile range is zero up
            to roundoff or would ask for more bins than eigenvalues

    Returns:
        Histogram: edges and densities with sum(density * width) = 1
    """
    values = _values(sample)
    if values.size == 0:
        raise InvalidParameterError("Cannot build a histogram of an empty spectrum")
    bins = binning
    if binning == "fd":
        q75, q25 = np.percentile(values, [75, 25])
        iqr = float(q75 - q25)
        scale = max(1.0, float(np.max(np.abs(values))))
        if iqr <= TOLERANCES["iqr_degenerate"] * scale:
            bins = math.ceil(math.sqrt(values.size))
        else:
            width = 2.0 * iqr / values.size ** (1.0 / 3.0)
            if float(np.ptp(values)) / width > values.size:
                bins = math.ceil(math.sqrt(values.size))
    densities, edges = np.histogram(values, bins=bins, density=True)
    return Histogram(bin_edges=edges, densities=densities)


def support_violation_fraction(sample: SpectrumLike, params: MPParams, delta: float = 0.0) -> float:
    """Fraction of eigenvalues outside [a - delta, b + delta]"""
    values = _values(sample)
    outside = (values < params.a - delta) | (values > params.b + delta)
    return float(np.mean(outside))


def pool_spectra(samples: Iterable[SpectrumLike]) -> SpectralSample:
    """Merge several spectra into one sorted sample"""
    pooled = np.concatenate([_values(sample) for sample in samples])
    return SpectralSample(eigenvalues=pooled, m=len(pooled))


def log_gas_energy(
    eigenvalues: Sequence[float],
    potential: Optional[Callable[[float], float]] = None,
    conventional_signs: bool = False,
) -> float:
    """
    Log-gas energy of a spectrum

    Default signs: H = -sum V(l_i) - sum_{i<j} ln|l_i - l_j|.
    conventional_signs=True gives H = sum V(l_i) - sum_{i<j} ln|l_i - l_j|.
    potential=None means V = 0.

    Raises:
        DegenerateSpectrumError: two eigenvalues coincide
        InvalidParameterError: non-finite input
    """
    values = np.asarray(eigenvalues, dtype=float).ravel()
    if not np.all(np.isfinite(values)):
        raise InvalidParameterError(ERROR_MESSAGES["non_finite"])

    upper_i, upper_j = np.triu_indices(values.size, k=1)
    gaps = np.abs(values[upper_i] - values[upper_j])
    degenerate = np.flatnonzero(gaps == 0.0)
    if degenerate.size:
        i, j = int(upper_i[degenerate[0]]), int(upper_j[degenerate[0]])
        raise DegenerateSpectrumError(
            ERROR_MESSAGES["degenerate_spectrum"].format(i=i, j=j, value=float(values[i]))
        )
    interaction = float(np.sum(np.log(gaps)))

    confinement = 0.0
    if potential is not None:
        confinement = float(np.sum(np.fromiter((potential(value) for value in values), dtype=float)))
    if conventional_signs:
        return confinement - interaction
    return -confinement - interaction
