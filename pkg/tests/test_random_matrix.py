"""
Unit tests for Wishart sampling, the Marchenko-Pastur law and spectral statistics
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.integrate import quad

from exceptions import DegenerateSpectrumError, InvalidParameterError
from models import MPParams, SpectralSample
from random_matrix import (
    empirical_density,
    ks_distance,
    log_gas_energy,
    mp_cdf,
    mp_moment,
    mp_params,
    mp_pdf,
    mp_quantile,
    pool_spectra,
    sample_wishart,
    support_violation_fraction,
    wishart_matrix,
)

RATIOS = [0.1, 0.25, 0.5, 0.75, 1.0]


def quarter_circle_cdf(x):
    """Closed-form CDF of MP(1)"""
    e = math.sqrt(x * (4 - x))
    return (math.pi + e - 2 * math.atan((2 - x) / e)) / (2 * math.pi)


class TestMPParams:
    """Test support edges"""

    def test_half_ratio_edges(self):
        params = MPParams(r=0.5)
        assert params.a == pytest.approx(1.5 - math.sqrt(2), abs=1e-15)
        assert params.b == pytest.approx(1.5 + math.sqrt(2), abs=1e-15)

    @pytest.mark.parametrize("r", [0.0, -0.5, 1.5])
    def test_out_of_range(self, r):
        with pytest.raises(ValidationError):
            MPParams(r=r)
        with pytest.raises(InvalidParameterError):
            mp_params(r)


class TestMPDensity:
    """Test mp_pdf"""

    def test_quarter_circle_value(self):
        assert mp_pdf(2.0, MPParams(r=1.0)) == pytest.approx(1 / (2 * math.pi), abs=1e-12)

    def test_zero_at_origin_for_unit_ratio(self):
        assert mp_pdf(0.0, MPParams(r=1.0)) == 0.0

    def test_outside_support(self):
        params = MPParams(r=0.5)
        assert mp_pdf(params.a - 1e-3, params) == 0.0
        assert mp_pdf(params.b + 1e-3, params) == 0.0
        assert mp_pdf(-1.0, params) == 0.0

    def test_vectorized_and_nonnegative(self):
        grid = np.linspace(-1, 5, 601)
        values = mp_pdf(grid, MPParams(r=0.3))
        assert values.shape == grid.shape
        assert np.all(values >= 0)

    @pytest.mark.parametrize("r", RATIOS)
    def test_integrates_to_one(self, r):
        params = MPParams(r=r)
        assert mp_moment(0, params) == pytest.approx(1.0, abs=1e-8)
        # plain QAGS on the density; the edge singularities cap its accuracy
        total, _ = quad(lambda x: mp_pdf(x, params), params.a, params.b, limit=200)
        assert total == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("r", RATIOS)
    def test_mean_is_one(self, r):
        assert mp_moment(1, MPParams(r=r)) == pytest.approx(1.0, abs=1e-7)

    @pytest.mark.parametrize("r", RATIOS)
    def test_second_moment(self, r):
        assert mp_moment(2, MPParams(r=r)) == pytest.approx(1.0 + r, abs=1e-7)


class TestMPCdf:
    """Test mp_cdf and mp_quantile"""

    def test_edges(self):
        params = MPParams(r=0.5)
        assert mp_cdf(params.a, params) == 0.0
        assert mp_cdf(0.0, params) == 0.0
        assert mp_cdf(params.b, params) == 1.0
        assert mp_cdf(params.b - 1e-12, params) == pytest.approx(1.0, abs=1e-8)

    def test_quarter_circle_at_two(self):
        value = mp_cdf(2.0, MPParams(r=1.0))
        assert value == pytest.approx(0.5 + 1 / math.pi, abs=1e-8)

    @pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 3.0, 3.99])
    def test_quarter_circle_closed_form(self, x):
        assert mp_cdf(x, MPParams(r=1.0)) == pytest.approx(quarter_circle_cdf(x), abs=1e-8)

    @pytest.mark.parametrize("r", [0.25, 1.0])
    def test_monotone_on_grid(self, r):
        params = MPParams(r=r)
        grid = np.linspace(params.a - 0.1, params.b + 0.1, 1000)
        values = mp_cdf(grid, params)
        assert np.all(np.diff(values) >= -1e-12)

    def test_branches_meet_at_midpoint(self):
        params = MPParams(r=0.4)
        mid = (params.a + params.b) / 2
        below, above = mp_cdf(mid, params), mp_cdf(np.nextafter(mid, 10.0), params)
        assert above - below == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("p", [0.05, 0.5, 0.95])
    def test_quantile_inverts_cdf(self, p):
        params = MPParams(r=0.5)
        assert mp_cdf(mp_quantile(p, params), params) == pytest.approx(p, abs=1e-10)

    def test_quantile_range(self):
        with pytest.raises(InvalidParameterError):
            mp_quantile(1.5, MPParams(r=0.5))


class TestWishart:
    """Test Wishart sampling"""

    def test_single_row_near_one(self):
        sample = sample_wishart(1, 100_000, seed=3)
        assert sample.eigenvalues[0] == pytest.approx(1.0, abs=0.05)

    def test_deterministic(self):
        first = sample_wishart(20, 40, seed=99).eigenvalues
        second = sample_wishart(20, 40, seed=99).eigenvalues
        assert np.array_equal(first, second)

    def test_matrix_is_symmetric(self):
        sigma = wishart_matrix(5, 10, seed=1)
        assert np.array_equal(sigma, sigma.T)

    def test_too_many_rows_rejected(self):
        with pytest.raises(InvalidParameterError):
            sample_wishart(10, 5, seed=1)

    def test_convergence_at_half_ratio(self, wishart_seeds, wishart_ks_threshold):
        m, n = 500, 1000
        params = MPParams(r=0.5)
        delta = 3 * m ** (-2 / 3)
        for seed in wishart_seeds:
            sample = sample_wishart(m, n, seed)
            assert ks_distance(sample, params) < wishart_ks_threshold
            assert np.mean(sample.eigenvalues) == pytest.approx(1.0, abs=0.05)
            assert support_violation_fraction(sample, params, delta) <= 2 / m

    def test_ks_shrinks_with_size(self, wishart_seeds):
        params = MPParams(r=0.5)
        small = np.median([ks_distance(sample_wishart(100, 200, seed), params) for seed in wishart_seeds])
        large = np.median([ks_distance(sample_wishart(800, 1600, seed), params) for seed in wishart_seeds])
        assert small > large


class TestKSDistance:
    """Test the KS conformity score"""

    def test_quantile_sample_is_close(self):
        params = MPParams(r=0.5)
        m = 50
        values = [mp_quantile(i / (m + 1), params) for i in range(1, m + 1)]
        assert ks_distance(values, params) <= 1 / (m + 1) + 1e-8

    def test_single_point_at_median(self):
        params = MPParams(r=0.5)
        assert ks_distance([mp_quantile(0.5, params)], params) == pytest.approx(0.5, abs=1e-8)

    def test_bounded(self):
        assert 0.0 <= ks_distance([100.0, 200.0], MPParams(r=0.5)) <= 1.0


class TestEmpiricalDensity:
    """Test histograms"""

    def test_normalized(self):
        sample = sample_wishart(200, 400, seed=5)
        histogram = empirical_density(sample)
        assert float(np.sum(histogram.densities * histogram.widths)) == pytest.approx(1.0, abs=1e-9)

    def test_constant_sample_single_bin(self):
        histogram = empirical_density(np.ones(4))
        assert int(np.count_nonzero(histogram.densities)) == 1

    def test_explicit_bin_count(self):
        histogram = empirical_density(np.linspace(0, 1, 50), binning=7)
        assert len(histogram.densities) == 7

    def test_roundoff_spread_uses_sqrt_rule(self):
        sample = np.array([0.1, 1.0, 1.0 + 1e-15, 1.0 + 2e-15, 1.0 + 3e-15, 5.0])
        histogram = empirical_density(sample)
        assert len(histogram.densities) == 3
        assert float(np.sum(histogram.densities * histogram.widths)) == pytest.approx(1.0, abs=1e-9)

    def test_bin_count_capped_by_sample_size(self):
        # narrow core with two far outliers
        sample = np.concatenate([[0.0, 100.0], 1.0 + 1e-9 * np.linspace(0.0, 1.0, 998)])
        histogram = empirical_density(sample)
        assert len(histogram.densities) == 32


class TestLogGasEnergy:
    """Test the log-gas energy"""

    def test_unit_gap(self):
        assert log_gas_energy([0.0, 1.0]) == pytest.approx(0.0, abs=1e-15)

    def test_gap_of_two(self):
        assert log_gas_energy([0.0, 2.0]) == pytest.approx(-math.log(2), abs=1e-15)

    def test_degenerate_pair(self):
        with pytest.raises(DegenerateSpectrumError):
            log_gas_energy([1.0, 1.0])

    def test_potential_sign_conventions(self):
        potential = lambda x: x ** 2
        literal = log_gas_energy([0.0, 2.0], potential)
        conventional = log_gas_energy([0.0, 2.0], potential, conventional_signs=True)
        assert literal == pytest.approx(-4.0 - math.log(2))
        assert conventional == pytest.approx(4.0 - math.log(2))

    def test_three_points(self):
        expected = -(math.log(1) + math.log(3) + math.log(2))
        assert log_gas_energy([0.0, 1.0, 3.0]) == pytest.approx(expected)


class TestPooling:
    """Test spectrum aggregation"""

    def test_pool_sorts_and_counts(self):
        pooled = pool_spectra([[3.0, 1.0], np.array([2.0]), SpectralSample(eigenvalues=[0.5], m=1)])
        assert pooled.m == 4
        np.testing.assert_array_equal(pooled.eigenvalues, [0.5, 1.0, 2.0, 3.0])

    def test_violation_fraction(self):
        params = MPParams(r=0.5)
        assert support_violation_fraction([0.01, 1.0, 1.2, 5.0], params) == pytest.approx(0.5)
