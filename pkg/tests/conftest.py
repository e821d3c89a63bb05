"""
Pytest Configuration and Fixtures
Shared states, partitions and frozen Monte Carlo thresholds
"""
import pytest
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from gaussian_states import separable_product, thermal, two_mode_squeezed, vacuum
from models import PartitionSpec


# Wishart convergence thresholds, fixed from pilot runs at m=500, n=1000
WISHART_KS_THRESHOLD = 0.06
WISHART_SEEDS = list(range(10))


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep GAUSSMP_* variables and the run log out of the working tree"""
    monkeypatch.delenv("GAUSSMP_DEFAULT_TOL", raising=False)
    monkeypatch.delenv("GAUSSMP_MAX_WORKERS", raising=False)
    monkeypatch.setenv("GAUSSMP_RUN_LOG_PATH", str(tmp_path / "runs.db"))


@pytest.fixture
def second_mode():
    """Party B = mode 1 of a two-mode system"""
    return PartitionSpec(party_b_modes=[1])


@pytest.fixture
def vacuum_pair():
    return vacuum(2)


@pytest.fixture
def tmsv_one():
    """Two-mode squeezed vacuum, r = 1"""
    return two_mode_squeezed(1.0)


@pytest.fixture
def thermal_pair():
    return thermal([0.3, 1.7])


@pytest.fixture
def product_state():
    return separable_product(1, seed=7)


@pytest.fixture
def wishart_ks_threshold():
    return WISHART_KS_THRESHOLD


@pytest.fixture
def wishart_seeds():
    return WISHART_SEEDS
