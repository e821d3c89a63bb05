"""
Unit tests for the sqlite run log and file formats
"""
import json

import numpy as np
import pytest

from formats import (
    read_eigenvalues_csv,
    read_state,
    state_from_dict,
    state_to_dict,
    write_eigenvalues_csv,
    write_histogram_csv,
    write_state,
)
from gaussian_states import random_mixed
from models import Histogram, QuadratureOrdering, RunConfig
from run_log import RunLog


@pytest.fixture
def run_log(tmp_path):
    return RunLog(str(tmp_path / "test_runs.db"))


class TestRunLog:
    """Test RunLog"""

    def test_run_id_format(self, run_log):
        run_id = run_log.generate_run_id()
        assert run_id.startswith("RUN-")
        assert len(run_id.split("-")[2]) == 8

    def test_start_and_finish(self, run_log):
        run_id = run_log.start_run(RunConfig(command="wishart", seed=5, extra={"m": 10, "n": 20}))
        assert run_log.get_run(run_id)["status"] == "running"

        assert run_log.finish_run(run_id, 0, {"mean": 1.0})
        run = run_log.get_run(run_id)
        assert run["status"] == "completed"
        assert run["exit_code"] == 0
        assert run["summary"] == {"mean": 1.0}
        assert run["args"]["seed"] == 5
        assert run["args"]["extra"] == {"m": 10, "n": 20}
        assert run["finished_at"] >= run["started_at"]

    def test_entangled_exit_is_not_an_error(self, run_log):
        run_id = run_log.start_run(RunConfig(command="check"))
        run_log.finish_run(run_id, 1, {"verdict": "Entangled"})
        assert run_log.get_run(run_id)["status"] == "completed"

    def test_error_status(self, run_log):
        run_id = run_log.start_run(RunConfig(command="check"))
        run_log.finish_run(run_id, 2, {"error": "boom"})
        assert run_log.get_run(run_id)["status"] == "error"

    def test_finish_without_start(self, run_log):
        assert run_log.finish_run(None, 0, {}) is False

    def test_unknown_run(self, run_log):
        assert run_log.get_run("RUN-00000000-NOTHING") is None

    def test_recent_runs_latest_first(self, run_log):
        ids = [run_log.start_run(RunConfig(command=name)) for name in ("gen-state", "check", "compare")]
        recent = run_log.recent_runs(limit=2)
        assert [run["run_id"] for run in recent] == [ids[2], ids[1]]

    def test_reopen_keeps_runs(self, tmp_path):
        path = str(tmp_path / "persist.db")
        run_id = RunLog(path).start_run(RunConfig(command="spectrum"))
        assert RunLog(path).get_run(run_id)["command"] == "spectrum"


class TestStateFiles:
    """Test the shared state schema"""

    def test_write_then_read(self, tmp_path):
        state = random_mixed(2, seed=31, noise=0.2)
        path = tmp_path / "state.json"
        write_state(state, path)
        loaded = read_state(path)
        assert np.array_equal(loaded.cov.matrix, state.cov.matrix)
        assert loaded.seed == 31
        assert loaded.kind == state.kind

    def test_schema_keys(self, tmsv_one):
        assert set(state_to_dict(tmsv_one)) == {"n_modes", "ordering", "matrix", "mean", "kind", "params", "seed"}

    def test_minimal_document(self):
        state = state_from_dict({"n_modes": 1, "matrix": [[0.5, 0.0], [0.0, 0.5]]})
        assert state.cov.ordering == QuadratureOrdering.INTERLEAVED
        assert np.array_equal(state.mean, np.zeros(2))
        assert state.kind is None

    def test_missing_field(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"ordering": "interleaved"}))
        with pytest.raises(ValueError):
            read_state(path)


class TestCsvFiles:
    """Test CSV writers"""

    def test_eigenvalues_keep_full_precision(self, tmp_path):
        values = np.array([1.0 / 3.0, np.pi, 1e-17])
        path = tmp_path / "eig.csv"
        write_eigenvalues_csv(values, path)
        assert np.array_equal(read_eigenvalues_csv(path), values)

    def test_histogram_rows(self, tmp_path):
        histogram = Histogram(bin_edges=[0.0, 1.0, 2.0], densities=[0.25, 0.75])
        path = tmp_path / "hist.csv"
        write_histogram_csv(histogram, path)
        assert path.read_text().splitlines() == [
            "bin_left,bin_right,density",
            "0,1,0.25",
            "1,2,0.75",
        ]
