import io
import json
import math

import numpy as np
import pytest

from oscillent import (
    GridOutOfRange,
    IoFailure,
    entropy_timeseries,
    mixing_angle,
    schmidt_number,
    schmidt_spectrum,
    von_neumann_entropy,
)
from oscillent.sweeps import (
    THREADS_ENV,
    SweepTable,
    emit,
    sweep_coupling,
    sweep_dynamics,
    sweep_theta,
    to_csv,
    to_json,
    worker_count,
)


def sv(pair, s):
    return von_neumann_entropy(schmidt_spectrum(pair, s))


class TestThetaSweep:
    def test_first_excited_values(self):
        table = sweep_theta([(0, 1)], [-0.5, 0.0, 0.5])
        assert table.columns == ("sin_theta", "S_v_0_1", "K_0_1")
        np.testing.assert_allclose(table.column("S_v_0_1"), [0.5623, 0.6931, 0.5623], atol=1e-4)
        assert len(table) == 3

    def test_ground_state_flat(self):
        table = sweep_theta([(0, 0)], np.linspace(-0.9, 0.9, 11))
        assert np.all(table.column("S_v_0_0") == 0.0)
        assert np.all(table.column("K_0_0") == 1.0)

    def test_optimum_location(self):
        grid = np.linspace(-0.999, 0.999, 999)
        table = sweep_theta([(2, 2)], grid)
        peak = grid[np.argmax(table.column("S_v_2_2"))]
        assert 0.30 <= abs(peak) <= 0.50

    def test_rows_recomputable(self):
        table = sweep_theta([(1, 2), (3, 0)], [-0.7, -0.1, 0.2, 0.8], workers=3)
        for row in table.rows:
            s = row[0]
            for j, pair in enumerate([(1, 2), (3, 0)]):
                spec = schmidt_spectrum(pair, s)
                assert row[1 + 2 * j] == pytest.approx(von_neumann_entropy(spec), abs=1e-12)
                assert row[2 + 2 * j] == pytest.approx(schmidt_number(spec), abs=1e-12)

    def test_exchange_mirror(self):
        grid = np.linspace(-0.95, 0.95, 39)
        table = sweep_theta([(1, 4), (4, 1)], grid)
        np.testing.assert_allclose(table.column("S_v_1_4"), table.column("S_v_4_1")[::-1], atol=1e-10)

    @pytest.mark.parametrize(
        "grid", [[0.1], [-1.0, 0.0, 0.5], [0.2, 0.1, 0.3], [0.0, 0.0, 0.1], [0.5, 1.2]]
    )
    def test_bad_grid(self, grid):
        with pytest.raises(GridOutOfRange):
            sweep_theta([(1, 1)], grid)

    def test_no_pairs(self):
        with pytest.raises(ValueError):
            sweep_theta([], [0.1, 0.2])

    def test_worker_count_invariance(self):
        grid = np.linspace(-0.9, 0.9, 41)
        one = to_csv(sweep_theta([(2, 3)], grid, workers=1))
        many = to_csv(sweep_theta([(2, 3)], grid, workers=8))
        assert one == many


class TestCouplingSweep:
    def test_weak_coupling_separable(self):
        table = sweep_coupling((2, 2), 0.97, [1e-6, 1e-3, 0.3])
        S = table.column("S_v")
        assert S[0] < 1e-6
        assert S[0] < S[1] < S[2]
        assert table.column("sin_theta")[0] == pytest.approx(1.0, abs=1e-8)

    def test_plateau(self):
        table = sweep_coupling((5, 5), 0.999, [0.1, 0.3])
        frozen = sv((5, 5), 0.0)
        assert abs(table.column("S_v")[-1] - frozen) / frozen < 0.01

    def test_slower_rise_for_larger_anisotropy(self):
        r = [0.002, 0.005, 0.01, 0.02, 0.05]
        low = sweep_coupling((0, 3), 0.97, r).column("S_v")
        high = sweep_coupling((0, 3), 0.999, r).column("S_v")
        assert np.all(low < high)

    def test_columns_follow_mixing_angle(self):
        table = sweep_coupling((1, 2), 0.9, [0.1, 0.2, 0.4])
        for r, s, S, K in table.rows:
            assert s == pytest.approx(math.sin(mixing_angle(0.9, r)), abs=1e-15)
            assert S == pytest.approx(sv((1, 2), s), abs=1e-12)

    def test_metadata(self):
        table = sweep_coupling((1, 1), 0.97, [0.1, 0.2])
        assert table.metadata["R"] == 0.97
        assert table.metadata["r_grid"]["steps"] == 2

    def test_rejects_closed_interval(self):
        with pytest.raises(GridOutOfRange):
            sweep_coupling((1, 1), 0.97, [0.0, 0.5])


class TestDynamicsSweep:
    t = np.linspace(0.0, 4 * math.pi, 17)

    def test_quarter_period_entropy(self):
        table = sweep_dynamics((0, 1), [0.0], self.t)
        i = int(np.argmin(np.abs(table.column("t_tilde") - math.pi / 2)))
        assert table.column("S_v")[i] == pytest.approx(math.log(2), abs=1e-10)

    def test_separable_start(self):
        table = sweep_dynamics((1, 2), [0.1, 0.5], self.t)
        starts = table.column("S_v")[table.column("t_tilde") == 0.0]
        assert np.all(np.abs(starts) < 1e-12)

    def test_revival(self):
        table = sweep_dynamics((0, 3), [0.1], [0.0, math.pi, 2 * math.pi])
        assert abs(table.column("S_v")[-1]) < 1e-8

    def test_long_format_and_lambdas(self):
        table = sweep_dynamics((1, 1), [0.2, 0.4], self.t, include_lambdas=True)
        assert table.columns == ("sin_theta", "t_tilde", "S_v", "lambda_0", "lambda_1", "lambda_2")
        assert len(table) == 2 * self.t.size
        series = entropy_timeseries((1, 1), 0.4, self.t)
        block = table.data[self.t.size:]
        np.testing.assert_allclose(block[:, 2], series.entropy, atol=1e-12)
        np.testing.assert_allclose(block[:, 3:], series.lambdas, atol=1e-12)


class TestTable:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            SweepTable("theta_sweep", ("a", "b"), np.array([[0.1, np.nan]]))

    def test_rejects_kind(self):
        with pytest.raises(ValueError):
            SweepTable("other", ("a",), np.zeros((1, 1)))


class TestEmit:
    @pytest.fixture
    def table(self):
        return sweep_theta([(0, 1)], [-0.5, 0.0, 0.5])

    def test_csv_lines(self, table, tmp_path):
        path = tmp_path / "t.csv"
        emit(table, "csv", path)
        raw = path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert len(lines) == 4
        assert lines[0] == "sin_theta,S_v_0_1,K_0_1"
        assert lines[2] == "0,0.69314718056,2"

    def test_twelve_digits(self, table):
        row = to_csv(table).splitlines()[1].split(",")
        assert row[1] == format(sv((0, 1), -0.5), ".12g")

    def test_byte_identical(self, table, tmp_path):
        emit(table, "csv", tmp_path / "a.csv")
        emit(table, "csv", tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_json_mirrors_columns(self, table):
        doc = json.loads(to_json(table))
        assert doc["kind"] == "theta_sweep"
        assert list(doc["columns"]) == list(table.columns)
        np.testing.assert_allclose(doc["columns"]["S_v_0_1"], table.column("S_v_0_1"), rtol=1e-11)
        assert doc["metadata"]["pairs"] == [[0, 1]]

    def test_stream_destination(self, table):
        buf = io.StringIO()
        emit(table, "csv", buf)
        assert buf.getvalue() == to_csv(table)

    def test_svg_deterministic(self, table, tmp_path):
        emit(table, "svg", tmp_path / "a.svg")
        emit(table, "svg", tmp_path / "b.svg")
        a = (tmp_path / "a.svg").read_bytes()
        assert a.lstrip().startswith(b"<?xml") and b"<svg" in a
        assert a == (tmp_path / "b.svg").read_bytes()

    def test_svg_dynamics(self, tmp_path):
        table = sweep_dynamics((0, 1), [0.1, 0.5], np.linspace(0, 6, 13))
        emit(table, "svg", tmp_path / "d.svg")
        assert (tmp_path / "d.svg").stat().st_size > 0

    def test_io_failure(self, table, tmp_path):
        with pytest.raises(IoFailure):
            emit(table, "csv", tmp_path / "missing" / "t.csv")

    def test_unknown_format(self, table):
        with pytest.raises(ValueError):
            emit(table, "xlsx")

    def test_validation_before_write(self, tmp_path):
        path = tmp_path / "never.csv"
        with pytest.raises(ValueError):
            emit(sweep_theta([], [0.1, 0.2]), "csv", path)
        assert not path.exists()


class TestWorkers:
    def test_env_value(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert worker_count() == 3

    def test_default(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert worker_count() >= 1

    @pytest.mark.parametrize("raw", ["0", "-2", "many"])
    def test_rejects_bad_values(self, monkeypatch, raw):
        monkeypatch.setenv(THREADS_ENV, raw)
        with pytest.raises(ValueError):
            worker_count()
