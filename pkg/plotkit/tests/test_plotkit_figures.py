import numpy as np
import pytest

from plotkit import (MissingColumnError, plot_error, plot_profiles,
                     plot_weights_and_marginal, select_times)
from plotkit.reader import load_columns, series_times


class TestReader:
    def test_load_columns(self, synthetic_dir):
        data = load_columns(synthetic_dir / "error.csv", ["t", "E"])
        assert np.allclose(data["t"], [0.0, 0.5, 1.0])
        assert np.allclose(data["E"], [0.05, 0.03, 0.02])

    def test_blank_field_is_nan(self, synthetic_dir):
        data = load_columns(synthetic_dir / "spatial.csv", ["vbulk"])
        assert np.isnan(data["vbulk"][-1])

    def test_missing_column_named(self, synthetic_dir):
        with pytest.raises(MissingColumnError, match="r9"):
            load_columns(synthetic_dir / "spatial.csv", ["t", "r9"])

    def test_empty_file(self, tmp_path):
        (tmp_path / "empty.csv").write_text("")
        with pytest.raises(ValueError):
            load_columns(tmp_path / "empty.csv", ["t"])

    def test_series_times(self, synthetic_dir):
        t = load_columns(synthetic_dir / "spatial.csv", ["t"])["t"]
        assert np.allclose(series_times(t), [0.0, 1.0])


class TestSelectTimes:
    def test_exact_match_no_warning(self):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert select_times([0.0, 1.0, 2.0], [1.0]) == [1.0]

    def test_out_of_range_warns_and_matches_nearest(self):
        with pytest.warns(UserWarning, match="nearest"):
            assert select_times([0.0, 1.0], [5.0]) == [1.0]

    def test_duplicates_collapse(self):
        assert select_times([0.0, 1.0], [0.0, 0.1, 1.0]) == [0.0, 1.0]


class TestProfiles:
    def test_single_time_renders(self, synthetic_dir):
        out = synthetic_dir / "fig.png"
        plot_profiles(synthetic_dir / "spatial.csv", [0.0], out)
        assert out.stat().st_size > 0

    def test_missing_column_error(self, synthetic_dir):
        bad = synthetic_dir / "bad.csv"
        bad.write_text("t,y1\n0.0,0.5\n")
        with pytest.raises(MissingColumnError, match="r1"):
            plot_profiles(bad, [0.0], synthetic_dir / "fig.png")

    def test_run_vbulk_within_speed_bounds(self, run_dir):
        data = load_columns(run_dir / "spatial.csv", ["vbulk"])
        vb = data["vbulk"][~np.isnan(data["vbulk"])]
        s_max = 2 * np.pi / 20
        assert np.all(vb >= 0.0) and np.all(vb <= s_max)
        out = run_dir / "profiles_check.png"
        plot_profiles(run_dir / "spatial.csv", [0.0], out)
        assert out.stat().st_size > 0


class TestWeightsAndMarginal:
    def test_constant_weights_render(self, synthetic_dir):
        out = synthetic_dir / "wm.png"
        plot_weights_and_marginal(synthetic_dir / "weights.csv",
                                  synthetic_dir / "speed_marginal.csv",
                                  [0.0, 1.0], out)
        assert out.stat().st_size > 0

    def test_initial_marginal_support(self, run_dir):
        data = load_columns(run_dir / "speed_marginal.csv", ["t", "y2", "r2"])
        t0 = data["t"] == data["t"].min()
        s_max = 2 * np.pi / 20
        alive = data["r2"][t0] > 0
        assert np.all(np.abs(data["y2"][t0][alive] - 0.3 * s_max) < 1 / 11)


class TestError:
    def test_monotone_input_renders(self, synthetic_dir):
        out = synthetic_dir / "err.png"
        plot_error(synthetic_dir / "error.csv", out)
        assert out.stat().st_size > 0

    def test_no_data_rows(self, tmp_path):
        (tmp_path / "error.csv").write_text("t,E\n")
        with pytest.raises(ValueError):
            plot_error(tmp_path / "error.csv", tmp_path / "err.png")

    def test_log_scale_drops_nonpositive(self, tmp_path):
        (tmp_path / "error.csv").write_text("t,E\n0.0,1.0\n1.0,-0.5\n2.0,0.1\n")
        out = tmp_path / "err.png"
        plot_error(tmp_path / "error.csv", out, log_scale=True)
        assert out.stat().st_size > 0
