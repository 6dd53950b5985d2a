import json

import numpy as np
import pytest

from pfa.harness import (
    ExperimentConfig,
    load_output,
    read_matrix_csv,
    read_vector_csv,
    run_convergence,
    run_estimate,
    run_experiment,
    write_output,
)
from pfa.linalg import equal_correlation
from pfa.simulate import Scenario


def small_config(**overrides):
    base = dict(
        scenario=Scenario(kind="two_factor", p=80, n=40, p1=5),
        t_grid=(0.01, 0.05),
        n_reps=8,
        seed=99,
        n_mc=400,
        with_estimators=True,
        control_alpha=0.1,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


class TestExperimentConfig:
    def test_round_trip(self):
        config = small_config()
        assert ExperimentConfig.from_dict(config.to_dict()) == config

    def test_validation(self):
        with pytest.raises(ValueError):
            small_config(t_grid=())
        with pytest.raises(ValueError):
            small_config(t_grid=(0.0,))
        with pytest.raises(ValueError):
            small_config(n_reps=0)
        with pytest.raises(ValueError):
            small_config(placement="middle")


class TestRunExperiment:
    def test_deterministic_records(self):
        config = small_config()
        first = run_experiment(config)
        second = run_experiment(config)
        assert first.records == second.records
        assert first.aggregates == second.aggregates

    def test_thread_count_does_not_change_output(self, monkeypatch):
        config = small_config()
        baseline = run_experiment(config)
        monkeypatch.setenv("PFA_THREADS", "3")
        threaded = run_experiment(config)
        assert baseline.records == threaded.records
        assert baseline.aggregates == threaded.aggregates

    def test_estimator_columns_optional(self):
        output = run_experiment(small_config(with_estimators=False, control_alpha=None))
        row = output.records[0]
        assert row["fdp_pfa"] is None
        assert row["fdp_bh_proc"] is None
        summary = output.aggregates["per_t"][repr(0.01)]
        assert "mean_fdp_pfa" not in summary
        assert "mean_V" in summary

    def test_random_placement_logged(self):
        output = run_experiment(small_config(placement="random"))
        placed = output.aggregates["false_nulls"]
        assert len(placed) == 5
        assert placed == sorted(placed)
        assert placed != [0, 1, 2, 3, 4]

    def test_aggregates_embed_config_seed_version(self):
        output = run_experiment(small_config())
        assert output.aggregates["config"]["seed"] == 99
        assert output.aggregates["version"]
        assert output.aggregates["config"]["scenario"]["kind"] == "two_factor"


class TestOutputFiles:
    def test_write_then_load_round_trip(self, tmp_path):
        output = run_experiment(small_config())
        write_output(output, tmp_path)
        loaded = load_output(tmp_path)
        assert loaded.records == output.records
        assert loaded.aggregates == output.aggregates

    def test_byte_identical_reruns(self, tmp_path):
        config = small_config()
        write_output(run_experiment(config), tmp_path / "a")
        write_output(run_experiment(config), tmp_path / "b")
        for name in ("records.csv", "aggregates.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_loader_rejects_tampered_aggregates(self, tmp_path):
        output = run_experiment(small_config())
        write_output(output, tmp_path)
        path = tmp_path / "aggregates.json"
        data = json.loads(path.read_text())
        key = repr(0.01)
        data["per_t"][key]["mean_V"] = data["per_t"][key]["mean_V"] + 0.5
        path.write_text(json.dumps(data))
        with pytest.raises(ValueError, match="mean_V"):
            load_output(tmp_path)


class TestRunEstimate:
    def test_identity_reduces_to_count_ratio(self):
        rng = np.random.default_rng(21)
        p, t = 400, 0.05
        sigma = equal_correlation(p, 0.0)
        z = rng.standard_normal(p)
        # epsilon above 1/sqrt(p) so the selection rule keeps zero factors
        report = run_estimate(z, sigma, t=t, epsilon=0.06)
        assert report["k"] == 0
        rejected = report["R"]
        assert report["fdp"] == pytest.approx(min(p * t, rejected) / rejected, rel=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            run_estimate(np.ones(3), equal_correlation(4, 0.0), t=0.05)

    def test_reports_fit_metadata(self):
        rng = np.random.default_rng(22)
        scenario = Scenario(kind="two_factor", p=60, n=80, p1=4)
        from pfa.simulate import generate_design, make_test_statistics, sample_correlation

        design = generate_design(scenario, rng)
        sigma, sds = sample_correlation(design)
        instance = make_test_statistics(sigma, sds, scenario, rng)
        report = run_estimate(instance.z, sigma, t=0.02)
        assert report["k"] >= 1
        assert report["m"] == 45
        assert len(report["w_hat"]) == report["k"]
        assert 0.0 <= report["fdp"] <= 1.0
        assert report["lad"]["iterations"] >= 1


class TestRunConvergence:
    def test_zero_replications_rejected(self):
        with pytest.raises(ValueError):
            run_convergence(
                scenario=Scenario(kind="two_factor", p=50, n=40, p1=5),
                p_grid=(50,),
                t_grid=(0.05,),
                n_reps=0,
                seed=1,
            )

    def test_emits_histograms_and_ks(self, tmp_path):
        summary = run_convergence(
            scenario=Scenario(kind="two_factor", p=40, n=30, p1=4),
            p_grid=(40, 60),
            t_grid=(0.05, 0.1),
            n_reps=50,
            seed=4,
            out_dir=tmp_path,
        )
        for t in ("0.05", "0.1"):
            assert set(summary["ks"][t].keys()) == {"40", "60"}
        files = sorted(path.name for path in tmp_path.iterdir())
        assert "convergence_summary.json" in files
        assert "convergence_p40_t0.05.csv" in files
        text = (tmp_path / "convergence_p40_t0.05.csv").read_text().splitlines()
        assert text[0] == "bin_left,bin_right,count_empirical,count_limit"
        assert len(text) == 51
        counts = np.array([[int(c) for c in line.split(",")[2:]] for line in text[1:]])
        assert counts.sum(axis=0).tolist() == [50, 50]


class TestFileReaders:
    def test_matrix_parse_error_carries_line(self, tmp_path):
        path = tmp_path / "sigma.csv"
        path.write_text("1.0,0.5\n0.5,oops\n")
        with pytest.raises(ValueError, match=r"sigma\.csv:2"):
            read_matrix_csv(path)

    def test_matrix_ragged_rows(self, tmp_path):
        path = tmp_path / "sigma.csv"
        path.write_text("1.0,0.5\n0.5\n")
        with pytest.raises(ValueError, match=":2"):
            read_matrix_csv(path)

    def test_vector_parse_error_carries_line(self, tmp_path):
        path = tmp_path / "z.csv"
        path.write_text("0.1\nbad\n")
        with pytest.raises(ValueError, match=r"z\.csv:2"):
            read_vector_csv(path)

    def test_round_trip_files(self, tmp_path):
        sigma = equal_correlation(4, 0.25)
        matrix_path = tmp_path / "sigma.csv"
        matrix_path.write_text(
            "\n".join(",".join(repr(float(v)) for v in row) for row in sigma.entries) + "\n"
        )
        loaded = read_matrix_csv(matrix_path)
        np.testing.assert_array_equal(loaded.entries, sigma.entries)
