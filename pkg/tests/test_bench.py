import numpy as np
import pytest

from core.bench import (
    SOLVERS,
    SynthConfig,
    TrialResult,
    gen_degenerate,
    gen_synthetic,
    run_degen_experiment,
    run_noise_experiment,
    run_timing,
    run_trial,
    trial_rng,
)
from core.baselines import RefineOptions
from core.bench import experiments
from core.errors import MalformedInput


class TestSynthetic:
    def test_same_key_same_instance(self):
        cfg = SynthConfig(dim=3, sender_count=10, noise_sigma=0.01, seed=7)
        p1, x1 = gen_synthetic(cfg, trial=3, stream=1)
        p2, x2 = gen_synthetic(cfg, trial=3, stream=1)
        np.testing.assert_array_equal(p1.senders, p2.senders)
        np.testing.assert_array_equal(p1.distances, p2.distances)
        np.testing.assert_array_equal(x1, x2)

    def test_different_trials_differ(self):
        cfg = SynthConfig(seed=7)
        p1, _ = gen_synthetic(cfg, trial=0)
        p2, _ = gen_synthetic(cfg, trial=1)
        assert not np.array_equal(p1.senders, p2.senders)

    def test_weights_follow_distances(self):
        p, _ = gen_synthetic(SynthConfig(noise_sigma=0.1, seed=1))
        np.testing.assert_allclose(p.weights.values, 1.0 / (4.0 * p.distances**2))

    def test_scale_zero_is_coplanar(self):
        p, truth = gen_degenerate(0.0, seed=3)
        assert p.senders.shape == (6, 3)
        np.testing.assert_array_equal(p.senders[:, 0], 0.0)
        np.testing.assert_allclose(p.distances, np.linalg.norm(p.senders - truth, axis=1))

    def test_noise_standard_deviation(self):
        cfg = SynthConfig(dim=3, sender_count=10, noise_sigma=0.1, seed=11)
        residuals = []
        for trial in range(300):
            p, truth = gen_synthetic(cfg, trial=trial)
            residuals.append(p.distances - np.linalg.norm(p.senders - truth, axis=1))
        residuals = np.concatenate(residuals)
        assert np.std(residuals) == pytest.approx(0.1, rel=0.05)
        assert abs(np.mean(residuals)) < 0.01

    @pytest.mark.parametrize("kwargs", [{"dim": 0}, {"sender_count": 0}, {"noise_sigma": -1.0},
                                        {"degenerate_scale": 2.0}])
    def test_rejects_bad_config(self, kwargs):
        with pytest.raises(MalformedInput):
            SynthConfig(**kwargs)

    def test_trial_rng_reproducible(self):
        a = trial_rng(5, 0, 9).standard_normal(4)
        b = trial_rng(5, 0, 9).standard_normal(4)
        c = trial_rng(5, 1, 9).standard_normal(4)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)


class TestTrials:
    def test_trial_result_picks_closest(self):
        truth = np.zeros(2)
        result = TrialResult.from_points([np.array([1.0, 0.0]), np.array([0.0, 1e-8])], truth, runtime=0.0)
        assert result.error == pytest.approx(1e-8)
        assert result.success

    def test_no_points_is_failure(self):
        result = TrialResult.from_points([], np.zeros(2), runtime=0.0)
        assert result.error == float("inf")
        assert not result.success

    @pytest.mark.parametrize("solver", sorted(SOLVERS))
    def test_noiseless_trial(self, solver):
        p, truth = gen_synthetic(SynthConfig(seed=2))
        result = run_trial(p, truth, solver)
        assert result.success
        assert result.runtime >= 0.0

    def test_failure_is_inf(self):
        p, truth = gen_synthetic(SynthConfig(dim=3, sender_count=3, seed=2))
        result = run_trial(p, truth, "linear")
        assert result.error == float("inf")
        assert not result.success


class TestExperiments:
    def test_single_noiseless_trial(self):
        result = run_noise_experiment([0.0], 1, seed=1, solvers=("alg2", "linear"), progress=False, threads=1)
        assert list(result.summary.columns) == ["sigma", "solver", "mean", "median", "q1", "q3"]
        assert list(result.summary["solver"]) == ["alg2", "linear"]
        assert (result.summary["median"] < 1e-8).all()

    def test_noise_summary_is_normalized(self):
        result = run_noise_experiment([0.01, 0.1], 20, seed=4, solvers=("alg2",), progress=False, threads=1)
        assert list(result.summary["sigma"]) == [0.01, 0.1]
        # errors scale with sigma, so normalized medians are of order one
        assert (result.summary["median"] < 10.0).all()
        assert (result.summary["q1"] <= result.summary["median"]).all()
        assert (result.summary["median"] <= result.summary["q3"]).all()

    def test_same_seed_same_summary(self):
        kwargs = dict(seed=9, solvers=("alg2", "alg1"), progress=False, threads=1)
        first = run_degen_experiment([1.0, 1e-3], 5, **kwargs)
        second = run_degen_experiment([1.0, 1e-3], 5, **kwargs)
        np.testing.assert_array_equal(first.trials["error"].to_numpy(), second.trials["error"].to_numpy())

    def test_parallel_matches_serial(self):
        kwargs = dict(seed=3, solvers=("alg2", "linear"), progress=False)
        serial = run_noise_experiment([0.05], 8, threads=1, **kwargs)
        parallel = run_noise_experiment([0.05], 8, threads=2, **kwargs)
        np.testing.assert_array_equal(serial.trials["error"].to_numpy(), parallel.trials["error"].to_numpy())

    def test_degenerate_near_planar(self):
        result = run_degen_experiment([1e-7], 20, seed=5, solvers=("alg2",), progress=False, threads=1)
        row = result.summary.iloc[0]
        assert row["median_error"] < 1e-6
        assert row["success_rate"] >= 0.95

    def test_rejects_empty_sweep(self):
        with pytest.raises(MalformedInput):
            run_noise_experiment([], 10, progress=False)
        with pytest.raises(MalformedInput):
            run_degen_experiment([1.0], 0, progress=False)

    def test_rejects_unknown_solver(self):
        with pytest.raises(MalformedInput):
            run_noise_experiment([0.1], 1, solvers=("magic",), progress=False)

    def test_timing_needs_hundred_reps(self):
        with pytest.raises(MalformedInput):
            run_timing([4], 99, progress=False)

    def test_timing_summary(self):
        result = run_timing([4, 10], 100, solvers=("alg2",), progress=False)
        assert list(result.summary.columns) == ["m", "solver", "median_seconds", "reps"]
        assert list(result.summary["m"]) == [4, 10]
        assert (result.summary["median_seconds"] > 0).all()


class TestMlReference:
    def test_iteration_cap_scores_last_iterate(self, monkeypatch):
        monkeypatch.setattr(experiments, "_ML_REFERENCE", RefineOptions(max_iter=1))
        p, truth = gen_synthetic(SynthConfig(dim=3, sender_count=10, noise_sigma=0.1, seed=4))
        result = run_trial(p, truth, "ml", ml_init="linear")
        assert np.isfinite(result.error)

    def test_policy_recorded_in_metadata(self):
        result = run_noise_experiment([0.1], 2, seed=1, solvers=("ml",), progress=False, threads=1)
        assert result.metadata["ml_max_iter"] == experiments.ML_BENCH_MAX_ITER
        assert result.metadata["ml_at_iteration_cap"] == "last_iterate"
        assert np.isfinite(result.summary["mean"]).all()


@pytest.mark.parametrize("runner, values", [(run_noise_experiment, [0.1, 0.1]),
                                            (run_degen_experiment, [1.0, 1e-3, 1.0])])
def test_rejects_repeated_sweep_values(runner, values):
    with pytest.raises(MalformedInput):
        runner(values, 1, progress=False, threads=1)
