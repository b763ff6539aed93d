import math

import numpy as np
import pytest

from core.errors import MalformedInput, NonPositiveWeights, UnsupportedModel
from core.problem import TrilaterationProblem
from core.solver import cost_h, solve
from core.weights import (
    CustomPsi,
    GaussianDistance,
    LogNormalRss,
    Unit,
    build_weight_matrix,
    eval_h0,
    noise_model_from_dict,
    rss_to_distance_squared,
    weights_rss,
    weights_toa,
)


class TestWeightsToa:
    def test_single_distance(self):
        np.testing.assert_allclose(weights_toa([2.0], [1.0]).values, [1.0 / 16.0])

    def test_unit_distances(self):
        np.testing.assert_allclose(weights_toa([1.0, 1.0], [1.0, 1.0]).values, [0.25, 0.25])

    def test_shared_sigma(self):
        np.testing.assert_allclose(weights_toa([2.0, 1.0], 2.0).values, [1.0 / 64.0, 1.0 / 16.0])


class TestRss:
    def test_zero_exponent(self):
        assert rss_to_distance_squared(-40.0, -40.0, 2.0) == pytest.approx(1.0)

    def test_positive_and_negative_offsets(self):
        assert rss_to_distance_squared(-50.0, -40.0, 2.0) == pytest.approx(10.0)
        assert rss_to_distance_squared(-30.0, -40.0, 2.0) == pytest.approx(0.1)

    def test_vector_input(self):
        np.testing.assert_allclose(rss_to_distance_squared([-50.0, -40.0], -40.0, 2.0), [10.0, 1.0])

    def test_weights(self):
        assert weights_rss([10.0], 2.0, 5.0).values[0] == pytest.approx((10.0 / (50.0 * math.log(10))) ** 2)
        assert weights_rss([1.0], 2.0, 5.0).values[0] == pytest.approx(0.754, abs=5e-4)

    def test_sigma_scaling_leaves_solution_unchanged(self, rng):
        senders = rng.standard_normal((6, 3))
        truth = rng.standard_normal(3)
        d2 = np.sum((senders - truth) ** 2, axis=1) * np.exp(0.05 * rng.standard_normal(6))
        base = TrilaterationProblem.create(senders, np.sqrt(d2), weights_rss(d2, 2.5, 5.0))
        scaled = base.replace(weights=weights_rss(d2, 2.5, 50.0))
        np.testing.assert_allclose(solve(scaled).best, solve(base).best, atol=1e-9)


class TestBuildWeightMatrix:
    def test_identity(self):
        W = build_weight_matrix(np.ones(3), np.ones(3))
        np.testing.assert_array_equal(W.dense(), np.eye(3))

    def test_sqrt_transform_gives_toa_weights(self):
        d = np.array([1.0, 2.0, 4.0])
        W = build_weight_matrix(1.0 / (2.0 * d), np.ones(3))
        np.testing.assert_allclose(W.values, 1.0 / (4.0 * d**2))

    def test_correlated_precision(self):
        a, b, rho = 2.0, 3.0, 0.5
        W = build_weight_matrix([a, b], [[1.0, rho], [rho, 1.0]])
        np.testing.assert_allclose(W.dense(), [[a * a, a * b * rho], [a * b * rho, b * b]])
        assert not W.is_diagonal

    def test_diagonal_full_precision_uses_diagonal_storage(self):
        assert build_weight_matrix([1.0, 2.0], np.diag([1.0, 3.0])).is_diagonal

    def test_zero_derivative_rejected(self):
        with pytest.raises(NonPositiveWeights):
            build_weight_matrix([1.0, 0.0], [1.0, 1.0])

    def test_indefinite_precision_rejected(self):
        with pytest.raises(NonPositiveWeights):
            build_weight_matrix([1.0, 1.0], [[1.0, 2.0], [2.0, 1.0]])


class TestNoiseModels:
    def test_gaussian_matches_toa(self):
        d = np.array([1.0, 3.0])
        np.testing.assert_allclose(GaussianDistance(sigma=2.0).weight_matrix(d).values,
                                   weights_toa(d, 2.0).values)

    def test_generic_path_agrees_with_closed_form(self):
        d = np.array([1.5, 2.5])
        model = GaussianDistance(sigma=0.5)
        generic = build_weight_matrix(model.psi_prime(d**2), model.precision(2))
        np.testing.assert_allclose(generic.values, model.weight_matrix(d).values)

    def test_lognormal_matches_rss_weights(self):
        model = LogNormalRss(eta=(2.0, 3.0), c0=(-40.0, -45.0), sigma_rss=5.0)
        d = np.array([1.0, 2.0])
        np.testing.assert_allclose(model.weight_matrix(d).values, weights_rss(d**2, [2.0, 3.0], 5.0).values)

    def test_unit_model(self):
        np.testing.assert_array_equal(Unit().weight_matrix([1.0, 5.0]).values, [1.0, 1.0])

    def test_custom_psi_without_transform(self, triangle_problem):
        model = CustomPsi(psi_prime_at_d2=(1.0, 2.0, 3.0))
        np.testing.assert_allclose(model.weight_matrix([1.0, 1.0, 1.0]).values, [1.0, 4.0, 9.0])
        with pytest.raises(UnsupportedModel):
            eval_h0(np.zeros(2), triangle_problem, model)


class TestEvalH0:
    def test_zero_at_truth(self, random_problem):
        p, truth = random_problem
        assert eval_h0(truth, p, GaussianDistance()) == pytest.approx(0.0, abs=1e-20)

    def test_gaussian_equals_range_objective(self, random_problem):
        p, truth = random_problem
        x = truth + 0.1
        expected = np.sum((np.linalg.norm(x - p.senders, axis=1) - p.distances) ** 2)
        assert eval_h0(x, p, GaussianDistance()) == pytest.approx(expected)

    def test_single_sender(self):
        p = TrilaterationProblem.create([[0.0, 0.0]], [1.0])
        assert eval_h0([2.0, 0.0], p, GaussianDistance()) == pytest.approx(1.0)

    @pytest.mark.parametrize("model_name", ["toa", "rss"])
    def test_second_order_agreement_with_weighted_cost(self, model_name, rng):
        senders = rng.standard_normal((8, 3))
        x = rng.standard_normal(3)
        true_d = np.linalg.norm(senders - x, axis=1)
        if model_name == "toa":
            model = GaussianDistance(sigma=0.3)
        else:
            model = LogNormalRss(eta=tuple([2.2] * 8), c0=tuple([-40.0] * 8), sigma_rss=4.0)
        direction = rng.standard_normal(8)

        ratios = []
        for eps in (1e-2, 1e-3, 1e-4):
            d = true_d * (1.0 + eps * direction)
            p = TrilaterationProblem.create(senders, d, model.weight_matrix(d))
            h0 = eval_h0(x, p, model)
            ratios.append(abs(4.0 * cost_h(x, p) - h0) / h0)
        assert ratios[0] > ratios[1] > ratios[2]
        assert ratios[2] < 1e-3


class TestNoiseModelFromDict:
    def test_toa(self):
        model = noise_model_from_dict({"model": "toa", "sigma": 0.5})
        assert isinstance(model, GaussianDistance) and model.sigma == 0.5

    def test_rss(self):
        model = noise_model_from_dict({"model": "rss", "sigma_rss": 5,
                                       "per_sender": [{"eta": 2, "c0": -40}, {"eta": 3, "c0": -45}]})
        assert model.eta == (2.0, 3.0) and model.c0 == (-40.0, -45.0)

    def test_unknown_model(self):
        with pytest.raises(MalformedInput):
            noise_model_from_dict({"model": "laser"})

    def test_nonpositive_sigma(self):
        with pytest.raises(MalformedInput):
            noise_model_from_dict({"model": "toa", "sigma": 0})

    def test_missing_key(self):
        with pytest.raises(MalformedInput):
            noise_model_from_dict({"model": "rss", "per_sender": []})
