import json

import numpy as np
import pytest

from uqual.models import LinearModel, ModelOutput, ProductModel
from uqual.sensitivity import (
    brute_force_sobol,
    estimate_sobol,
    sobol_result_from_dict,
    sobol_result_to_csv,
    sobol_result_to_dict,
)

from conftest import unit_space

# Analytic oracles on U(0,1)^2.
#
# linear f = 2*x1 + x2:   V = 4/12 + 1/12 = 5/12, S1 = ST = (0.8, 0.2)
# product f = x1*x2:      V = E[x^2]^2 - E[x]^4 = 1/9 - 1/16 = 7/144
#                         V1 = Var(x1/2) = 1/48 = 3/144 -> S1 = 3/7
#                         ST1 = 1 - V2/V = 4/7
LINEAR_S1 = (0.8, 0.2)
PRODUCT_S1 = 3.0 / 7.0
PRODUCT_ST = 4.0 / 7.0
PRODUCT_VARIANCE = 7.0 / 144.0


class TestEstimateSobol:
    def test_linear_first_order(self):
        space = unit_space(2)
        result = estimate_sobol(LinearModel([2, 1]), space, n=10_000, seed=1)
        assert result.s1[0] == pytest.approx(LINEAR_S1[0], abs=0.05)
        assert result.s1[1] == pytest.approx(LINEAR_S1[1], abs=0.05)
        # additive model: S1 ~ ST
        assert abs(result.s1[0] - result.st[0]) < 0.05
        assert abs(result.s1[1] - result.st[1]) < 0.05

    def test_product_interaction(self):
        space = unit_space(2)
        result = estimate_sobol(ProductModel(), space, n=10_000, seed=2)
        assert result.s1[0] == pytest.approx(PRODUCT_S1, abs=0.05)
        assert result.st[0] == pytest.approx(PRODUCT_ST, abs=0.05)
        assert result.total_variance == pytest.approx(PRODUCT_VARIANCE, rel=0.1)

    def test_inactive_parameter_near_zero(self):
        space = unit_space(2)
        result = estimate_sobol(LinearModel([1, 0]), space, n=10_000, seed=3)
        assert result.s1[1] == pytest.approx(0.0, abs=0.05)
        assert result.st[1] == pytest.approx(0.0, abs=0.05)

    def test_constant_model_degenerate(self):
        space = unit_space(2)
        result = estimate_sobol(lambda p: ModelOutput(2.0), space, n=100, seed=1)
        assert result.degenerate
        assert result.s1 == (0.0, 0.0)
        assert result.total_variance == 0.0

    def test_error_decreases_with_n(self):
        # Convergence ladder: median absolute S1 error over 20 seeds must
        # decrease monotonically for n in {1e2, 1e3, 1e4}.
        space = unit_space(2)
        model = LinearModel([2, 1])
        medians = []
        for n in (100, 1_000, 10_000):
            errors = []
            for seed in range(20):
                result = estimate_sobol(model, space, n=n, seed=seed)
                errors.append(abs(result.s1[0] - 0.8) + abs(result.s1[1] - 0.2))
            medians.append(float(np.median(errors)))
        assert medians[0] > medians[1] > medians[2]

    def test_deterministic_and_worker_independent(self):
        space = unit_space(2)
        a = estimate_sobol(ProductModel(), space, n=500, seed=9, workers=1)
        b = estimate_sobol(ProductModel(), space, n=500, seed=9, workers=4)
        assert a == b

    def test_n_lower_bound(self):
        with pytest.raises(ValueError):
            estimate_sobol(ProductModel(), unit_space(2), n=1, seed=1)


class TestBruteForceSobol:
    def test_linear_exact_on_grid(self):
        # Variance ratios of a linear function are grid-independent.
        space = unit_space(2)
        result = brute_force_sobol(LinearModel([2, 1]), space, levels=11)
        assert result.s1[0] == pytest.approx(0.8, abs=1e-12)
        assert result.s1[1] == pytest.approx(0.2, abs=1e-12)
        assert result.st[0] == pytest.approx(0.8, abs=1e-12)

    def test_product_matches_analytic_within_grid_error(self):
        space = unit_space(2)
        result = brute_force_sobol(ProductModel(), space, levels=11)
        assert result.s1[0] == pytest.approx(PRODUCT_S1, abs=0.02)
        assert result.st[0] == pytest.approx(PRODUCT_ST, abs=0.02)

    def test_constant_model_degenerate(self):
        result = brute_force_sobol(lambda p: ModelOutput(5.0), unit_space(2), levels=5)
        assert result.degenerate
        assert result.total_variance == 0.0

    def test_grid_limits_enforced(self):
        with pytest.raises(ValueError, match="k <= 4"):
            brute_force_sobol(LinearModel([1] * 5), unit_space(5), levels=3)
        with pytest.raises(ValueError, match="levels"):
            brute_force_sobol(ProductModel(), unit_space(2), levels=12)

    def test_agrees_with_estimator_on_bundled_functions(self):
        # Dual-route check: enumeration oracle vs the Monte Carlo estimator.
        space = unit_space(2)
        for model in (LinearModel([2, 1]), ProductModel()):
            grid = brute_force_sobol(model, space, levels=11)
            mc = estimate_sobol(model, space, n=10_000, seed=17)
            for i in range(2):
                assert abs(grid.s1[i] - mc.s1[i]) < 0.05
                assert abs(grid.st[i] - mc.st[i]) < 0.05


class TestSerialization:
    def test_json_round_trip(self):
        space = unit_space(2)
        result = estimate_sobol(ProductModel(), space, n=100, seed=4)
        doc = json.loads(json.dumps(sobol_result_to_dict(result)))
        assert sobol_result_from_dict(doc) == result

    def test_csv_header_and_rows(self):
        space = unit_space(2)
        result = estimate_sobol(LinearModel([2, 1]), space, n=100, seed=4)
        lines = sobol_result_to_csv(result).strip().split("\n")
        assert lines[0] == "name,S1,ST"
        assert len(lines) == 3
