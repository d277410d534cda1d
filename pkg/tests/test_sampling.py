import numpy as np
import pytest

from uqual.errors import EvaluationError
from uqual.models import LinearModel, ModelOutput
from uqual.sensitivity import generate_sample, propagate_uncertainty
from uqual.sensitivity.sampling import nearest_rank_quantile

from conftest import unit_space


class TestGenerateSample:
    def test_deterministic_for_fixed_seed(self):
        space = unit_space(2)
        a = generate_sample(space, 4, seed=7)
        b = generate_sample(space, 4, seed=7)
        assert np.array_equal(a.rows, b.rows)
        assert a.generator_id == b.generator_id

    def test_entries_in_unit_cube(self):
        rows = generate_sample(unit_space(3), 500, seed=1).rows
        assert rows.shape == (500, 3)
        assert rows.min() >= 0.0 and rows.max() <= 1.0

    def test_seed_sensitivity(self):
        space = unit_space(2)
        a = generate_sample(space, 4, seed=7)
        b = generate_sample(space, 4, seed=8)
        assert not np.array_equal(a.rows, b.rows)

    def test_n_must_be_positive(self):
        with pytest.raises(ValueError):
            generate_sample(unit_space(1), 0, seed=1)


class TestNearestRankQuantile:
    def test_small_known_cases(self):
        values = np.array([1.0, 2.0, 3.0, 4.0])
        # ceil(0.25*4)=1, ceil(0.5*4)=2, ceil(0.75*4)=3
        assert nearest_rank_quantile(values, 0.25) == 1.0
        assert nearest_rank_quantile(values, 0.50) == 2.0
        assert nearest_rank_quantile(values, 0.75) == 3.0
        assert nearest_rank_quantile(values, 1.00) == 4.0

    def test_single_value(self):
        assert nearest_rank_quantile(np.array([7.0]), 0.05) == 7.0


class TestPropagateUncertainty:
    def test_constant_model_zero_variance(self):
        space = unit_space(2)
        constant = lambda point: ModelOutput(3.5)
        stats = propagate_uncertainty(constant, space, generate_sample(space, 100, seed=1))
        assert stats.variance == 0.0
        assert stats.quantiles[0.05] == stats.quantiles[0.50] == stats.quantiles[0.95] == 3.5

    def test_linear_matches_analytic_moments(self):
        # f = 2*x1 + x2 on U(0,1)^2: mean 1.5, variance 4/12 + 1/12 = 5/12.
        space = unit_space(2)
        stats = propagate_uncertainty(
            LinearModel([2, 1]), space, generate_sample(space, 10_000, seed=11)
        )
        assert stats.mean == pytest.approx(1.5, abs=0.02)
        assert stats.variance == pytest.approx(5.0 / 12.0, abs=0.02)
        assert stats.n == 10_000

    def test_identity_median_near_half(self):
        space = unit_space(1)
        stats = propagate_uncertainty(
            LinearModel([1]), space, generate_sample(space, 10_000, seed=5)
        )
        assert stats.quantiles[0.50] == pytest.approx(0.5, abs=0.02)
        assert stats.quantiles[0.05] <= stats.quantiles[0.50] <= stats.quantiles[0.95]

    def test_worker_count_does_not_change_results(self):
        space = unit_space(2)
        sample = generate_sample(space, 512, seed=3)
        model = LinearModel([2, 1])
        serial = propagate_uncertainty(model, space, sample, workers=1)
        threaded = propagate_uncertainty(model, space, sample, workers=4)
        assert serial == threaded

    def test_failure_reports_offending_point(self):
        space = unit_space(1)

        def broken(point):
            if point.values[0] > 0.5:
                raise EvaluationError("boom")
            return ModelOutput(0.0)

        with pytest.raises(EvaluationError, match="sample row"):
            propagate_uncertainty(broken, space, generate_sample(space, 50, seed=2))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="columns"):
            propagate_uncertainty(
                LinearModel([1]), unit_space(1), generate_sample(unit_space(2), 10, seed=1)
            )


class TestFailureWrapping:
    def test_arbitrary_model_exceptions_reported_with_point(self):
        from uqual.sensitivity import evaluate_unit_rows
        import numpy as np

        space = unit_space(1)

        def broken(point):
            raise TypeError("wrong shape")

        with pytest.raises(EvaluationError, match="sample row 0"):
            evaluate_unit_rows(broken, space, np.array([[0.5]]))
