import json

import numpy as np
import pytest

from uqual.models import LinearModel, ModelOutput, ProductModel
from uqual.sensitivity import (
    build_trajectories,
    ee_result_from_dict,
    ee_result_to_csv,
    ee_result_to_dict,
    elementary_effects,
)
from uqual.space import ParameterSpace, ParameterSpec

from conftest import unit_space


class TestBuildTrajectories:
    def test_delta_formula(self):
        # delta = p / (2(p-1)): p=4 -> 2/3, p=2 -> 1.
        t4 = build_trajectories(unit_space(3), r=5, levels=4, seed=1)
        assert t4.delta == pytest.approx(2.0 / 3.0)
        assert t4.paths.shape == (5, 4, 3)
        t2 = build_trajectories(unit_space(1), r=1, levels=2, seed=1)
        assert t2.delta == 1.0
        assert t2.paths.shape == (1, 2, 1)

    def test_odd_levels_rejected(self):
        with pytest.raises(ValueError, match="even"):
            build_trajectories(unit_space(2), r=2, levels=3, seed=1)

    def test_structure_invariants(self):
        # Consecutive points differ in exactly one coordinate by +/- delta and
        # each coordinate changes exactly once per path.
        ts = build_trajectories(unit_space(4), r=20, levels=4, seed=9)
        for path in ts.paths:
            changed = []
            for before, after in zip(path, path[1:]):
                diff = after - before
                nonzero = np.nonzero(np.abs(diff) > 1e-12)[0]
                assert len(nonzero) == 1
                coord = int(nonzero[0])
                assert abs(abs(diff[coord]) - ts.delta) < 1e-9
                changed.append(coord)
            assert sorted(changed) == [0, 1, 2, 3]

    def test_points_on_grid_in_unit_cube(self):
        ts = build_trajectories(unit_space(3), r=50, levels=4, seed=2)
        assert ts.paths.min() >= 0.0 and ts.paths.max() <= 1.0
        grid = np.arange(4) / 3.0
        flat = ts.paths.reshape(-1)
        assert np.all(np.min(np.abs(flat[:, None] - grid[None, :]), axis=1) < 1e-9)

    def test_deterministic_given_seed(self):
        a = build_trajectories(unit_space(3), r=5, levels=4, seed=42)
        b = build_trajectories(unit_space(3), r=5, levels=4, seed=42)
        assert np.array_equal(a.paths, b.paths)


class TestElementaryEffects:
    def test_linear_effects_exact(self):
        # Linearity forces every effect to equal its coefficient.
        space = unit_space(2)
        for r in (1, 4, 10):
            ts = build_trajectories(space, r=r, levels=4, seed=r)
            result = elementary_effects(LinearModel([2, 1]), space, ts)
            assert result.mu_star[0] == pytest.approx(2.0, abs=1e-12)
            assert result.mu_star[1] == pytest.approx(1.0, abs=1e-12)
            assert max(result.sigma) < 1e-12
            assert result.mu == result.mu_star  # positive coefficients

    def test_linear_effects_scale_with_domain_width(self):
        # Effects are derivatives w.r.t. the physical parameter, so widening
        # the domain leaves the measured coefficient unchanged.
        space = ParameterSpace(
            [ParameterSpec("a", 0.0, 10.0, 5.0), ParameterSpec("b", 0.0, 1.0, 0.5)]
        )
        ts = build_trajectories(space, r=6, levels=4, seed=3)
        result = elementary_effects(LinearModel([2, 1]), space, ts)
        assert result.mu_star[0] == pytest.approx(2.0, abs=1e-9)
        assert result.mu_star[1] == pytest.approx(1.0, abs=1e-9)

    def test_interaction_shows_positive_sigma(self):
        space = unit_space(2)
        ts = build_trajectories(space, r=20, levels=4, seed=7)
        result = elementary_effects(ProductModel(), space, ts)
        assert result.sigma[0] > 0.0

    def test_constant_model_all_zero(self):
        space = unit_space(3)
        ts = build_trajectories(space, r=5, levels=4, seed=1)
        result = elementary_effects(lambda p: ModelOutput(1.0), space, ts)
        assert result.mu == (0.0,) * 3
        assert result.mu_star == (0.0,) * 3
        assert result.sigma == (0.0,) * 3

    def test_mu_star_dominates_abs_mu(self):
        space = unit_space(2)
        ts = build_trajectories(space, r=12, levels=4, seed=5)
        result = elementary_effects(ProductModel(), space, ts)
        for mu, mu_star in zip(result.mu, result.mu_star):
            assert mu_star >= abs(mu) >= 0.0

    def test_ranking(self):
        space = unit_space(3)
        ts = build_trajectories(space, r=4, levels=4, seed=2)
        result = elementary_effects(LinearModel([1, 5, 3]), space, ts)
        assert result.ranking() == ("x2", "x3", "x1")

    def test_worker_count_does_not_change_results(self):
        space = unit_space(2)
        ts = build_trajectories(space, r=10, levels=4, seed=4)
        serial = elementary_effects(ProductModel(), space, ts, workers=1)
        threaded = elementary_effects(ProductModel(), space, ts, workers=3)
        assert serial == threaded


class TestSerialization:
    def test_json_round_trip(self):
        space = unit_space(2)
        ts = build_trajectories(space, r=4, levels=4, seed=1)
        result = elementary_effects(LinearModel([2, 1]), space, ts)
        doc = json.loads(json.dumps(ee_result_to_dict(result)))
        assert ee_result_from_dict(doc) == result

    def test_csv_shape_and_digits(self):
        space = unit_space(2)
        ts = build_trajectories(space, r=4, levels=4, seed=1)
        result = elementary_effects(LinearModel([2, 1]), space, ts)
        lines = ee_result_to_csv(result).strip().split("\n")
        assert lines[0] == "name,mu,mu_star,sigma"
        assert len(lines) == 3
        assert lines[1].startswith("x1,2,2,")
