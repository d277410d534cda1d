import numpy as np
import pytest

from uqual.models import LinearModel
from uqual.sensitivity import estimate_sobol, normalize_scores
from uqual.sensitivity.morris import EEResult
from uqual.sensitivity.sobol import SobolResult

from conftest import unit_space


def ee(names, mu_star):
    zeros = (0.0,) * len(names)
    return EEResult(
        names=tuple(names), mu=zeros, mu_star=tuple(mu_star), sigma=zeros,
        r=4, seed=1, levels=4,
    )


def sobol(names, st):
    zeros = (0.0,) * len(names)
    return SobolResult(
        names=tuple(names), s1=zeros, st=tuple(st), n=100, seed=1,
        estimator_id="test", total_variance=1.0,
    )


class TestNormalizeScores:
    def test_ee_division_by_max(self):
        scores = normalize_scores(ee(["a", "b"], [2.0, 1.0]))
        assert scores.scores == {"a": 1.0, "b": 0.5}
        assert scores.method == "EE"
        assert not scores.degenerate

    def test_all_zero_degenerate(self):
        scores = normalize_scores(ee(["a", "b"], [0.0, 0.0]))
        assert scores.degenerate
        assert scores.scores == {"a": 0.0, "b": 0.0}

    def test_single_parameter_normalizes_to_one(self):
        scores = normalize_scores(ee(["solo"], [0.3]))
        assert scores.scores == {"solo": 1.0}

    def test_sobol_clamps_before_normalizing(self):
        scores = normalize_scores(sobol(["a", "b", "c"], [1.2, 0.6, -0.05]))
        assert scores.method == "Sobol-ST"
        assert scores.scores["a"] == 1.0
        assert scores.scores["b"] == 0.6
        assert scores.scores["c"] == 0.0

    def test_order_preserved_under_rescaling(self):
        # Scores are invariant to positive rescaling of raw values, so any
        # two runs that differ only by scale place parameters identically.
        rng = np.random.default_rng(12)
        for _ in range(50):
            raw = rng.random(4) * 10
            names = ["p1", "p2", "p3", "p4"]
            base = normalize_scores(ee(names, raw))
            scaled = normalize_scores(ee(names, raw * 7.3))
            assert base.scores == pytest.approx(scaled.scores)
            order = sorted(names, key=lambda n: -base.scores[n])
            raw_order = [names[i] for i in np.argsort(-raw)]
            assert order == raw_order

    def test_max_is_one_unless_degenerate(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            raw = rng.random(3)
            scores = normalize_scores(ee(["a", "b", "c"], raw))
            assert max(scores.scores.values()) == pytest.approx(1.0)

    def test_end_to_end_with_estimator(self):
        space = unit_space(2)
        result = estimate_sobol(LinearModel([2, 1]), space, n=2_000, seed=5)
        scores = normalize_scores(result)
        assert scores.scores["x1"] == 1.0
        assert 0.0 < scores.scores["x2"] < 1.0

    def test_unknown_type_rejected(self):
        with pytest.raises(TypeError):
            normalize_scores({"not": "a result"})
