"""Seeded unit-cube sampling and Monte Carlo uncertainty propagation."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..errors import EvaluationError
from ..models import Model
from ..space import ParameterPoint, ParameterSpace, map_unit_rows

GENERATOR_ID = "pcg64-uniform/v1"
QUANTILE_LEVELS = (0.05, 0.50, 0.95)


@dataclass(frozen=True)
class SampleMatrix:
    """n unit-hypercube rows; bit-identical for identical (seed, n, k, generator)."""

    rows: np.ndarray
    seed: int
    generator_id: str = GENERATOR_ID

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def k(self) -> int:
        return self.rows.shape[1]


def generate_sample(space: ParameterSpace, n: int, seed: int) -> SampleMatrix:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rows = np.random.default_rng(seed).random((n, space.k))
    return SampleMatrix(rows=rows, seed=seed, generator_id=GENERATOR_ID)


def evaluate_unit_rows(
    model: Model, space: ParameterSpace, rows: np.ndarray, workers: int = 1
) -> np.ndarray:
    """Objective values for unit-cube rows, reduced in row order.

    Rows may be evaluated concurrently (model evaluation is pure), but the
    result vector is always assembled in input order, so the output is
    bit-identical regardless of worker count.
    """
    domain = map_unit_rows(space, np.asarray(rows, dtype=float))

    def evaluate(i: int) -> float:
        values = tuple(domain[i])
        try:
            return float(model(ParameterPoint(space, values)).objective)
        except Exception as exc:
            # Abort with the offending point reported, whatever the model threw.
            raise EvaluationError(f"model failed at sample row {i}, point {values}: {exc}") from exc

    n = domain.shape[0]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            objectives = list(pool.map(evaluate, range(n)))
    else:
        objectives = [evaluate(i) for i in range(n)]
    return np.array(objectives, dtype=float)


def nearest_rank_quantile(sorted_values: np.ndarray, q: float) -> float:
    """Nearest-rank quantile: the value at 1-based rank ceil(q*n)."""
    n = len(sorted_values)
    rank = max(1, math.ceil(q * n))
    return float(sorted_values[rank - 1])


@dataclass(frozen=True)
class UncertaintyStats:
    """Summary of the objective's stochastic spread over a sample."""

    mean: float
    variance: float
    std: float
    quantiles: Mapping[float, float]
    n: int


def propagate_uncertainty(
    model: Model, space: ParameterSpace, sample: SampleMatrix, workers: int = 1
) -> UncertaintyStats:
    """Push a sample through the model and summarize the objective.

    Quantiles use the nearest-rank convention so results are reproducible
    integer-index statistics; variance is the sample variance (ddof=1).
    """
    if sample.k != space.k:
        raise ValueError(f"sample has {sample.k} columns, space has {space.k} parameters")
    y = evaluate_unit_rows(model, space, sample.rows, workers=workers)
    ordered = np.sort(y)
    variance = float(np.var(y, ddof=1)) if sample.n > 1 else 0.0
    return UncertaintyStats(
        mean=float(np.mean(y)),
        variance=variance,
        std=math.sqrt(variance),
        quantiles={q: nearest_rank_quantile(ordered, q) for q in QUANTILE_LEVELS},
        n=sample.n,
    )
