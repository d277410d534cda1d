"""Morris elementary-effects screening on randomized one-at-a-time trajectories.

The trajectory design follows the standard factorial sampling plan: p grid
levels (p even), step delta = p / (2(p-1)), start points on the grid, and
each coordinate perturbed exactly once per path in random order.
"""
from __future__ import annotations

import io
import csv
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from ..jsonio import sig6
from ..models import Model
from ..space import ParameterSpace
from .sampling import evaluate_unit_rows

TRAJECTORY_GENERATOR_ID = "morris-trajectories/v1"


@dataclass(frozen=True)
class TrajectorySet:
    """r one-at-a-time paths in unit space, each with k+1 points."""

    paths: np.ndarray  # shape (r, k+1, k)
    levels: int
    delta: float
    seed: int
    generator_id: str = TRAJECTORY_GENERATOR_ID

    @property
    def r(self) -> int:
        return self.paths.shape[0]

    @property
    def k(self) -> int:
        return self.paths.shape[2]


def build_trajectories(space: ParameterSpace, r: int, levels: int, seed: int) -> TrajectorySet:
    """Sample r randomized trajectories on a p-level grid.

    For each path, every coordinate gets a random direction (+/- delta), a
    random admissible start level, and a random position in the perturbation
    order; the resulting k+1 points all stay on the grid in [0, 1].
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if levels < 2 or levels % 2 != 0:
        raise ValueError(f"levels must be even and >= 2, got {levels}")
    p = levels
    k = space.k
    delta = p / (2.0 * (p - 1))
    grid = np.arange(p) / (p - 1)
    half = p // 2
    rng = np.random.default_rng(seed)

    paths = np.empty((r, k + 1, k), dtype=float)
    for t in range(r):
        directions = rng.integers(0, 2, size=k) * 2 - 1  # +1 or -1 per coordinate
        # Start levels that keep the step inside [0, 1]: the lower half of the
        # grid for +delta steps, the upper half for -delta steps.
        base_idx = rng.integers(0, half, size=k) + np.where(directions > 0, 0, half)
        order = rng.permutation(k)
        point = grid[base_idx].astype(float)
        paths[t, 0] = point
        for step, coord in enumerate(order, start=1):
            point = point.copy()
            point[coord] = point[coord] + directions[coord] * delta
            paths[t, step] = point
    # Grid arithmetic keeps values in [0,1] up to fp noise.
    np.clip(paths, 0.0, 1.0, out=paths)
    return TrajectorySet(paths=paths, levels=p, delta=delta, seed=seed)


@dataclass(frozen=True)
class EEResult:
    """Per-parameter elementary-effect statistics over r trajectories."""

    names: tuple[str, ...]
    mu: tuple[float, ...]       # mean of signed effects
    mu_star: tuple[float, ...]  # mean of absolute effects
    sigma: tuple[float, ...]    # std of effects (ddof=1; 0 when r == 1)
    r: int
    seed: int
    levels: int
    estimator_id: str = TRAJECTORY_GENERATOR_ID

    def ranking(self) -> tuple[str, ...]:
        """Parameter names by descending mu_star (ties by declaration order)."""
        order = sorted(range(len(self.names)), key=lambda i: (-self.mu_star[i], i))
        return tuple(self.names[i] for i in order)


def elementary_effects(
    model: Model, space: ParameterSpace, trajectories: TrajectorySet, workers: int = 1
) -> EEResult:
    """Finite-difference effects along each trajectory, aggregated per parameter.

    The effect of a step in coordinate i is the objective difference divided
    by the signed step scaled to the parameter's domain width, i.e. a
    derivative with respect to the physical parameter.
    """
    if trajectories.k != space.k:
        raise ValueError(
            f"trajectories have {trajectories.k} coordinates, space has {space.k}"
        )
    r, points_per_path, k = trajectories.paths.shape
    flat = trajectories.paths.reshape(r * points_per_path, k)
    y = evaluate_unit_rows(model, space, flat, workers=workers).reshape(r, points_per_path)

    widths = space.widths
    effects = np.empty((r, k), dtype=float)
    for t in range(r):
        for step in range(k):
            before = trajectories.paths[t, step]
            after = trajectories.paths[t, step + 1]
            diff = after - before
            coord = int(np.argmax(np.abs(diff)))
            unit_step = diff[coord]
            effects[t, coord] = (y[t, step + 1] - y[t, step]) / (unit_step * widths[coord])

    mu = effects.mean(axis=0)
    mu_star = np.abs(effects).mean(axis=0)
    sigma = effects.std(axis=0, ddof=1) if r > 1 else np.zeros(k)
    return EEResult(
        names=space.names,
        mu=tuple(float(v) for v in mu),
        mu_star=tuple(float(v) for v in mu_star),
        sigma=tuple(float(v) for v in sigma),
        r=r,
        seed=trajectories.seed,
        levels=trajectories.levels,
    )


def ee_result_to_dict(result: EEResult) -> dict[str, Any]:
    return {
        "schema_version": 1,
        "method": "morris",
        "seed": result.seed,
        "r": result.r,
        "levels": result.levels,
        "estimator_id": result.estimator_id,
        "parameters": [
            {"name": n, "mu": mu, "mu_star": ms, "sigma": s}
            for n, mu, ms, s in zip(result.names, result.mu, result.mu_star, result.sigma)
        ],
    }


def ee_result_from_dict(doc: Mapping[str, Any]) -> EEResult:
    params = doc["parameters"]
    return EEResult(
        names=tuple(p["name"] for p in params),
        mu=tuple(float(p["mu"]) for p in params),
        mu_star=tuple(float(p["mu_star"]) for p in params),
        sigma=tuple(float(p["sigma"]) for p in params),
        r=int(doc["r"]),
        seed=int(doc["seed"]),
        levels=int(doc.get("levels", 0)),
        estimator_id=str(doc.get("estimator_id", TRAJECTORY_GENERATOR_ID)),
    )


def ee_result_to_csv(result: EEResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "mu", "mu_star", "sigma"])
    for n, mu, ms, s in zip(result.names, result.mu, result.mu_star, result.sigma):
        writer.writerow([n, sig6(mu), sig6(ms), sig6(s)])
    return buf.getvalue()
