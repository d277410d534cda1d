"""Normalization of raw sensitivity measures into [0, 1] diagram scores."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .morris import EEResult
from .sobol import SobolResult


@dataclass(frozen=True)
class SensitivityScores:
    """Per-parameter influence in [0, 1]; max is 1.0 unless degenerate.

    Max-normalization preserves the raw ranking, so diagram placement is
    invariant to any positive rescaling of the underlying measures.
    """

    scores: Mapping[str, float]
    method: str  # "EE" or "Sobol-ST"
    degenerate: bool = False

    def __getitem__(self, name: str) -> float:
        return self.scores[name]


def normalize_scores(result: Union[EEResult, SobolResult]) -> SensitivityScores:
    """mu*/max(mu*) for Morris results, clamp(ST, 0, 1)/max for Sobol results.

    When every raw value is 0 the scores are all 0.0 and the degenerate flag
    is set (no rescaling can rank a constant response).
    """
    if isinstance(result, EEResult):
        raw = {name: float(v) for name, v in zip(result.names, result.mu_star)}
        method = "EE"
    elif isinstance(result, SobolResult):
        raw = {name: min(max(float(v), 0.0), 1.0) for name, v in zip(result.names, result.st)}
        method = "Sobol-ST"
    else:
        raise TypeError(f"cannot normalize {type(result).__name__}")
    top = max(raw.values(), default=0.0)
    if top <= 0.0:
        return SensitivityScores(scores={n: 0.0 for n in raw}, method=method, degenerate=True)
    return SensitivityScores(scores={n: v / top for n, v in raw.items()}, method=method)
