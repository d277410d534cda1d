"""Bundled reference models: merit-order portfolio dispatch and analytic test functions.

Every model is a pure callable ``model(point) -> ModelOutput``; identical
inputs give identical outputs, so evaluations are safe to run from many
workers at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

from .errors import EvaluationError, SchemaError
from .jsonio import check_keys, read_json
from .space import ParameterPoint

SHARE_PREFIX = "share:"

Model = Callable[[ParameterPoint], "ModelOutput"]


@dataclass(frozen=True)
class ModelOutput:
    """Objective value plus named auxiliaries (e.g. per-technology shares)."""

    objective: float
    auxiliaries: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        shares = {k: v for k, v in self.auxiliaries.items() if k.startswith(SHARE_PREFIX)}
        if shares:
            for key, v in shares.items():
                if not 0.0 <= v <= 1.0:
                    raise ValueError(f"{key} = {v} outside [0, 1]")
            total = math.fsum(shares.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"shares sum to {total}, expected 1 within 1e-9")

    def share(self, technology: str) -> float:
        return self.auxiliaries[SHARE_PREFIX + technology]


@dataclass(frozen=True)
class Technology:
    """A supply technology: unit cost, optional capacity limit, optional bindings.

    ``cost_parameter``/``limit_parameter`` name parameters that act as
    multiplicative factors on the declared constants (baseline multiplier 1.0).
    A ``limit`` of None means unlimited capacity.
    """

    name: str
    cost: float
    limit: float | None = None
    cost_parameter: str | None = None
    limit_parameter: str | None = None


@dataclass(frozen=True)
class PortfolioModelConfig:
    demand: float
    technologies: tuple[Technology, ...]

    def __init__(self, demand: float, technologies: Sequence[Technology]):
        object.__setattr__(self, "demand", float(demand))
        object.__setattr__(self, "technologies", tuple(technologies))
        if self.demand <= 0:
            raise ValueError(f"demand must be > 0, got {self.demand}")
        names = [t.name for t in self.technologies]
        if len(set(names)) != len(names):
            raise ValueError("technology names must be unique")
        for t in self.technologies:
            if t.cost <= 0:
                raise ValueError(f"unit cost of {t.name!r} must be > 0, got {t.cost}")
            if t.limit is not None and t.limit < 0:
                raise ValueError(f"capacity limit of {t.name!r} must be >= 0")


def evaluate_portfolio(config: PortfolioModelConfig, point: ParameterPoint) -> ModelOutput:
    """Dispatch demand over technologies in ascending effective-cost order.

    Bound parameters multiply the declared cost/limit constants.  Cost ties
    are broken by declaration order.  Raises ``EvaluationError`` when the
    perturbed system cannot meet demand or a perturbed cost turns negative.
    """
    effective: list[tuple[float, int, float | None, Technology]] = []
    for idx, tech in enumerate(config.technologies):
        cost = tech.cost
        if tech.cost_parameter is not None:
            cost *= point[tech.cost_parameter]
        if cost < 0:
            raise EvaluationError(
                f"negative effective cost {cost} for {tech.name!r} after perturbation"
            )
        limit = tech.limit
        if limit is not None and tech.limit_parameter is not None:
            limit *= point[tech.limit_parameter]
        effective.append((cost, idx, limit, tech))

    remaining = config.demand
    dispatched = {t.name: 0.0 for t in config.technologies}
    total_cost = 0.0
    for cost, _, limit, tech in sorted(effective, key=lambda e: (e[0], e[1])):
        if remaining <= 0.0:
            break
        take = remaining if limit is None else min(limit, remaining)
        dispatched[tech.name] = take
        total_cost += take * cost
        remaining -= take
    if remaining > 1e-9:
        raise EvaluationError(
            f"demand unmet: {remaining} of {config.demand} left after dispatching all capacity"
        )

    auxiliaries = {SHARE_PREFIX + name: q / config.demand for name, q in dispatched.items()}
    return ModelOutput(objective=total_cost, auxiliaries=auxiliaries)


class PortfolioModel:
    """Callable wrapper binding a dispatch config for use by the samplers."""

    def __init__(self, config: PortfolioModelConfig):
        self.config = config

    def __call__(self, point: ParameterPoint) -> ModelOutput:
        return evaluate_portfolio(self.config, point)


class LinearModel:
    """f(x) = sum(c_i * x_i); analytic sensitivity oracle."""

    def __init__(self, coeffs: Sequence[float]):
        self.coeffs = tuple(float(c) for c in coeffs)

    def __call__(self, point: ParameterPoint) -> ModelOutput:
        if len(point) != len(self.coeffs):
            raise EvaluationError(
                f"dimension mismatch: {len(self.coeffs)} coefficients, {len(point)} values"
            )
        return ModelOutput(objective=math.fsum(c * x for c, x in zip(self.coeffs, point.values)))


class ProductModel:
    """f(x) = x_1 * x_2; minimal interaction oracle (requires k = 2)."""

    def __call__(self, point: ParameterPoint) -> ModelOutput:
        if len(point) != 2:
            raise EvaluationError(f"product model requires 2 parameters, got {len(point)}")
        return ModelOutput(objective=point.values[0] * point.values[1])


def evaluate_test_function(
    kind: str, point: ParameterPoint, coeffs: Sequence[float] | None = None
) -> ModelOutput:
    if kind == "linear":
        if coeffs is None:
            raise ValueError("linear test function requires coeffs")
        return LinearModel(coeffs)(point)
    if kind == "product":
        return ProductModel()(point)
    raise ValueError(f"unknown test function kind {kind!r}")


# --- model JSON section -------------------------------------------------------

_TECH_REQUIRED = ("name", "cost")
_TECH_OPTIONAL = ("limit", "cost_parameter", "limit_parameter")


def model_from_dict(doc: Mapping[str, Any], label: str = "study") -> Model:
    """Build a model from a study document's "model" section."""
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{label}: expected a JSON object at top level")
    check_keys(doc, label, required=("model",), optional=("parameters",), versioned=True)
    section = doc["model"]
    if not isinstance(section, Mapping) or "kind" not in section:
        raise SchemaError(f"{label}: \"model\" must be an object with a \"kind\"")
    kind = section["kind"]
    where = f"{label}: model"
    if kind == "portfolio":
        check_keys(section, where, required=("kind", "demand", "technologies"))
        techs = []
        raw = section["technologies"]
        if not isinstance(raw, list) or not raw:
            raise SchemaError(f"{where}: \"technologies\" must be a nonempty array")
        for i, entry in enumerate(raw):
            check_keys(entry, f"{where}.technologies[{i}]", required=_TECH_REQUIRED, optional=_TECH_OPTIONAL)
            limit = entry.get("limit")
            techs.append(
                Technology(
                    name=str(entry["name"]),
                    cost=float(entry["cost"]),
                    limit=None if limit is None else float(limit),
                    cost_parameter=entry.get("cost_parameter"),
                    limit_parameter=entry.get("limit_parameter"),
                )
            )
        try:
            config = PortfolioModelConfig(demand=float(section["demand"]), technologies=techs)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{where}: {exc}") from exc
        return PortfolioModel(config)
    if kind == "linear":
        check_keys(section, where, required=("kind", "coeffs"))
        coeffs = section["coeffs"]
        if not isinstance(coeffs, list) or not coeffs:
            raise SchemaError(f"{where}: \"coeffs\" must be a nonempty array")
        return LinearModel([float(c) for c in coeffs])
    if kind == "product":
        check_keys(section, where, required=("kind",))
        return ProductModel()
    raise SchemaError(f"{where}: unknown kind {kind!r}")


def model_to_dict(model: Model) -> dict[str, Any]:
    if isinstance(model, PortfolioModel):
        techs = []
        for t in model.config.technologies:
            entry: dict[str, Any] = {"name": t.name, "cost": t.cost, "limit": t.limit}
            if t.cost_parameter is not None:
                entry["cost_parameter"] = t.cost_parameter
            if t.limit_parameter is not None:
                entry["limit_parameter"] = t.limit_parameter
            techs.append(entry)
        return {"kind": "portfolio", "demand": model.config.demand, "technologies": techs}
    if isinstance(model, LinearModel):
        return {"kind": "linear", "coeffs": list(model.coeffs)}
    if isinstance(model, ProductModel):
        return {"kind": "product"}
    raise ValueError(f"cannot serialize model of type {type(model).__name__}")


def load_model(path: str | Path) -> Model:
    return model_from_dict(read_json(path), label=str(path))
