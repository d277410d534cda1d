"""Uncertain parameter spaces: bounded uniform inputs and the unit-cube mapping.

A ``ParameterSpace`` is an ordered list of uniform ``ParameterSpec`` entries.
The ordering is stable and defines vector alignment for every sampler in the
toolkit: coordinate i of any sample always refers to ``space.params[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterator, Mapping, Sequence

import numpy as np

from .errors import SchemaError
from .jsonio import check_keys, read_json


@dataclass(frozen=True)
class ParameterSpec:
    """One uniform uncertain input with bounds, a baseline value and units."""

    name: str
    lower: float
    upper: float
    baseline: float
    units: str = ""
    description: str = ""
    assumption_link: str | None = None

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class Violation:
    """A broken invariant, identifying the offending spec and field."""

    spec: str
    field: str
    message: str


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class ParameterSpace:
    params: tuple[ParameterSpec, ...]

    def __init__(self, params: Sequence[ParameterSpec]):
        object.__setattr__(self, "params", tuple(params))

    @property
    def k(self) -> int:
        return len(self.params)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p.name: i for i, p in enumerate(self.params)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no parameter named {name!r}") from None

    def spec(self, name: str) -> ParameterSpec:
        return self.params[self.index(name)]

    def __iter__(self) -> Iterator[ParameterSpec]:
        return iter(self.params)

    def point(self, values: Sequence[float]) -> "ParameterPoint":
        """Build a point in domain coordinates, checking bounds."""
        vals = tuple(float(v) for v in values)
        if len(vals) != self.k:
            raise ValueError(f"expected {self.k} values, got {len(vals)}")
        for spec, v in zip(self.params, vals):
            if not spec.contains(v):
                raise ValueError(
                    f"value {v} for {spec.name!r} outside bounds "
                    f"[{spec.lower}, {spec.upper}]"
                )
        return ParameterPoint(self, vals)

    def baseline_point(self) -> "ParameterPoint":
        return self.point([p.baseline for p in self.params])

    @property
    def lowers(self) -> np.ndarray:
        return np.array([p.lower for p in self.params], dtype=float)

    @property
    def widths(self) -> np.ndarray:
        return np.array([p.width for p in self.params], dtype=float)


@dataclass(frozen=True)
class ParameterPoint:
    """A vector of parameter values aligned to a space's ordering."""

    space: ParameterSpace = field(repr=False)
    values: tuple[float, ...]

    def __getitem__(self, name: str) -> float:
        return self.values[self.space.index(name)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.space.names, self.values))

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def __len__(self) -> int:
        return len(self.values)


def validate_space(space: ParameterSpace) -> ValidationResult:
    """Check every space/spec invariant; violations are data, not failures."""
    violations: list[Violation] = []
    if space.k < 1:
        violations.append(Violation("<space>", "params", "at least one parameter required"))
    seen: set[str] = set()
    for spec in space.params:
        label = spec.name or "<unnamed>"
        if not spec.name:
            violations.append(Violation(label, "name", "name must be nonempty"))
        elif spec.name in seen:
            violations.append(Violation(label, "name", f"unique name: {spec.name!r} repeats"))
        seen.add(spec.name)
        if not spec.lower < spec.upper:
            violations.append(
                Violation(label, "bounds", f"lower < upper required, got [{spec.lower}, {spec.upper}]")
            )
        elif not spec.lower <= spec.baseline <= spec.upper:
            violations.append(
                Violation(label, "baseline", f"baseline {spec.baseline} outside [{spec.lower}, {spec.upper}]")
            )
    return ValidationResult(ok=not violations, violations=tuple(violations))


def map_unit_point(space: ParameterSpace, u: Sequence[float]) -> ParameterPoint:
    """Map a unit-hypercube vector onto the space's box, coordinate-wise affine."""
    u_arr = np.asarray(u, dtype=float)
    if u_arr.shape != (space.k,):
        raise ValueError(f"dimension mismatch: expected {space.k} coordinates, got {u_arr.shape}")
    if np.any(u_arr < 0.0) or np.any(u_arr > 1.0):
        raise ValueError("unit coordinates must lie in [0, 1]")
    values = map_unit_rows(space, u_arr.reshape(1, -1))[0]
    return ParameterPoint(space, tuple(float(v) for v in values))


def map_unit_rows(space: ParameterSpace, rows: np.ndarray) -> np.ndarray:
    """Vectorized unit -> domain mapping; clips fp noise at the box boundary."""
    lowers = space.lowers
    uppers = lowers + space.widths
    return np.clip(lowers + rows * space.widths, lowers, uppers)


# --- JSON schema -------------------------------------------------------------
#
# A study document is a top-level object with a "parameters" array and/or a
# "model" section.  Unknown keys are rejected everywhere.

_TOP_KEYS = ("parameters", "model")
_PARAM_REQUIRED = ("name", "lower", "upper", "baseline")
_PARAM_OPTIONAL = ("units", "description", "assumption")


def _check_top(doc: Any, label: str) -> None:
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{label}: expected a JSON object at top level")
    check_keys(doc, label, required=(), optional=_TOP_KEYS, versioned=True)


def space_from_dict(doc: Mapping[str, Any], label: str = "study") -> ParameterSpace:
    _check_top(doc, label)
    if "parameters" not in doc:
        raise SchemaError(f"{label}: no \"parameters\" section")
    entries = doc["parameters"]
    if not isinstance(entries, list) or not entries:
        raise SchemaError(f"{label}: \"parameters\" must be a nonempty array")
    specs = []
    for i, entry in enumerate(entries):
        where = f"{label}: parameters[{i}]"
        check_keys(entry, where, required=_PARAM_REQUIRED, optional=_PARAM_OPTIONAL)
        try:
            specs.append(
                ParameterSpec(
                    name=str(entry["name"]),
                    lower=float(entry["lower"]),
                    upper=float(entry["upper"]),
                    baseline=float(entry["baseline"]),
                    units=str(entry.get("units", "")),
                    description=str(entry.get("description", "")),
                    assumption_link=entry.get("assumption"),
                )
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{where}: {exc}") from exc
    space = ParameterSpace(specs)
    result = validate_space(space)
    if not result.ok:
        msgs = "; ".join(f"{v.spec}.{v.field}: {v.message}" for v in result.violations)
        raise SchemaError(f"{label}: invalid parameter space: {msgs}")
    return space


def space_to_dict(space: ParameterSpace) -> dict[str, Any]:
    entries = []
    for p in space.params:
        entry: dict[str, Any] = {
            "name": p.name,
            "lower": p.lower,
            "upper": p.upper,
            "baseline": p.baseline,
            "units": p.units,
            "description": p.description,
        }
        if p.assumption_link is not None:
            entry["assumption"] = p.assumption_link
        entries.append(entry)
    return {"schema_version": 1, "parameters": entries}


def load_space(path: str | Path) -> ParameterSpace:
    return space_from_dict(read_json(path), label=str(path))
