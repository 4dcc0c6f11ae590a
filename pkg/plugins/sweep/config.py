"""Sweep configuration: a flat JSON document validated into :class:`SweepConfig`."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace
from typing import Any, Mapping, Optional, Tuple

import numpy as np
import psutil

from .types import BOUND_NAMES, EVALUATORS, T_SPACINGS

DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "config.json"
)


class ConfigError(ValueError):
    """Raised for malformed or out-of-range sweep configuration."""


@dataclass(frozen=True)
class SweepConfig:
    q_min: int
    q_max: int
    t_start: float
    t_stop: float
    t_count: int
    t_spacing: str
    target_radius: float
    evaluator: str
    bounds_checked: Tuple[str, ...]
    output_path: str
    parallelism: int
    em_order: int = 1
    psum_max_terms: int = 10 ** 6
    t_values: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        if self.q_min < 3:
            raise ConfigError(f"q_min must be at least 3, got {self.q_min}.")
        if self.q_max < self.q_min:
            raise ConfigError(f"q_max ({self.q_max}) is below q_min ({self.q_min}).")
        if self.t_values is not None:
            if not self.t_values or any(not t > 0 for t in self.t_values):
                raise ConfigError("t_values must be a nonempty list of positive numbers.")
        else:
            if not self.t_start > 0:
                raise ConfigError(f"t_start must be positive, got {self.t_start}.")
            if self.t_stop < self.t_start:
                raise ConfigError(f"t_stop ({self.t_stop}) is below t_start ({self.t_start}).")
            if self.t_count < 1:
                raise ConfigError(f"t_count must be at least 1, got {self.t_count}.")
        if self.t_spacing not in T_SPACINGS:
            raise ConfigError(f"t_spacing must be one of {', '.join(T_SPACINGS)}, got {self.t_spacing!r}.")
        if not self.target_radius > 0:
            raise ConfigError(f"target_radius must be positive, got {self.target_radius}.")
        if self.evaluator not in EVALUATORS:
            raise ConfigError(f"evaluator must be one of {', '.join(EVALUATORS)}, got {self.evaluator!r}.")
        unknown = [name for name in self.bounds_checked if name not in BOUND_NAMES]
        if not self.bounds_checked or unknown:
            raise ConfigError(f"bounds_checked must be a nonempty subset of {', '.join(BOUND_NAMES)}.")
        if self.parallelism < 1:
            raise ConfigError(f"parallelism must be at least 1, got {self.parallelism}.")
        if self.em_order < 1 or self.em_order % 2 == 0:
            raise ConfigError(f"em_order must be an odd positive integer, got {self.em_order}.")
        if self.psum_max_terms < 1:
            raise ConfigError(f"psum_max_terms must be positive, got {self.psum_max_terms}.")

    def t_grid(self) -> Tuple[float, ...]:
        if self.t_values is not None:
            return tuple(sorted(set(float(t) for t in self.t_values)))
        if self.t_count == 1:
            return (float(self.t_start),)
        if self.t_spacing == "log":
            grid = np.geomspace(self.t_start, self.t_stop, self.t_count)
        else:
            grid = np.linspace(self.t_start, self.t_stop, self.t_count)
        return tuple(float(t) for t in grid)

    def moduli(self) -> range:
        return range(self.q_min, self.q_max + 1)

    def with_overrides(self, **overrides: Any) -> "SweepConfig":
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})


def default_parallelism() -> int:
    return psutil.cpu_count(logical=False) or 1


def from_mapping(values: Mapping[str, Any], defaults: Optional[Mapping[str, Any]] = None) -> SweepConfig:
    known = {field.name for field in fields(SweepConfig)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"Unknown configuration keys: {', '.join(unknown)}.")
    merged = dict(defaults or {})
    merged.update(values)
    missing = sorted(
        field.name for field in fields(SweepConfig) if field.name not in merged and field.name in _REQUIRED
    )
    if missing:
        raise ConfigError(f"Missing configuration keys: {', '.join(missing)}.")
    try:
        return SweepConfig(
            q_min=_integer(merged, "q_min"),
            q_max=_integer(merged, "q_max"),
            t_start=_number(merged, "t_start"),
            t_stop=_number(merged, "t_stop"),
            t_count=_integer(merged, "t_count"),
            t_spacing=str(merged["t_spacing"]),
            target_radius=_number(merged, "target_radius"),
            evaluator=str(merged["evaluator"]),
            bounds_checked=tuple(str(name) for name in merged["bounds_checked"]),
            output_path=str(merged["output_path"]),
            parallelism=(
                default_parallelism() if merged.get("parallelism") is None else _integer(merged, "parallelism")
            ),
            em_order=_integer(merged, "em_order") if "em_order" in merged else 1,
            psum_max_terms=_integer(merged, "psum_max_terms") if "psum_max_terms" in merged else 10 ** 6,
            t_values=_t_values(merged.get("t_values")),
        )
    except TypeError as error:
        raise ConfigError(f"Malformed configuration: {error}") from error


def load_config(path: Optional[str] = None, defaults_path: str = DEFAULT_CONFIG_PATH) -> SweepConfig:
    defaults = _read_json(defaults_path) if os.path.exists(defaults_path) else {}
    values = _read_json(path) if path else {}
    return from_mapping(values, defaults)


_REQUIRED = (
    "q_min",
    "q_max",
    "t_start",
    "t_stop",
    "t_count",
    "t_spacing",
    "target_radius",
    "evaluator",
    "bounds_checked",
    "output_path",
)


def _read_json(path: str) -> Mapping[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as file:
            values = json.load(file)
    except OSError as error:
        raise ConfigError(f"Could not read configuration {path}: {error}") from error
    except json.JSONDecodeError as error:
        raise ConfigError(f"Configuration {path} is not valid JSON: {error}") from error
    if not isinstance(values, dict):
        raise ConfigError(f"Configuration {path} must hold a JSON object.")
    return values


def _integer(values: Mapping[str, Any], key: str) -> int:
    value = values[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}.")
    return value


def _number(values: Mapping[str, Any], key: str) -> float:
    value = values[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}.")
    return float(value)


def _t_values(value: Any) -> Optional[Tuple[float, ...]]:
    if value is None:
        return None
    if not isinstance(value, list) or any(isinstance(t, bool) or not isinstance(t, (int, float)) for t in value):
        raise ConfigError(f"t_values must be a list of numbers, got {value!r}.")
    return tuple(float(t) for t in value)
