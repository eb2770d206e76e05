"""Flat ``key = value`` run configuration with line-numbered validation errors."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import SepQKDError, ValidationError
from .params import DETECTIONS, MI_PATHS, VARIANTS, ProtocolParams, tau_from_variance

NUMERIC_KEYS = ("tau", "v", "x", "eta", "distance_km", "n0", "xi", "phi")
CHOICE_KEYS = {"detection": DETECTIONS, "variant": VARIANTS, "mi_path": MI_PATHS}
OTHER_KEYS = ("sweep", "sweep2", "outputs", "seed", "output_path")
KNOWN_KEYS = NUMERIC_KEYS + tuple(CHOICE_KEYS) + OTHER_KEYS
AXIS_KEYS = NUMERIC_KEYS

OUTPUT_COLUMNS = (
    "L", "eta", "omega", "i_ab", "chi_be", "rate_raw", "rate", "plob",
    "nu_min", "kappa_min", "e_n",
    # parameter echoes
    "tau", "V", "x", "n0", "xi", "phi", "i_ab_formula", "i_ab_cm",
)
DEFAULT_OUTPUTS = ("L", "eta", "omega", "i_ab", "chi_be", "rate_raw", "rate", "plob")

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


class ConfigError(ValidationError):
    """Collects every problem found in a configuration."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("\n".join(self.errors))


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    steps: int

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.steps - 1)
        return [self.start + k * step for k in range(self.steps - 1)] + [self.stop]


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    axis2: Axis | None = None
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS

    def axes(self) -> list[Axis]:
        return [self.axis1] + ([self.axis2] if self.axis2 else [])

    def grid(self) -> list[dict[str, float]]:
        """Grid points with ``axis1`` outer and ``axis2`` inner."""
        points = []
        for v1 in self.axis1.values():
            if self.axis2 is None:
                points.append({self.axis1.name: v1})
            else:
                for v2 in self.axis2.values():
                    points.append({self.axis1.name: v1, self.axis2.name: v2})
        return points


@dataclass(frozen=True)
class RunConfig:
    fixed: Mapping[str, object]
    sweep: SweepSpec | None = None
    seed: int = 0
    output_path: str | None = None
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    sources: Mapping[str, str] = field(default_factory=dict, compare=False)

    def params(self, overrides: Mapping[str, float] | None = None) -> ProtocolParams:
        """Build the :class:`ProtocolParams` for the fixed values plus ``overrides``."""
        values = dict(self.fixed)
        values.update(overrides or {})
        return build_params(values)

    def grid_params(self) -> list[ProtocolParams]:
        if self.sweep is None:
            return [self.params()]
        return [self.params(point) for point in self.sweep.grid()]


def build_params(values: Mapping[str, object]) -> ProtocolParams:
    values = dict(values)
    if "v" in values:
        values["tau"] = tau_from_variance(values.pop("v"))
    return ProtocolParams(**values)


def _parse_number(text: str) -> float:
    if not _NUMBER.match(text):
        raise ValueError(f"malformed number {text!r}")
    return float(text)


def _parse_axis(text: str) -> Axis:
    parts = [p.strip() for p in text.split(":")]
    if len(parts) != 4:
        raise ValueError(f"sweep must look like name:start:stop:steps, got {text!r}")
    name, start, stop, steps = parts
    if name not in AXIS_KEYS:
        raise ValueError(f"cannot sweep {name!r}; choose from {', '.join(AXIS_KEYS)}")
    if not re.fullmatch(r"\d+", steps) or int(steps) < 2:
        raise ValueError(f"sweep steps must be an integer >= 2, got {steps!r}")
    return Axis(name, _parse_number(start), _parse_number(stop), int(steps))


def _read_pairs(text: str) -> tuple[list[tuple[str, str, str]], list[str]]:
    pairs, errors = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected key=value, got {raw.strip()!r}")
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        pairs.append((f"line {lineno}", key, value))
    return pairs, errors


def parse_config(text: str, overrides: Mapping[str, str] | None = None) -> RunConfig:
    """Parse and validate a configuration document.

    ``overrides`` holds command-line values; they replace file entries of the
    same key. Raises :class:`ConfigError` listing every problem found.
    """
    pairs, errors = _read_pairs(text)
    raw: dict[str, tuple[str, str]] = {}
    for where, key, value in pairs:
        if key not in KNOWN_KEYS:
            errors.append(f"{where}: unknown key {key!r}")
        elif key in raw:
            errors.append(f"{where}: duplicate key {key!r} (first set at {raw[key][0]})")
        else:
            raw[key] = (where, value)
    for key, value in (overrides or {}).items():
        where = f"flag --{key.replace('_', '-')}"
        if key not in KNOWN_KEYS:
            errors.append(f"{where}: unknown key {key!r}")
        else:
            raw[key] = (where, str(value))

    fixed: dict[str, object] = {}
    axes: dict[str, Axis] = {}
    outputs = DEFAULT_OUTPUTS
    seed, output_path = 0, None
    for key, (where, value) in raw.items():
        try:
            if key == "x" and value == "bound":
                fixed["x"] = "bound"
            elif key in NUMERIC_KEYS:
                fixed[key] = _parse_number(value)
            elif key in CHOICE_KEYS:
                if value not in CHOICE_KEYS[key]:
                    raise ValueError(f"{key} must be one of {', '.join(CHOICE_KEYS[key])}, got {value!r}")
                fixed[key] = value
            elif key in ("sweep", "sweep2"):
                axes[key] = _parse_axis(value)
            elif key == "outputs":
                cols = tuple(c.strip() for c in value.split(",") if c.strip())
                bad = [c for c in cols if c not in OUTPUT_COLUMNS]
                if bad or not cols:
                    raise ValueError(f"unknown output columns {bad}; allowed: {', '.join(OUTPUT_COLUMNS)}")
                outputs = cols
            elif key == "seed":
                if not re.fullmatch(r"[+-]?\d+", value):
                    raise ValueError(f"seed must be an integer, got {value!r}")
                seed = int(value)
            elif key == "output_path":
                output_path = value
        except ValueError as exc:
            errors.append(f"{where}: {exc}")

    if "sweep2" in raw and "sweep" not in raw:
        errors.append(f"{raw['sweep2'][0]}: sweep2 given without sweep")
    axis_names = [a.name for a in axes.values()]
    if len(set(axis_names)) != len(axis_names):
        errors.append(f"{raw['sweep2'][0]}: sweep axes must name different parameters")
    for key, a in axes.items():
        if a.name in fixed:
            errors.append(f"{raw[key][0]}: {a.name!r} is both fixed ({raw[a.name][0]}) and swept")

    # a key that was given but failed to parse is reported once, not also as missing
    covered = set(fixed) | set(axis_names) | (set(raw) & set(NUMERIC_KEYS))

    def where_set(k):
        if k in raw:
            return raw[k][0]
        return next(raw[s][0] for s, a in axes.items() if a.name == k)

    for k1, k2 in (("eta", "distance_km"), ("tau", "v")):
        if k1 in covered and k2 in covered:
            errors.append(
                f"{where_set(k1)}, {where_set(k2)}: conflicting keys {k1!r} and {k2!r}; give only one"
            )
    missing = []
    if not covered & {"tau", "v"}:
        missing.append("tau (or v)")
    if not covered & {"eta", "distance_km"}:
        missing.append("eta (or distance_km)")
    if missing:
        errors.append(f"missing required keys: {', '.join(missing)}")

    if errors:
        raise ConfigError(errors)

    sweep = SweepSpec(axes["sweep"], axes.get("sweep2"), outputs) if axes else None
    config = RunConfig(fixed, sweep, seed, output_path, outputs, {k: w for k, (w, _) in raw.items()})
    try:
        config.grid_params()
    except SepQKDError as exc:
        raise ConfigError([f"invalid parameters: {exc}"]) from exc
    return config


def describe_params(params: ProtocolParams) -> str:
    """One-line ``key=value`` echo of every resolved parameter."""
    items = [
        ("tau", params.tau), ("V", params.V), ("x", params.x), ("x_is_bound", params.x_is_bound),
        ("eta", params.transmittance), ("distance_km", params.distance), ("n0", params.n0),
        ("xi", params.xi), ("phi", params.phi), ("detection", params.detection),
        ("variant", params.variant), ("mi_path", params.mi_path),
    ]
    return " ".join(f"{k}={format_value(v)}" for k, v in items)


def format_value(value) -> str:
    if isinstance(value, bool) or isinstance(value, str):
        return str(value).lower() if isinstance(value, bool) else value
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0:
        return "0"
    return f"{value:.10g}"
