"""Flat ``key = "value"`` run configuration with mandatory units.

Example::

    # reference scenario
    a12 = "5.58 nm"
    feshbach_factor = 3
    omega_tilde_0 = "2pi*10 Hz"
    omega_tilde_1 = "2pi*80 Hz"
    t_a = "0.14 s"
    target_phase = "pi"
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Any, Callable

from .dynamics import SHAPES
from .medium import ScatteringSet
from .protocol import PRESETS, GateConfig, GateConfigError
from .quantities import Dimension, UnitError, parse_phase, parse_si


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.key = key


def _quantity(dim: Dimension) -> Callable[[str, str | None], float]:
    def parse(text: str, default_unit: str | None = None) -> float:
        return parse_si(text, dim, default_unit)

    return parse


def _number(text: str, default_unit: str | None = None) -> float:
    return float(text)


def _shape(text: str, default_unit: str | None = None) -> str:
    if text not in SHAPES:
        raise ValueError(f"unknown shape {text!r}; expected one of {SHAPES}")
    return text


def _phase(text: str, default_unit: str | None = None) -> float:
    return parse_phase(text)


def _format(text: str, default_unit: str | None = None) -> str:
    if text not in ("table", "json", "csv"):
        raise ValueError(f"unknown format {text!r}")
    return text


# key -> parser; parsers get the raw text and, for CLI flags, a fallback unit
KEYS: dict[str, Callable[..., Any]] = {
    "a00": _quantity(Dimension.LENGTH),
    "a01": _quantity(Dimension.LENGTH),
    "a02": _quantity(Dimension.LENGTH),
    "a12": _quantity(Dimension.LENGTH),
    "feshbach_factor": _number,
    "omega_tilde_0": _quantity(Dimension.ANGULAR_FREQUENCY),
    "omega_tilde_1": _quantity(Dimension.ANGULAR_FREQUENCY),
    "shape": _shape,
    "t_a": _quantity(Dimension.TIME),
    "t_f": _quantity(Dimension.TIME),
    "target_phase": _phase,
    "atom_number": _number,
    "omega_ratio": _number,
    "p_max": _number,
    "containment_threshold": _number,
    "format": _format,
    "output": str,
}

SCATTERING_KEYS = ("a00", "a01", "a02", "a12", "feshbach_factor")

_LINE = re.compile(r'^\s*(?P<key>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<val>"[^"]*"|[^#"]+?)\s*(?:#.*)?$')


def parse_text(text: str) -> dict[str, Any]:
    """Parse config text into a dict of SI values (and strings for options)."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE.match(raw)
        if m is None:
            raise ConfigError(f"expected key = value, got {stripped!r}", line=lineno)
        key, val = m["key"], m["val"].strip()
        if key not in KEYS:
            raise ConfigError(f"unknown key; known keys: {', '.join(KEYS)}", line=lineno, key=key)
        if key in out:
            raise ConfigError("duplicate key", line=lineno, key=key)
        val = val[1:-1] if val.startswith('"') else val
        try:
            out[key] = KEYS[key](val)
        except (ValueError, UnitError) as exc:
            raise ConfigError(str(exc), line=lineno, key=key) from None
    return out


def load(path: str) -> dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def apply_overrides(cfg: GateConfig, values: dict[str, Any]) -> GateConfig:
    """Layer parsed values over a base config.  Setting t_f clears target_phase and vice versa."""
    scat = {k: values[k] for k in SCATTERING_KEYS if k in values}
    fields = {
        k: v
        for k, v in values.items()
        if k not in SCATTERING_KEYS and k not in ("format", "output")
    }
    if "t_f" in fields and "target_phase" in fields:
        raise ConfigError("t_f and target_phase are mutually exclusive")
    if "t_f" in fields:
        fields["target_phase"] = None
    elif "target_phase" in fields:
        fields["t_f"] = None
    try:
        scattering: ScatteringSet = replace(cfg.scattering, **scat)
        return replace(cfg, scattering=scattering, **fields)
    except GateConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def base_config(preset: str) -> GateConfig:
    try:
        return PRESETS[preset]()
    except KeyError:
        raise ConfigError(f"unknown preset {preset!r}; known: {', '.join(PRESETS)}") from None


def to_text(cfg: GateConfig) -> str:
    """Render a config in the file format (round-trips through ``parse_text``)."""
    s = cfg.scattering
    lines = [
        f'a00 = "{s.a00!r} m"',
        f'a01 = "{s.a01!r} m"',
        f'a02 = "{s.a02!r} m"',
        f'a12 = "{s.a12!r} m"',
        f"feshbach_factor = {s.feshbach_factor!r}",
        f'omega_tilde_0 = "{cfg.omega_tilde_0!r} rad/s"',
        f'omega_tilde_1 = "{cfg.omega_tilde_1!r} rad/s"',
        f'shape = "{cfg.shape}"',
        f't_a = "{cfg.t_a!r} s"',
    ]
    if cfg.t_f is not None:
        lines.append(f't_f = "{cfg.t_f!r} s"')
    else:
        lines.append(f'target_phase = "{cfg.target_phase!r}"')
    lines.append(f"atom_number = {cfg.atom_number!r}")
    if cfg.omega_ratio is not None:
        lines.append(f"omega_ratio = {cfg.omega_ratio!r}")
    lines += [f"p_max = {cfg.p_max!r}", f"containment_threshold = {cfg.containment_threshold!r}"]
    return "\n".join(lines) + "\n"
