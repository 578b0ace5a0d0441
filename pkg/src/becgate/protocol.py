"""Full gate: compress, hold, decompress.

Total phase is ``2 phi_a + phi_f`` and total time ``2 t_a + t_f``.  The
decompression ramp is the time reverse of the compression ramp, so it
contributes the same phase.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Sequence

import numpy as np

from .dynamics import Hold, RampSchedule, Shape, axis_survival, ermakov_evolve, phase_accumulate
from .medium import (
    REFERENCE_SCATTERING,
    RepulsiveTrapError,
    ScatteringSet,
    containment_check,
    effective_interactions,
    thomas_fermi,
)
from .quantities import RB87, Constants, angular, hz
from .twobody import (
    energy_shift,
    omega_tilde_from_fwhm,
    time_for_phase,
    trap_state_from_effective,
)


class GateConfigError(ValueError):
    pass


class PhaseOvershootError(ValueError):
    pass


@dataclass(frozen=True)
class GateConfig:
    """Inputs for one gate run.  Frequencies are angular (rad/s).

    ``omega_ratio`` is the bare-to-effective trap frequency ratio used for
    the condensate profile; ``None`` derives it from the scattering
    lengths as ``1 / sqrt(1 - a01/a00)``.
    """

    scattering: ScatteringSet = REFERENCE_SCATTERING
    omega_tilde_0: float = angular(10.0)
    omega_tilde_1: float = angular(80.0)
    shape: Shape = "smoothstep"
    t_a: float = 0.14
    t_f: float | None = None
    target_phase: float | None = math.pi
    atom_number: float = 1e5
    omega_ratio: float | None = None
    p_max: float = 0.002
    fidelity_max: float = 1e-2
    containment_threshold: float = 0.5
    sample_count: int = 10001

    def __post_init__(self):
        if not self.omega_tilde_0 > 0:
            raise GateConfigError("omega_tilde_0 must be positive")
        if self.omega_tilde_1 < self.omega_tilde_0:
            raise GateConfigError(
                f"ω̃₁ < ω̃₀ ({hz(self.omega_tilde_1):g} Hz < {hz(self.omega_tilde_0):g} Hz): "
                "the protocol compresses the trap"
            )
        if (self.t_f is None) == (self.target_phase is None):
            raise GateConfigError("specify exactly one of t_f and target_phase")
        if self.t_a < 0 or (self.t_f is not None and self.t_f < 0):
            raise GateConfigError("durations must be non-negative")

    @property
    def ramp(self) -> RampSchedule:
        return RampSchedule(
            self.omega_tilde_0, self.omega_tilde_1, self.t_a, self.shape, self.sample_count
        )


def reference_config() -> GateConfig:
    """Rb-87, Feshbach factor 3, 2pi*10 -> 2pi*80 Hz in 0.14 s, target phase pi.

    The bare trap is taken as 5x the effective one (2pi*50 Hz at 2pi*10 Hz).
    """
    return GateConfig(scattering=REFERENCE_SCATTERING.with_feshbach(3.0), omega_ratio=5.0)


def baseline_config() -> GateConfig:
    """No Feshbach enhancement, no compression: the slow baseline gate."""
    w = angular(10.0)
    return replace(reference_config(), scattering=REFERENCE_SCATTERING, omega_tilde_1=w, t_a=0.0)


PRESETS = {"reference": reference_config, "baseline": baseline_config}


@dataclass(frozen=True)
class Stage:
    """Trap and condensate at one of the two trap frequencies."""

    omega_tilde: float
    omega: float
    l: float
    s: float
    condensate_diameter: float
    peak_density: float
    containment_ratio: float
    contained: bool


@dataclass(frozen=True)
class GateReport:
    phi_a: float
    phi_f: float
    phi_total: float
    t_a: float
    t_f: float
    t_total: float
    delta_e: float
    p_exc_ramp: float
    p_exc_roundtrip: float
    fidelity_metric: float
    initial: Stage
    compressed: Stage
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def to_dict(self) -> dict[str, Any]:
        """Nested document; every physical number is ``{"value", "unit"}``."""

        def q(v, unit):
            return {"value": float(v), "unit": unit}

        def stage(st: Stage):
            return {
                "omega_tilde": q(hz(st.omega_tilde), "Hz"),
                "omega": q(hz(st.omega), "Hz"),
                "l": q(st.l * 1e6, "um"),
                "s": q(st.s * 1e6, "um"),
                "condensate_diameter": q(st.condensate_diameter * 1e6, "um"),
                "peak_density": q(st.peak_density * 1e-6, "cm^-3"),
                "containment_ratio": q(st.containment_ratio, "1"),
                "contained": st.contained,
            }

        return {
            "phase": {
                "phi_a": q(self.phi_a, "rad"),
                "phi_f": q(self.phi_f, "rad"),
                "phi_total": q(self.phi_total, "rad"),
            },
            "timing": {
                "t_a": q(self.t_a, "s"),
                "t_f": q(self.t_f, "s"),
                "t_total": q(self.t_total, "s"),
            },
            "interaction": {
                "delta_e": q(self.delta_e, "J"),
                "fidelity_metric": q(self.fidelity_metric, "1"),
            },
            "excitation": {
                "p_exc_ramp": q(self.p_exc_ramp, "1"),
                "p_exc_roundtrip": q(self.p_exc_roundtrip, "1"),
            },
            "initial": stage(self.initial),
            "compressed": stage(self.compressed),
            "flags": dict(self.flags),
        }


def _stage(cfg: GateConfig, omega_tilde: float, c: Constants) -> Stage:
    ts = trap_state_from_effective(omega_tilde, cfg.scattering, c, cfg.omega_ratio)
    prof = thomas_fermi(cfg.atom_number, ts.omega, cfg.scattering.a00, c)
    cont = containment_check(prof, ts.l, cfg.containment_threshold)
    return Stage(
        omega_tilde=omega_tilde,
        omega=ts.omega,
        l=ts.l,
        s=ts.s,
        condensate_diameter=prof.tf_diameter,
        peak_density=prof.peak_density,
        containment_ratio=cont.ratio,
        contained=cont.passed,
    )


def ramp_survival(ramp: RampSchedule) -> float:
    """Per-axis ground-state survival after one ramp."""
    b, bdot = ermakov_evolve(ramp, n_samples=2).final
    return float(axis_survival(b, bdot, ramp.omega_start, ramp.omega_end))


def simulate_gate(cfg: GateConfig, c: Constants = RB87) -> GateReport:
    med = effective_interactions(cfg.scattering, c)
    ramp = cfg.ramp
    phi_a = phase_accumulate(med, ramp, c)

    compressed = trap_state_from_effective(cfg.omega_tilde_1, cfg.scattering, c, cfg.omega_ratio)
    shift = energy_shift(med, compressed, c)
    if cfg.t_f is not None:
        t_f = cfg.t_f
    else:
        remaining = cfg.target_phase - 2.0 * phi_a
        if remaining < 0:
            raise PhaseOvershootError(
                f"phase overshoot during ramps: 2*phi_a = {2 * phi_a:.6g} rad exceeds target {cfg.target_phase:.6g} rad"
            )
        t_f = time_for_phase(remaining, shift)
    phi_f = phase_accumulate(med, Hold(cfg.omega_tilde_1, t_f), c)

    surv = ramp_survival(ramp)
    p_ramp = min(max(1.0 - surv**3, 0.0), 1.0)
    # Two independent ramps: per-axis survival squared, three axes.
    p_rt = min(max(1.0 - surv**6, 0.0), 1.0)

    initial = _stage(cfg, cfg.omega_tilde_0, c)
    comp = _stage(cfg, cfg.omega_tilde_1, c)
    flags = {
        "fidelity": shift.fidelity_metric < cfg.fidelity_max,
        "adiabatic": p_ramp <= cfg.p_max,
        "contained_initial": initial.contained,
        "contained_compressed": comp.contained,
    }
    return GateReport(
        phi_a=phi_a,
        phi_f=phi_f,
        phi_total=2.0 * phi_a + phi_f,
        t_a=cfg.t_a,
        t_f=t_f,
        t_total=2.0 * cfg.t_a + t_f,
        delta_e=shift.delta_e,
        p_exc_ramp=p_ramp,
        p_exc_roundtrip=p_rt,
        fidelity_metric=shift.fidelity_metric,
        initial=initial,
        compressed=comp,
        flags=flags,
    )


# --- ramp design -----------------------------------------------------------

T_MIN, T_MAX = 1e-4, 1e2


@dataclass(frozen=True)
class RampDesign:
    t_a: float | None
    p_exc: float | None
    evaluations: int

    @property
    def feasible(self) -> bool:
        return self.t_a is not None


def design_grid(resolution: float = 0.01) -> np.ndarray:
    n = int(math.ceil(math.log(T_MAX / T_MIN) / math.log1p(resolution)))
    return T_MIN * (1.0 + resolution) ** np.arange(n + 1)


def design_ramp(
    omega_0: float,
    omega_1: float,
    p_max: float,
    shape: Shape = "smoothstep",
    resolution: float = 0.01,
) -> RampDesign:
    """Shortest grid duration whose excitation, and that of the next two grid points, stays <= p_max.

    The neighbour guard rejects durations that only sit in a dip of the
    oscillating excitation curve.
    """
    if not 0 < p_max < 1:
        raise ValueError(f"p_max must lie in (0, 1), got {p_max!r}")
    grid = design_grid(resolution)
    cache: dict[int, float] = {}

    def p(i):
        if i not in cache:
            surv = ramp_survival(RampSchedule(omega_0, omega_1, float(grid[i]), shape))
            cache[i] = 1.0 - surv**3
        return cache[i]

    for i in range(grid.size):
        if p(i) > p_max:
            continue
        neighbours = range(i + 1, min(i + 3, grid.size))
        if all(p(j) <= p_max for j in neighbours):
            return RampDesign(float(grid[i]), p(i), len(cache))
    return RampDesign(None, None, len(cache))


# --- sensitivity -----------------------------------------------------------


@dataclass(frozen=True)
class SensitivityRow:
    parameter: str
    relative_change: float
    delta_e: float
    rel_delta_e: float
    rel_t_pi: float
    amplification: float
    valid: bool
    note: str = ""


def sensitivity_report(
    cfg: GateConfig, perturbation: float = 0.01, c: Constants = RB87
) -> list[SensitivityRow]:
    """One-at-a-time +/- relative perturbation of each scattering length.

    ``amplification`` is (relative change of Delta E) / (relative change of
    the input).  Evaluated in the compressed trap.
    """
    if not 0 < perturbation <= 0.1:
        raise ValueError(f"perturbation must lie in (0, 0.1], got {perturbation!r}")
    ts = trap_state_from_effective(cfg.omega_tilde_1, cfg.scattering, c, cfg.omega_ratio)
    base = energy_shift(effective_interactions(cfg.scattering, c), ts, c).delta_e
    rows = []
    for name in ("a00", "a01", "a02", "a12"):
        for sign in (+1.0, -1.0):
            rel = sign * perturbation
            s = replace(cfg.scattering, **{name: getattr(cfg.scattering, name) * (1.0 + rel)})
            try:
                de = energy_shift(effective_interactions(s, c), ts, c).delta_e
            except RepulsiveTrapError as exc:
                rows.append(SensitivityRow(name, rel, math.nan, math.nan, math.nan, math.nan, False, str(exc)))
                continue
            if base == 0:
                rows.append(SensitivityRow(name, rel, de, math.nan, math.nan, math.nan, False, "baseline ΔE = 0"))
                continue
            rel_de = de / base - 1.0
            rel_t = base / de - 1.0 if de != 0 else math.inf
            note = "ΔE changes sign" if de * base < 0 else ""
            rows.append(SensitivityRow(name, rel, de, rel_de, rel_t, rel_de / rel, True, note))
    return rows


# --- sweeps ----------------------------------------------------------------

SWEEP_AXES = ("F", "omega_tilde_1", "t_a", "l0", "N")


@dataclass(frozen=True)
class SweepRow:
    axis: str
    value: float
    report: GateReport | None
    error: str | None = None


def _apply(cfg: GateConfig, axis: str, value: float, c: Constants) -> GateConfig:
    if axis == "F":
        return replace(cfg, scattering=cfg.scattering.with_feshbach(value))
    if axis == "omega_tilde_1":
        return replace(cfg, omega_tilde_1=value)
    if axis == "t_a":
        return replace(cfg, t_a=value)
    if axis == "l0":
        return replace(cfg, omega_tilde_0=omega_tilde_from_fwhm(value, c))
    if axis == "N":
        return replace(cfg, atom_number=value)
    raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")


def sweep(
    cfg: GateConfig,
    axis: str,
    values: Sequence[float],
    c: Constants = RB87,
    workers: int = 1,
) -> list[SweepRow]:
    """One report per value, in input order.  Per-point failures land in ``error``."""
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")

    def run(value):
        try:
            return SweepRow(axis, value, simulate_gate(_apply(cfg, axis, value, c), c))
        except (ValueError, ArithmeticError) as exc:
            return SweepRow(axis, value, None, f"{type(exc).__name__}: {exc}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, values))
    return [run(v) for v in values]


def config_dict(cfg: GateConfig) -> dict[str, Any]:
    d = asdict(cfg)
    d["scattering"] = asdict(cfg.scattering)
    return d
