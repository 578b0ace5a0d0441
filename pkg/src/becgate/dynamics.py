"""Trap compression and decompression ramps.

A Gaussian ground state in a time-dependent harmonic trap stays Gaussian;
its width follows the Ermakov scale factor ``b(t)``::

    b'' + w(t)**2 b = w(0)**2 / b**3,   b(0) = 1, b'(0) = 0

The excitation probability at the end of a ramp follows from the overlap
of that Gaussian with the final ground state.  The equation is integrated
in the dimensionless time ``tau = w(0) t`` so that rescaling the schedule
as ``(w(t), t) -> (k w(k t), t / k)`` gives the same numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal, Union

import numpy as np
from scipy.integrate import simpson, solve_ivp

from .medium import EffectiveMedium
from .quantities import RB87, Constants

Shape = Literal["linear", "exponential", "smoothstep"]
SHAPES: tuple[str, ...] = ("linear", "exponential", "smoothstep")


class StiffnessError(RuntimeError):
    pass


def smoothstep(u):
    return u * u * (3.0 - 2.0 * u)


@dataclass(frozen=True)
class RampSchedule:
    """Effective trap frequency moving from ``omega_start`` to ``omega_end``.

    Shapes, with ``u = t / duration``:

    * ``linear``: linear in w.
    * ``exponential``: linear in log w.
    * ``smoothstep``: log w follows ``3u^2 - 2u^3``; zero slope at both ends.
    """

    omega_start: float
    omega_end: float
    duration: float
    shape: Shape = "smoothstep"
    sample_count: int = 10001

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown ramp shape {self.shape!r}; expected one of {SHAPES}")
        if not (self.omega_start > 0 and self.omega_end > 0):
            raise ValueError("ramp frequencies must be positive")
        if self.duration < 0:
            raise ValueError(f"ramp duration must be >= 0, got {self.duration!r}")
        if self.sample_count < 3:
            raise ValueError("sample_count must be at least 3")

    @property
    def is_constant(self) -> bool:
        return self.omega_start == self.omega_end

    def profile(self, u):
        """w / omega_start as a function of the ramp fraction u in [0, 1]."""
        u = np.clip(u, 0.0, 1.0)
        r = self.omega_end / self.omega_start
        if self.shape == "linear":
            return 1.0 + (r - 1.0) * u
        if self.shape == "exponential":
            return r**u
        return r ** smoothstep(u)

    def omega(self, t):
        if self.duration == 0:
            return self.omega_end * np.ones_like(np.asarray(t, dtype=float))
        return self.omega_start * self.profile(np.asarray(t, dtype=float) / self.duration)

    def reversed(self) -> "RampSchedule":
        return replace(self, omega_start=self.omega_end, omega_end=self.omega_start)

    def scaled(self, k: float) -> "RampSchedule":
        """Frequencies times k, duration divided by k."""
        return replace(
            self, omega_start=k * self.omega_start, omega_end=k * self.omega_end, duration=self.duration / k
        )


@dataclass(frozen=True)
class Hold:
    omega_tilde: float
    duration: float


@dataclass(frozen=True)
class ScaleTrajectory:
    t: np.ndarray
    b: np.ndarray
    bdot: np.ndarray
    omega: np.ndarray
    omega_start: float

    @property
    def final(self) -> tuple[float, float]:
        return float(self.b[-1]), float(self.bdot[-1])


def ermakov_evolve(
    r: RampSchedule,
    n_samples: int = 201,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    max_step: float = np.inf,
) -> ScaleTrajectory:
    """Integrate the scale factor over the ramp; returns samples including both ends.

    ``max_step`` is in units of 1/omega_start.
    """
    w0 = r.omega_start
    T = w0 * r.duration
    # below 1e-12 trap periods the ramp is a sudden quench to O(T^2)
    if T < 1e-12 or r.is_constant:
        t = np.linspace(0.0, r.duration, n_samples if T > 0 else 1)
        ones = np.ones_like(t)
        return ScaleTrajectory(t, ones, np.zeros_like(t), r.omega(t), w0)

    ratio = r.omega_end / w0
    shape = r.shape

    if shape == "linear":
        def prof(u):
            return 1.0 + (ratio - 1.0) * u
    elif shape == "exponential":
        def prof(u):
            return ratio**u
    else:
        def prof(u):
            return ratio ** (u * u * (3.0 - 2.0 * u))

    def rhs(tau, y):
        u = min(max(tau / T, 0.0), 1.0)
        w = prof(u)
        b = y[0]
        return [y[1], -w * w * b + 1.0 / (b * b * b)]

    tau_eval = np.linspace(0.0, T, n_samples)
    sol = solve_ivp(
        rhs, (0.0, T), [1.0, 0.0], method="DOP853", t_eval=tau_eval,
        rtol=rtol, atol=atol, max_step=max_step,
    )
    if sol.status != 0:
        last = sol.t[-1] if sol.t.size else 0.0
        raise StiffnessError(
            f"Ermakov integration failed at tau={last:.6g} of {T:.6g} "
            f"(shape={shape}, ratio={ratio:.4g}): {sol.message}"
        )
    t = sol.t / w0
    return ScaleTrajectory(
        t=t,
        b=sol.y[0],
        bdot=sol.y[1] * w0,
        omega=r.omega(t),
        omega_start=w0,
    )


def axis_survival(b, bdot, omega_start: float, omega_now):
    """Overlap probability of the scaled Gaussian with the ground state at ``omega_now``.

    The evolved state is ``exp(-(alpha/2) m x^2 / hbar)`` with
    ``alpha = omega_start / b^2 - i bdot / b``.
    """
    b = np.asarray(b, dtype=float)
    alpha = omega_start / b**2 - 1j * np.asarray(bdot) / b
    return 2.0 * np.sqrt(alpha.real * omega_now) / np.abs(alpha + omega_now)


def excitation_probability(trajectory: ScaleTrajectory, omega_end: float) -> float:
    b, bdot = trajectory.final
    surv = float(axis_survival(b, bdot, trajectory.omega_start, omega_end))
    return min(max(1.0 - surv**3, 0.0), 1.0)


def excitation_trace(trajectory: ScaleTrajectory) -> np.ndarray:
    """Excitation out of the instantaneous ground state along the ramp."""
    surv = axis_survival(trajectory.b, trajectory.bdot, trajectory.omega_start, trajectory.omega)
    return np.clip(1.0 - surv**3, 0.0, 1.0)


def _shift_rate(med: EffectiveMedium, omega, c: Constants):
    """Delta E / hbar in the instantaneous ground state at trap frequency omega."""
    return med.ubar12 * (c.atom_mass * np.asarray(omega) / (math.pi * c.hbar)) ** 1.5 / c.hbar


def phase_accumulate(
    med: EffectiveMedium,
    segment: Union[RampSchedule, Hold],
    c: Constants = RB87,
    rtol: float = 1e-8,
) -> float:
    """Interaction phase collected over a ramp or a hold."""
    if isinstance(segment, Hold):
        return float(_shift_rate(med, segment.omega_tilde, c)) * segment.duration
    if segment.duration == 0:
        return 0.0
    n = segment.sample_count | 1
    prev = None
    for _ in range(12):
        t = np.linspace(0.0, segment.duration, n)
        phi = float(simpson(_shift_rate(med, segment.omega(t), c), x=t))
        if prev is not None and abs(phi - prev) <= rtol * abs(phi):
            return phi
        prev = phi
        n = 2 * n - 1
    raise RuntimeError(f"phase quadrature did not converge to {rtol} (last n={n})")


@dataclass(frozen=True)
class RampResult:
    excitation_probability: float
    adiabatic_phase: float
    scale_trajectory: ScaleTrajectory


def simulate_ramp(med: EffectiveMedium, r: RampSchedule, c: Constants = RB87) -> RampResult:
    traj = ermakov_evolve(r)
    return RampResult(
        excitation_probability=excitation_probability(traj, r.omega_end),
        adiabatic_phase=phase_accumulate(med, r, c),
        scale_trajectory=traj,
    )
