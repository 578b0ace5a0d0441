"""Grid check of ramp adiabaticity, independent of the scale-factor route.

One axis of the trap is evolved on a uniform grid with Crank-Nicolson
(second-order finite differences, midpoint potential), starting from the
discrete ground state of the initial trap and projecting at the end onto
the discrete ground state of the final trap.  Units: lengths in
``sqrt(hbar / (m omega_start))``, times in ``1 / omega_start``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_banded

from .dynamics import RampSchedule


class DiscretizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class TdseResult:
    excitation_probability: float
    norm_drift: float
    n_points: int
    n_steps: int
    sample_times: np.ndarray
    sample_excitation: np.ndarray


def _ground_state(x: np.ndarray, dx: float, w: float) -> np.ndarray:
    diag = 1.0 / dx**2 + 0.5 * w * w * x * x
    off = np.full(x.size - 1, -0.5 / dx**2)
    _, vec = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0))
    return vec[:, 0] / math.sqrt(dx)


def tdse_oracle(
    r: RampSchedule,
    points_per_width: float = 35.0,
    widths: float = 10.0,
    steps_per_period: int = 400,
    sample_times=None,
    norm_tol: float = 1e-8,
) -> TdseResult:
    """3D excitation probability (per-axis survival cubed) for the ramp.

    The grid half-width is ``widths`` times the widest ground state met on
    the ramp; the spacing resolves the narrowest one by
    ``points_per_width``.  ``sample_times`` (seconds) optionally records the
    excitation out of the instantaneous ground state along the way.
    """
    if steps_per_period < 100:
        raise ValueError("need at least 100 time steps per trap period")
    w0 = r.omega_start
    u = np.linspace(0.0, 1.0, 513)
    prof = r.profile(u)
    w_min, w_max = float(prof.min()), float(prof.max())
    sigma_min, sigma_max = 1.0 / math.sqrt(w_max), 1.0 / math.sqrt(w_min)
    half = widths * sigma_max
    dx = sigma_min / points_per_width
    x = np.arange(-half, half + 0.5 * dx, dx)
    n = x.size

    psi = _ground_state(x, dx, 1.0).astype(complex)
    norm0 = float(np.sum(np.abs(psi) ** 2) * dx)

    T = w0 * r.duration
    if T > 0:
        n_steps = int(math.ceil(T * w_max * steps_per_period / (2.0 * math.pi)))
        dt = T / n_steps
    else:
        n_steps, dt = 0, 0.0

    samples = np.array([] if sample_times is None else sample_times, dtype=float)
    sample_steps = np.rint(samples * w0 / dt).astype(int) if n_steps else np.zeros(samples.size, int)
    sample_exc = np.empty(samples.size)

    def excitation(state, w):
        g = _ground_state(x, dx, w)
        surv = abs(np.sum(g * state) * dx) ** 2 / (np.sum(np.abs(state) ** 2) * dx)
        return min(max(1.0 - surv**3, 0.0), 1.0)

    def record(step):
        for i in np.nonzero(sample_steps == step)[0]:
            sample_exc[i] = excitation(psi, float(r.profile(step / n_steps)) if n_steps else 1.0)

    off = -0.5 / dx**2
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = 0.5j * dt * off
    ab[2, :-1] = 0.5j * dt * off
    kin = 1.0 / dx**2
    record(0)
    for k in range(n_steps):
        w = float(r.profile((k + 0.5) / n_steps))
        diag = kin + 0.5 * w * w * x * x
        ab[1] = 1.0 + 0.5j * dt * diag
        rhs = (1.0 - 0.5j * dt * diag) * psi
        rhs[1:] -= 0.5j * dt * off * psi[:-1]
        rhs[:-1] -= 0.5j * dt * off * psi[1:]
        psi = solve_banded((1, 1), ab, rhs, check_finite=False)
        record(k + 1)

    drift = abs(float(np.sum(np.abs(psi) ** 2) * dx) - norm0)
    if drift > norm_tol:
        raise DiscretizationError(
            f"norm drift {drift:.3g} exceeds {norm_tol:g} (n={n}, dx={dx:.4g}, steps={n_steps}, dt={dt:.4g})"
        )
    w_end = r.omega_end / w0
    return TdseResult(
        excitation_probability=excitation(psi, w_end),
        norm_drift=drift,
        n_points=n,
        n_steps=n_steps,
        sample_times=samples,
        sample_excitation=sample_exc,
    )
