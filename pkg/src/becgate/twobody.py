"""Two stored excitations in the relative coordinate.

First-order collisional shift ``dE = ubar12 / s**3`` with
``s = sqrt(pi hbar / (m w))``, and the exact regularized-contact spectrum
(Busch et al.) as an independent check of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gamma, rgamma

from .medium import EffectiveMedium, ScatteringSet, real_trap_frequency
from .quantities import RB87, Constants

FWHM_TO_S = math.sqrt(math.pi / (8.0 * math.log(2.0)))


class NoInteractionError(ValueError):
    pass


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class TrapState:
    omega: float
    omega_tilde: float
    s: float
    l: float


def ground_state_scale(omega_tilde: float, c: Constants = RB87) -> float:
    return math.sqrt(math.pi * c.hbar / (c.atom_mass * omega_tilde))


def trap_state_from_effective(
    omega_tilde: float,
    scattering: ScatteringSet,
    c: Constants = RB87,
    omega_ratio: float | None = None,
) -> TrapState:
    """Build the trap state for an effective frequency.

    The bare frequency is ``omega_tilde / sqrt(1 - a01/a00)`` unless an
    explicit ``omega_ratio = omega / omega_tilde`` is given.
    """
    if not omega_tilde > 0:
        raise ValueError(f"omega_tilde must be positive, got {omega_tilde!r}")
    s = ground_state_scale(omega_tilde, c)
    if omega_ratio is None:
        omega = real_trap_frequency(omega_tilde, scattering)
    else:
        omega = omega_ratio * omega_tilde
    return TrapState(omega=omega, omega_tilde=omega_tilde, s=s, l=s / FWHM_TO_S)


def omega_tilde_from_fwhm(l: float, c: Constants = RB87) -> float:
    s = FWHM_TO_S * l
    return math.pi * c.hbar / (c.atom_mass * s * s)


def trap_state_from_fwhm(
    l: float, scattering: ScatteringSet, c: Constants = RB87, omega_ratio: float | None = None
) -> TrapState:
    return trap_state_from_effective(omega_tilde_from_fwhm(l, c), scattering, c, omega_ratio)


@dataclass(frozen=True)
class ShiftResult:
    delta_e: float
    phase_rate: float
    fidelity_metric: float


def energy_shift(med: EffectiveMedium, t: TrapState, c: Constants = RB87) -> ShiftResult:
    delta_e = med.ubar12 / t.s**3
    return ShiftResult(
        delta_e=delta_e,
        phase_rate=delta_e / c.hbar,
        fidelity_metric=delta_e / (c.hbar * t.omega_tilde),
    )


def time_for_phase(target_phase: float, shift: ShiftResult) -> float:
    if target_phase == 0:
        return 0.0
    if shift.phase_rate == 0:
        raise NoInteractionError("no interaction: phase rate is zero")
    if shift.phase_rate < 0:
        raise NoInteractionError(f"phase rate is negative ({shift.phase_rate:.3g} rad/s)")
    return target_phase / shift.phase_rate


# --- exact pair spectrum -------------------------------------------------


def _inverse_relation(nu: float) -> float:
    """Gamma(-nu - 1/2) / (sqrt 2 Gamma(-nu)), the reciprocal of the Busch relation.

    Smooth and increasing on (-1/2, 1/2), zero at nu = 0; equals a_eff / a_rel
    on the branch that contains the noninteracting ground state.
    """
    return gamma(-nu - 0.5) * rgamma(-nu) / math.sqrt(2.0)


def pair_level(ratio: float, rtol: float = 1e-15) -> float:
    """Solve for nu given ``ratio = a_eff / a_rel`` on the ground branch.

    Bisection from a bracket of half-width 5e-5 in nu (energy 1.4999..1.5001
    in units of hbar w), widened geometrically towards the branch ends.
    ``ratio = +-inf`` is the resonance limit, nu = +-1/2.
    """
    if ratio == 0:
        return 0.0
    if math.isinf(ratio):
        return math.copysign(0.5, ratio)
    edge = 0.5 - 1e-15
    lo, hi = -5e-5, 5e-5
    f = lambda nu: _inverse_relation(nu) - ratio
    while f(lo) > 0 or f(hi) < 0:
        if lo <= -edge and hi >= edge:
            raise OracleError(
                f"root not bracketed for a_eff/a_rel={ratio!r}: "
                f"f({lo})={f(lo):.3g}, f({hi})={f(hi):.3g}"
            )
        if f(lo) > 0:
            lo = max(2.0 * lo, -edge)
        if f(hi) < 0:
            hi = min(2.0 * hi, edge)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= rtol * max(abs(mid), 1e-300):
            break
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ExactPairEnergy:
    energy: float
    shift: float
    scattering_parameter: float


def effective_scattering_length(med: EffectiveMedium, c: Constants = RB87) -> float:
    """Scattering length whose contact coupling in the relative frame is ubar12.

    In the scaled relative coordinate the pair has mass m and coupling
    ubar12 = 4 pi hbar^2 a / m * 2**-1.5, so a = 2**1.5 m ubar12 / (4 pi hbar^2).
    """
    return 2.0**1.5 * c.atom_mass * med.ubar12 / (4.0 * math.pi * c.hbar**2)


def exact_pair_energy(
    med: EffectiveMedium, t: TrapState, c: Constants = RB87, guard: float = 0.5
) -> ExactPairEnergy:
    a_rel = math.sqrt(c.hbar / (c.atom_mass * t.omega_tilde))
    ratio = effective_scattering_length(med, c) / a_rel
    if abs(ratio) >= guard:
        raise OracleError(f"|a_eff/a_rel| = {abs(ratio):.3g} outside perturbative branch guard {guard}")
    nu = pair_level(ratio)
    hw = c.hbar * t.omega_tilde
    return ExactPairEnergy(energy=(2.0 * nu + 1.5) * hw, shift=2.0 * nu * hw, scattering_parameter=ratio)
