"""Effective single-excitation physics on top of a Thomas-Fermi condensate.

Spin waves in levels 1 and 2 see the bare trap reduced by the condensate's
mean field, and interact through scattering lengths corrected by the
background (``a_ij - a_0i a_0j / a_00``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .quantities import RB87, Constants


class RepulsiveTrapError(ValueError):
    """a01 >= a00: the effective potential seen by the spin waves is not confining."""


def coupling(a: float, c: Constants = RB87) -> float:
    """Contact coupling 4 pi hbar^2 a / m in J m^3."""
    return 4.0 * math.pi * c.hbar**2 * a / c.atom_mass


@dataclass(frozen=True)
class ScatteringSet:
    """s-wave scattering lengths in metres.

    Defaults are Rb-87 with level 0 in F=1 and levels 1, 2 in F=2.
    ``feshbach_factor`` multiplies a12 only.  a11/a22 are optional; they
    only enter the self-interactions, which play no role with one
    excitation per level.
    """

    a00: float = 5.39e-9
    a01: float = 5.24e-9
    a02: float = 5.24e-9
    a12: float = 5.58e-9
    feshbach_factor: float = 1.0
    a11: float | None = None
    a22: float | None = None

    def __post_init__(self):
        for name in ("a00", "a01", "a02", "a12"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if not self.feshbach_factor > 0:
            raise ValueError(f"feshbach_factor must be positive, got {self.feshbach_factor!r}")

    @property
    def a12_enhanced(self) -> float:
        return self.feshbach_factor * self.a12

    @property
    def background_a12(self) -> float:
        """The mean-field term a01 a02 / a00 that the bare a12 competes against."""
        return self.a01 * self.a02 / self.a00

    @property
    def effective_a12(self) -> float:
        return self.a12_enhanced - self.background_a12

    @property
    def trap_scale(self) -> float:
        return 1.0 - self.a01 / self.a00

    def with_feshbach(self, factor: float) -> "ScatteringSet":
        return replace(self, feshbach_factor=factor)

    def check_attractive(self) -> None:
        if not self.a01 < self.a00:
            raise RepulsiveTrapError(
                f"repulsive effective trap: a01={self.a01:.4g} m >= a00={self.a00:.4g} m"
            )


REFERENCE_SCATTERING = ScatteringSet()


@dataclass(frozen=True)
class EffectiveMedium:
    trap_scale: float
    u11: float | None
    u22: float | None
    u12: float
    ubar12: float


def effective_interactions(s: ScatteringSet, c: Constants = RB87) -> EffectiveMedium:
    s.check_attractive()
    u11 = coupling(s.a11 - s.a01**2 / s.a00, c) if s.a11 is not None else None
    u22 = coupling(s.a22 - s.a02**2 / s.a00, c) if s.a22 is not None else None
    u12 = coupling(s.effective_a12, c)
    return EffectiveMedium(
        trap_scale=s.trap_scale,
        u11=u11,
        u22=u22,
        u12=u12,
        ubar12=u12 * 2.0**-1.5,
    )


def effective_trap_frequency(omega: float, s: ScatteringSet) -> float:
    """Bare trap frequency -> frequency of the effective spin-wave trap."""
    s.check_attractive()
    return math.sqrt(s.trap_scale) * omega


def real_trap_frequency(omega_tilde: float, s: ScatteringSet) -> float:
    s.check_attractive()
    return omega_tilde / math.sqrt(s.trap_scale)


@dataclass(frozen=True)
class CondensateProfile:
    atom_number: float
    omega: float
    chemical_potential: float
    tf_radius: float
    tf_diameter: float
    peak_density: float


def thomas_fermi(N: float, omega: float, a00: float, c: Constants = RB87) -> CondensateProfile:
    """Isotropic harmonic-trap Thomas-Fermi profile of the level-0 condensate."""
    if N < 1:
        raise ValueError(f"atom number must be >= 1, got {N!r}")
    if not omega > 0:
        raise ValueError(f"trap frequency must be positive, got {omega!r}")
    a_ho = math.sqrt(c.hbar / (c.atom_mass * omega))
    x = 15.0 * N * a00 / a_ho
    mu = 0.5 * c.hbar * omega * x**0.4
    radius = a_ho * x**0.2
    return CondensateProfile(
        atom_number=N,
        omega=omega,
        chemical_potential=mu,
        tf_radius=radius,
        tf_diameter=2.0 * radius,
        peak_density=mu / coupling(a00, c),
    )


@dataclass(frozen=True)
class Containment:
    ratio: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.ratio < self.threshold


def containment_check(profile: CondensateProfile, l: float, threshold: float = 0.5) -> Containment:
    """Spin-wave FWHM relative to the condensate diameter."""
    return Containment(ratio=l / profile.tf_diameter, threshold=threshold)
