import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from becgate.medium import REFERENCE_SCATTERING, ScatteringSet, effective_interactions
from becgate.quantities import RB87
from becgate.twobody import (
    FWHM_TO_S,
    NoInteractionError,
    OracleError,
    ShiftResult,
    energy_shift,
    exact_pair_energy,
    omega_tilde_from_fwhm,
    pair_level,
    time_for_phase,
    trap_state_from_effective,
    trap_state_from_fwhm,
)

from .conftest import W10, W80


def busch_mp(ratio, dps=40):
    """Root of Gamma(-nu-1/2)/(sqrt2 Gamma(-nu)) = ratio with mpmath's secant solver."""
    with mpmath.workdps(dps):
        f = lambda nu: mpmath.gamma(-nu - 0.5) / (mpmath.sqrt(2) * mpmath.gamma(-nu)) - ratio
        return float(mpmath.findroot(f, mpmath.mpf(ratio) / 2.5))


def test_trap_state_relations(reference, c):
    t = trap_state_from_effective(W10, reference, c)
    assert t.s == pytest.approx(FWHM_TO_S * t.l, rel=1e-15)
    assert t.s == pytest.approx(math.sqrt(math.pi * c.hbar / (c.atom_mass * W10)), rel=1e-15)
    assert t.omega == pytest.approx(W10 / math.sqrt(1 - 5.24 / 5.39))


def test_fwhm_is_gaussian_fwhm(reference, c):
    """l is the full width at half maximum of the amplitude exp(-m w r^2 / 2 hbar)."""
    t = trap_state_from_effective(W10, reference, c)
    half = t.l / 2
    amplitude = math.exp(-c.atom_mass * W10 * half**2 / (2 * c.hbar))
    assert amplitude == pytest.approx(0.5, rel=1e-14)


def test_reference_sizes(reference, c):
    assert trap_state_from_effective(W10, reference, c).l == pytest.approx(8.0e-6, rel=0.02)
    assert trap_state_from_effective(W80, reference, c).l == pytest.approx(2.84e-6, rel=0.005)
    assert trap_state_from_effective(W80, reference, c).l == pytest.approx(2.9e-6, rel=0.03)


def test_four_times_frequency_halves_s(reference, c):
    assert trap_state_from_effective(4 * W10, reference, c).s == pytest.approx(
        trap_state_from_effective(W10, reference, c).s / 2, rel=1e-15
    )


def test_fwhm_inversion(reference, c):
    t = trap_state_from_fwhm(8e-6, reference, c)
    assert t.l == pytest.approx(8e-6, rel=1e-14)
    assert omega_tilde_from_fwhm(t.l, c) == pytest.approx(t.omega_tilde, rel=1e-14)


def test_explicit_omega_ratio(reference, c):
    assert trap_state_from_effective(W10, reference, c, omega_ratio=5.0).omega == pytest.approx(5 * W10)


def test_energy_shift_baseline(med_f1, reference, c):
    sh = energy_shift(med_f1, trap_state_from_effective(W10, reference, c), c)
    # 40-digit closed-form evaluation
    assert sh.delta_e == pytest.approx(7.531573505086564e-37, rel=1e-12)
    assert sh.delta_e == pytest.approx(7.6e-37, rel=0.02)
    assert sh.phase_rate == sh.delta_e / c.hbar


def test_energy_shift_zero_interaction(reference, c):
    med = effective_interactions(ScatteringSet(a12=5.24e-9**2 / 5.39e-9), c)
    sh = energy_shift(med, trap_state_from_effective(W10, reference, c), c)
    assert sh.delta_e == pytest.approx(0, abs=1e-55)
    assert sh.phase_rate == pytest.approx(0, abs=1e-20)


def test_fidelity_metric_compressed(med_f3, reference_f3, c):
    sh = energy_shift(med_f3, trap_state_from_effective(W80, reference_f3, c), c)
    assert sh.fidelity_metric < 1e-2
    assert sh.fidelity_metric == pytest.approx(7.706631037200107e-3, rel=1e-12)


def test_time_for_phase(med_f1, med_f3, reference, reference_f3, c):
    base = energy_shift(med_f1, trap_state_from_effective(W10, reference, c), c)
    assert time_for_phase(math.pi, base) == pytest.approx(439.88617660473347, rel=1e-12)
    assert 360 * 0.7 <= time_for_phase(math.pi, base) <= 360 * 1.3
    comp = energy_shift(med_f3, trap_state_from_effective(W80, reference_f3, c), c)
    assert time_for_phase(math.pi, comp) == pytest.approx(0.80, rel=0.02)
    assert time_for_phase(math.pi, comp) == pytest.approx(0.73, rel=0.15)
    assert time_for_phase(0.0, comp) == 0.0


def test_time_for_phase_no_interaction():
    with pytest.raises(NoInteractionError, match="no interaction"):
        time_for_phase(math.pi, ShiftResult(0.0, 0.0, 0.0))


@given(st.floats(1e-3, 1e3))
def test_shift_scaling(k):
    med = effective_interactions(REFERENCE_SCATTERING)
    t1 = trap_state_from_effective(W10, REFERENCE_SCATTERING)
    tk = trap_state_from_effective(k * W10, REFERENCE_SCATTERING)
    assert energy_shift(med, tk).delta_e == pytest.approx(k**1.5 * energy_shift(med, t1).delta_e, rel=1e-12)
    assert energy_shift(med, tk).fidelity_metric == pytest.approx(
        k**0.5 * energy_shift(med, t1).fidelity_metric, rel=1e-12
    )


@given(st.floats(1.0, 30.0))
def test_time_for_phase_hyperbola(f):
    s = REFERENCE_SCATTERING.with_feshbach(f)
    t = trap_state_from_effective(W80, s)
    tp = time_for_phase(math.pi, energy_shift(effective_interactions(s), t))
    # t_pi * (F a12 - a01 a02 / a00) is independent of F
    invariant = tp * s.effective_a12
    ref_s = REFERENCE_SCATTERING.with_feshbach(3.0)
    ref = time_for_phase(math.pi, energy_shift(effective_interactions(ref_s), t)) * ref_s.effective_a12
    assert invariant == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("ratio", [1e-4, 1e-3, 0.05, 0.1, 0.3, -0.1, -0.3])
def test_pair_level_matches_mpmath(ratio):
    assert pair_level(ratio) == pytest.approx(busch_mp(ratio), rel=1e-12)


def test_pair_noninteracting(med_f1, reference, c):
    t = trap_state_from_effective(W10, reference, c)
    zero = effective_interactions(ScatteringSet(a12=5.24e-9**2 / 5.39e-9), c)
    e = exact_pair_energy(zero, t, c)
    assert e.energy == pytest.approx(1.5 * c.hbar * W10, rel=1e-12)
    assert pair_level(0.0) == 0.0


def test_pair_first_order_agreement(reference_f3, med_f3, c):
    # choose w so that a_eff/a_rel = 1e-3
    a = reference_f3.effective_a12
    w = 1e-6 * c.hbar / (c.atom_mass * a * a)
    t = trap_state_from_effective(w, reference_f3, c)
    e = exact_pair_energy(med_f3, t, c)
    assert e.scattering_parameter == pytest.approx(1e-3, rel=1e-12)
    assert e.energy - 1.5 * c.hbar * w == pytest.approx(e.shift, rel=1e-6)
    assert e.shift == pytest.approx(energy_shift(med_f3, t, c).delta_e, rel=1e-2)


@pytest.mark.parametrize("x", [1e-4, 3e-4, 1e-3, 3e-3, 1e-2])
def test_pair_oracle_first_order_bound(reference_f3, med_f3, c, x):
    a = reference_f3.effective_a12
    w = x * x * c.hbar / (c.atom_mass * a * a)
    t = trap_state_from_effective(w, reference_f3, c)
    ex = exact_pair_energy(med_f3, t, c).shift
    pert = energy_shift(med_f3, t, c).delta_e
    assert abs(ex - pert) / pert < 3 * x


def test_reference_regime_is_perturbative(med_f3, reference_f3, c):
    t = trap_state_from_effective(W80, reference_f3, c)
    e = exact_pair_energy(med_f3, t, c)
    assert e.scattering_parameter < 1e-2
    assert e.shift == pytest.approx(energy_shift(med_f3, t, c).delta_e, rel=3 * e.scattering_parameter)


def test_resonance_limit():
    assert 2 * pair_level(-1e9) + 1.5 == pytest.approx(0.5, abs=1e-8)
    assert 2 * pair_level(-math.inf) + 1.5 == 0.5
    assert 2 * pair_level(1e9) + 1.5 == pytest.approx(2.5, abs=1e-8)


def test_guard(med_f1, reference, c):
    t = trap_state_from_effective(1e12, reference, c)
    with pytest.raises(OracleError, match="guard"):
        exact_pair_energy(med_f1, t, c)


@settings(max_examples=50)
@given(st.floats(-0.49, 0.49))
def test_pair_level_monotone_branch(x):
    nu = pair_level(x)
    assert -0.5 < nu < 0.5
    assert math.copysign(1, nu) == math.copysign(1, x) or x == 0
