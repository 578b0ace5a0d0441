import math
from dataclasses import replace

import pytest

from becgate.medium import REFERENCE_SCATTERING, ScatteringSet
from becgate.protocol import (
    T_MIN,
    GateConfig,
    GateConfigError,
    PhaseOvershootError,
    baseline_config,
    design_grid,
    design_ramp,
    reference_config,
    ramp_survival,
    sensitivity_report,
    simulate_gate,
    sweep,
)
from becgate.dynamics import RampSchedule

from .conftest import W10, W80


@pytest.fixture(scope="module")
def reference_report():
    return simulate_gate(reference_config())


def test_reference_scenario(reference_report):
    rep = reference_report
    assert rep.t_total == pytest.approx(1.01, rel=0.15)
    assert rep.phi_total == pytest.approx(math.pi, rel=1e-8)
    assert rep.fidelity_metric < 1e-2
    assert rep.p_exc_ramp < 0.002
    assert rep.ok


def test_composition_exact(reference_report):
    rep = reference_report
    assert rep.phi_total == 2.0 * rep.phi_a + rep.phi_f
    assert rep.t_total == 2.0 * rep.t_a + rep.t_f


def test_roundtrip_bound(reference_report):
    assert reference_report.p_exc_roundtrip <= 2 * reference_report.p_exc_ramp + 1e-12
    assert reference_report.p_exc_roundtrip > reference_report.p_exc_ramp


def test_report_stages(reference_report):
    ini, comp = reference_report.initial, reference_report.compressed
    assert ini.l == pytest.approx(8e-6, rel=0.02)
    assert comp.l == pytest.approx(2.9e-6, rel=0.03)
    assert ini.omega == pytest.approx(2 * math.pi * 50)
    assert ini.condensate_diameter == pytest.approx(17e-6, rel=0.1)
    assert comp.condensate_diameter == pytest.approx(7.4e-6, rel=0.1)
    assert ini.contained and comp.contained


def test_target_phase_round_trip(reference_report):
    again = simulate_gate(replace(reference_config(), target_phase=None, t_f=reference_report.t_f))
    assert again.phi_total == pytest.approx(math.pi, rel=1e-8)


def test_baseline_gate():
    rep = simulate_gate(baseline_config())
    assert rep.t_a == 0 and rep.phi_a == 0
    assert rep.t_f == pytest.approx(435, rel=0.02)
    assert 360 * 0.7 <= rep.t_f <= 360 * 1.3
    assert rep.p_exc_ramp == 0.0


def test_zero_target():
    rep = simulate_gate(replace(baseline_config(), target_phase=0.0))
    assert rep.t_total == 0.0
    assert rep.phi_total == 0.0


def test_phase_overshoot():
    cfg = replace(reference_config(), target_phase=0.1)
    with pytest.raises(PhaseOvershootError, match="overshoot"):
        simulate_gate(cfg)


def test_config_invariants():
    with pytest.raises(GateConfigError, match="ω̃₁ < ω̃₀"):
        GateConfig(omega_tilde_0=W80, omega_tilde_1=W10)
    with pytest.raises(GateConfigError, match="exactly one"):
        GateConfig(t_f=1.0, target_phase=math.pi)
    with pytest.raises(GateConfigError, match="exactly one"):
        GateConfig(t_f=None, target_phase=None)


def test_containment_flag_is_warning_not_error():
    rep = simulate_gate(replace(reference_config(), atom_number=100.0))
    assert not rep.flags["contained_initial"]
    assert not rep.ok


def test_quench_flags_adiabaticity():
    rep = simulate_gate(replace(reference_config(), t_a=0.0))
    assert rep.p_exc_ramp == pytest.approx(0.7517, abs=1e-4)
    assert not rep.flags["adiabatic"]


# --- design -----------------------------------------------------------------


def test_design_constant():
    d = design_ramp(W10, W10, 0.002)
    assert d.t_a == T_MIN
    assert d.p_exc == 0.0


def test_design_grid_resolution():
    g = design_grid()
    assert g[0] == T_MIN and g[-1] >= 1e2
    assert g[1] / g[0] == pytest.approx(1.01)


@pytest.fixture(scope="module")
def design_002():
    return design_ramp(W10, W80, 0.002, "smoothstep")


def test_design_reference(design_002):
    assert design_002.feasible
    assert design_002.t_a <= 0.14
    assert design_002.p_exc <= 0.002
    # neighbour guard
    g = design_grid()
    i = int(round(math.log(design_002.t_a / T_MIN) / math.log(1.01)))
    for j in (i + 1, i + 2):
        assert 1 - ramp_survival(RampSchedule(W10, W80, float(g[j]))) ** 3 <= 0.002


def test_design_is_smallest(design_002):
    """Brute force over the grid below the answer: every point violates the guard."""
    g = design_grid()
    below = g[g < design_002.t_a]
    p = [1 - ramp_survival(RampSchedule(W10, W80, float(t))) ** 3 for t in g[: below.size + 2]]
    for i in range(below.size):
        assert max(p[i : i + 3]) > 0.002


def test_design_looser_bound_is_faster(design_002):
    d = design_ramp(W10, W80, 0.5, "smoothstep")
    assert d.t_a < design_002.t_a


def test_design_rejects_bad_bound():
    with pytest.raises(ValueError):
        design_ramp(W10, W80, 1.5)


# --- sensitivity ------------------------------------------------------------


def _row(rows, name, sign=+1):
    return next(r for r in rows if r.parameter == name and math.copysign(1, r.relative_change) == sign)


def test_sensitivity_f1():
    rows = sensitivity_report(replace(reference_config(), scattering=REFERENCE_SCATTERING), 0.01)
    r = _row(rows, "a12")
    assert r.rel_delta_e == pytest.approx(0.11485602993966, rel=1e-9)
    assert r.amplification == pytest.approx(11.485602993966, rel=1e-9)
    assert len(rows) == 8


def test_sensitivity_f3():
    rows = sensitivity_report(reference_config(), 0.01)
    assert _row(rows, "a12").amplification == pytest.approx(1.4374249255229, rel=1e-9)


def test_sensitivity_zero_crossing():
    s = ScatteringSet(a12=5.24e-9 * 5.24e-9 / 5.39e-9)
    rows = sensitivity_report(replace(reference_config(), scattering=s), 0.01)
    up, down = _row(rows, "a00", +1), _row(rows, "a00", -1)
    assert up.delta_e > 0 > down.delta_e
    assert not up.valid  # baseline is exactly zero


def test_sensitivity_invalid_row_flagged():
    rows = sensitivity_report(reference_config(), 0.1)
    bad = _row(rows, "a01", +1)
    assert not bad.valid and "repulsive" in bad.note
    assert _row(rows, "a12").valid


def test_sensitivity_range():
    with pytest.raises(ValueError):
        sensitivity_report(reference_config(), 0.2)


# --- sweeps -----------------------------------------------------------------


def test_sweep_feshbach_decreasing():
    rows = sweep(reference_config(), "F", [1, 2, 3])
    t_f = [r.report.t_f for r in rows]
    assert t_f[0] > t_f[1] > t_f[2]
    assert [r.value for r in rows] == [1, 2, 3]


def test_sweep_empty():
    assert sweep(reference_config(), "F", []) == []


def test_sweep_frequency_ladder():
    cfg = replace(reference_config(), t_a=0.0)
    ladder = [2 * math.pi * f for f in (20, 40, 80)]
    rows = sweep(cfg, "omega_tilde_1", ladder)
    t_f = [r.report.t_f for r in rows]
    assert t_f[1] / t_f[0] == pytest.approx(2**-1.5, rel=1e-12)
    assert t_f[2] / t_f[1] == pytest.approx(2**-1.5, rel=1e-12)


def test_sweep_errors_captured():
    rows = sweep(reference_config(), "omega_tilde_1", [W80, W10 / 2, W80])
    assert rows[0].report is not None and rows[2].report is not None
    assert rows[1].report is None and "ω̃₁ < ω̃₀" in rows[1].error


def test_sweep_other_axes():
    assert sweep(reference_config(), "l0", [8e-6])[0].report.initial.l == pytest.approx(8e-6)
    assert sweep(reference_config(), "N", [2e5])[0].report.initial.condensate_diameter > 17e-6
    assert sweep(reference_config(), "t_a", [0.2])[0].report.t_a == 0.2
    with pytest.raises(ValueError):
        sweep(reference_config(), "a00", [1.0])


def test_sweep_order_independent_of_workers():
    values = [3, 1, 2, 1.5]
    seq = sweep(reference_config(), "F", values)
    par = sweep(reference_config(), "F", values, workers=4)
    assert [r.report for r in seq] == [r.report for r in par]
