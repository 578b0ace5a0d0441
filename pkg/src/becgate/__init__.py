"""Collisional photon-photon phase gate in a Bose-Einstein condensate."""
from .dynamics import Hold, RampSchedule, ermakov_evolve, excitation_probability, phase_accumulate, simulate_ramp
from .medium import ScatteringSet, effective_interactions, effective_trap_frequency, thomas_fermi
from .protocol import GateConfig, GateReport, design_ramp, reference_config, sensitivity_report, simulate_gate, sweep
from .quantities import RB87, Constants, Quantity, convert
from .tdse import tdse_oracle
from .twobody import energy_shift, exact_pair_energy, time_for_phase, trap_state_from_effective

__all__ = [
    "RB87", "Constants", "Quantity", "convert",
    "ScatteringSet", "effective_interactions", "effective_trap_frequency", "thomas_fermi",
    "energy_shift", "exact_pair_energy", "time_for_phase", "trap_state_from_effective",
    "Hold", "RampSchedule", "ermakov_evolve", "excitation_probability", "phase_accumulate", "simulate_ramp",
    "tdse_oracle",
    "GateConfig", "GateReport", "design_ramp", "reference_config", "sensitivity_report", "simulate_gate", "sweep",
]
