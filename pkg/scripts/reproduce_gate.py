"""Reference gate run: compressed Feshbach-enhanced gate vs the uncompressed baseline."""
import math

from becgate.protocol import baseline_config, reference_config, simulate_gate


def show(name, rep):
    print(f"== {name}")
    print(f"  t_a = {rep.t_a:.4f} s   t_f = {rep.t_f:.4f} s   t_total = {rep.t_total:.4f} s")
    print(f"  phi_a = {rep.phi_a:.5f}  phi_f = {rep.phi_f:.5f}  total = {rep.phi_total / math.pi:.10f} pi")
    print(f"  P_exc ramp = {rep.p_exc_ramp:.3e}   round trip = {rep.p_exc_roundtrip:.3e}")
    print(f"  dE/(hbar w) = {rep.fidelity_metric:.4e}")
    for st in (rep.initial, rep.compressed):
        print(f"  {st.omega_tilde / (2 * math.pi):6.1f} Hz: l = {st.l * 1e6:.2f} um, "
              f"TF diameter = {st.condensate_diameter * 1e6:.2f} um, ratio = {st.containment_ratio:.3f}")
    print(f"  flags: {rep.flags}")


if __name__ == "__main__":
    base = simulate_gate(baseline_config())
    gate = simulate_gate(reference_config())
    show("baseline (F=1, 10 Hz, no ramp)", base)
    show("compressed (F=3, 10 -> 80 Hz)", gate)
    print(f"speed-up: {base.t_total / gate.t_total:.0f}x")
