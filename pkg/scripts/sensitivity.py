"""How uncertain scattering lengths propagate into the gate time, with and without Feshbach enhancement."""
from dataclasses import replace

from becgate.medium import REFERENCE_SCATTERING
from becgate.protocol import reference_config, sensitivity_report

for label, f in (("F = 1", 1.0), ("F = 3", 3.0)):
    cfg = replace(reference_config(), scattering=REFERENCE_SCATTERING.with_feshbach(f))
    print(f"== {label}")
    print(f"  {'param':<10}{'change':>8}{'dE/E':>12}{'dt_pi/t_pi':>12}{'gain':>9}  note")
    for r in sensitivity_report(cfg, 0.01):
        print(f"  {r.parameter:<10}{r.relative_change:>+8.2%}{r.rel_delta_e:>+12.4f}"
              f"{r.rel_t_pi:>+12.4f}{r.amplification:>9.3f}  {r.note}")
