"""Excitation probability vs ramp duration for each shape, with the TDSE cross-check at a few points."""
import argparse

import numpy as np

from becgate.dynamics import SHAPES, RampSchedule, ermakov_evolve, excitation_probability
from becgate.protocol import design_ramp
from becgate.quantities import angular
from becgate.tdse import tdse_oracle

parser = argparse.ArgumentParser()
parser.add_argument("--f0", type=float, default=10.0, help="start frequency [Hz]")
parser.add_argument("--f1", type=float, default=80.0, help="end frequency [Hz]")
parser.add_argument("--pmax", type=float, default=0.002)
parser.add_argument("--oracle", action="store_true", help="also run the grid TDSE (slow)")
args = parser.parse_args()

w0, w1 = angular(args.f0), angular(args.f1)


def p_exc(r):
    return excitation_probability(ermakov_evolve(r), r.omega_end)

durations = np.array([0.02, 0.05, 0.1, 0.14, 0.2, 0.5])

print("t_a[s]  " + "  ".join(f"{s:>12}" for s in SHAPES))
for t in durations:
    p = [p_exc(RampSchedule(w0, w1, float(t), s)) for s in SHAPES]
    print(f"{t:6.3f}  " + "  ".join(f"{x:12.4e}" for x in p))

print(f"\nshortest duration with P_exc <= {args.pmax}:")
for s in SHAPES:
    d = design_ramp(w0, w1, args.pmax, s)
    print(f"  {s:<12} t_a = {d.t_a:.4f} s  (P = {d.p_exc:.2e})")

if args.oracle:
    print("\nErmakov vs TDSE at 0.14 s:")
    for s in SHAPES:
        r = RampSchedule(w0, w1, 0.14, s)
        a = p_exc(r)
        b = tdse_oracle(r).excitation_probability
        print(f"  {s:<12} {a:.6e}  {b:.6e}  diff {abs(a - b):.1e}")
