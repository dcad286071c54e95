"""Holding every engine against a brute-force Fock simulation.

The oracle trusts nothing from the rest of the package except the
interferometer decomposition: it builds the input density matrix in a
truncated number basis, applies the network as a sequence of exact two-mode
beam-splitter kernels, and reads probabilities off the diagonal.  At three
modes this is already a few-thousand-dimensional computation, which is the
point: it is feasible only at desk scale, while the engines stay cheap.
"""

import time

from gbsim import (
    build_qform,
    enumerate_patterns,
    haar_random,
    prob_general,
    prob_thermal,
    thermal,
)
from gbsim.fock_oracle import apply_network, auto_cutoff, pattern_probability, prepare_input

states = [thermal(1.3), thermal(1.2), thermal(1.4)]
net = haar_random(3, 21)

c = auto_cutoff(states)
print(f"3 thermal modes; auto-selected cutoff {c} -> density of dimension {(c + 1) ** 3}")

t0 = time.perf_counter()
state = apply_network(prepare_input(states), net)
t1 = time.perf_counter()
print(f"network applied in {t1 - t0:.1f} s; trace = {state.trace():.12f}, "
      f"leakage = {state.leakage:.2e}")
print()

qf = build_qform(states, net)
print("pattern      oracle             thermal engine     general engine")
for pat in enumerate_patterns(3, 3):
    o = pattern_probability(state, pat)
    print(f"{str(pat):<11}  {o:.15f}  {prob_thermal(qf, pat):.15f}  {prob_general(qf, pat):.15f}")
