"""Gaussian input states and their Q-function parameters.

Every input mode is described by two quadrature variances (v_x, v_p) with
vacuum = 1.  The library works with the derived pair (lam, mu): lam measures
squeezing, mu measures purity.  This script walks through the standard
states and the classicality boundary.
"""

import math

from gbsim import (
    derive_q_params,
    is_classical,
    mean_photon_number,
    squeezed,
    squeezed_thermal,
    thermal,
    vacuum,
)

print("state                         v_x     v_p     lam       mu      classical  <n>")
print("-" * 82)
for name, state in [
    ("vacuum", vacuum()),
    ("thermal V=3", thermal(3.0)),
    ("squeezed r=0.5", squeezed(0.5)),
    ("squeezed r=1.0", squeezed(1.0)),
    ("squeezed-thermal V=1.2 r=0.3", squeezed_thermal(1.2, 0.3)),
    ("squeezed-thermal V=4 r=0.3", squeezed_thermal(4.0, 0.3)),
]:
    p = derive_q_params(state)
    print(
        f"{name:<28}  {state.v_x:6.3f}  {state.v_p:6.3f}  {p.lam:7.4f}  {p.mu:7.4f}"
        f"  {str(is_classical(state)):<9}  {mean_photon_number(state):.4f}"
    )

print()
print("checks against the closed forms:")
r = 0.5
p = derive_q_params(squeezed(r))
print(f"  squeezed r={r}: lam = {p.lam:.6f}  vs  tanh(r)/2 = {math.tanh(r) / 2:.6f}")
p = derive_q_params(thermal(3.0))
print(f"  thermal V=3:   mu  = {p.mu:.6f}  vs  2/(V+1)   = {2 / 4:.6f}")
print()
print("a state is classical (P function is a probability density) iff v_p >= 1;")
print("squeezing below vacuum noise in p is exactly what the sampler must refuse.")
