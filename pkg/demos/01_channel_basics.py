"""
Measure-and-reencode channel on a GHZ state
===========================================

Build the three-qubit GHZ state, pick a measurement direction on the C
qubit, and look at what the channel leaves behind: outcome probabilities,
the conditional AB states, and how much entanglement survives.
"""

import numpy as np

from classent import MeasurementDirection, classicalize, delta, tripartite_negativity
from classent.states import ghz_state

rho = ghz_state(2)
print("state: GHZ(2), dims", rho.dims)
print("tripartite negativity of the input:", tripartite_negativity(rho))

# Measure C in the computational basis: both outcomes are equally likely
# and each conditional AB state is a bare product ket, so every bit of
# the entanglement is destroyed.
d = MeasurementDirection(angles=(0.0, 0.0), index=(0, 0), dim=2)
print("\ncomputational basis on C:")
for out in classicalize(rho, d):
    m = out.post.data
    print("  outcome %d: p = %.3f, purity of sigma = %.3f"
          % (out.label, out.prob, np.trace(m @ m).real))

# The channel gets to pick the best direction on a grid; for GHZ no
# direction does better than the poles, so half a unit is lost per cut
# pair and delta equals 0.5.
res = delta(rho, grid=(24, 8))
print("\ndelta over a (24, 8) grid:", res.delta)
print("best direction:", res.best_direction.angle_dict())
