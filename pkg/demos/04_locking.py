"""
Locked entanglement: large values that refuse to move
=====================================================

Two constructions where the choice of measurement direction on C is
irrelevant.

The flower state is classical on C already (zero discord), so the
channel has a basis in which it changes nothing: delta vanishes while
the upper bound — and the entanglement itself — stay bounded away from
zero.  Bell-pair chains lock the other way around: C holds one end of a
single Bell pair, every direction on it is as good as every other, and
the same amount is destroyed regardless.
"""

from classent import MeasureKind, delta, global_value, upper_bound, zero_discord_check
from classent.states import bell_pairs, flower_state

for d in (2, 3):
    rho = flower_state(d)
    r = delta(rho, grid=(24, 8))
    print("flower(d=%d): delta = %.2e, upper bound = %.4f, discord-free: %s"
          % (d, r.delta, upper_bound(rho, MeasureKind.NEGATIVITY),
             zero_discord_check(rho).status))

# n Bell pairs: the global value grows with n but the loss is pinned at
# 2^(n-2) + 1/2 and the ensemble value is flat across the whole grid.
for n in (2, 3):
    rho = bell_pairs(n)
    g = global_value(rho, MeasureKind.NEGATIVITY)
    r = delta(rho, grid=(12, 6))
    print("bells(n=%d): global = %.1f, delta = %.6f" % (n, g, r.delta))
