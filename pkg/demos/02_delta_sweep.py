"""
Entanglement loss across the GHZ/W superposition family
=======================================================

psi(p) interpolates between the W state at p = 0 and GHZ at p = 1.
Sweep p and print the global value next to the loss for both measures.
The loss is non-monotonic: largest at the W end, with a dip near
p = 0.4 before settling at exactly 1/2 for GHZ.
"""

from classent import MeasureKind, delta, global_value, parse_state_spec

GRID = (24, 8)

print("%6s  %12s  %12s  %12s" % ("p", "neg_global", "neg_delta", "sq_delta"))
for k in range(11):
    p = k / 10
    rho = parse_state_spec("psi:%r" % p)
    g = global_value(rho, MeasureKind.NEGATIVITY)
    dn = delta(rho, MeasureKind.NEGATIVITY, GRID).delta
    ds = delta(rho, MeasureKind.SQUASHED, GRID).delta
    print("%6.2f  %12.6f  %12.6f  %12.6f" % (p, g, dn, ds))

# the same table comes out of the command line as CSV:
#   classent sweep --state psi --range 0,1,11 \
#       --measure negativity --measure squashed --grid 24,8
