"""The two normalisations of the prime-2 Euler factor, side by side.

Sums over fundamental discriminants have a count-true closed form and an
as-printed one that drops part of the 2-adic contribution.  Direct summation
decides which one the data follows.
"""

import math

from genustats.constants import lambda_const
from genustats.symfun import disc_zeta_sum, odd_zeta_product

B = 10**7
for k in (1.5, 2.0, 3.0):
    direct = disc_zeta_sum(k, mode="direct", bound=B)
    ct = disc_zeta_sum(k, "count-true")
    ap = disc_zeta_sum(k, "as-printed")
    tail = 6 / math.pi**2 * B ** (1 - k) / (k - 1)
    print(f"k={k}: direct+tail={direct.value + tail:.9f}  count-true={ct.value:.9f}  "
          f"as-printed={ap.value:.9f}  missing term={odd_zeta_product(k).value * 8.0**-k:.9f}")

for conv in ("count-true", "as-printed"):
    lam = lambda_const(conv, 500_000)
    print(f"lambda ({conv}) = {float(lam):.6f} +- {lam.value.tail_bound:.1e}")
