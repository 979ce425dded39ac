"""Sextic S3 x C2 composita counted by discriminant, with their genus histogram.

The count is compared with sqrt(X) times the predicted constant; convergence is
slow, so the ratio is printed at several magnitudes.
"""

import math

from genustats.constants import lambda_const
from genustats.families import count_eta, count_s3c2

lam = float(lambda_const("as-printed", 500_000))
for e in (8, 9, 10, 11, 12):
    X = 10**e
    S, hist = count_s3c2(X)
    print(f"X=1e{e}: S={S:>7}  S/sqrt(X)={S / math.isqrt(X):.5f}  (constant {lam:.5f})  "
          f"eta/S={count_eta(X) / S:.4f}  share(0,0)={hist.proportion((0, 0)):.4f}")

S, hist = count_s3c2(10**12)
for key in sorted(hist.counts):
    print(f"  (omega-1, cubic exponent)={key}: {hist.counts[key]}")
