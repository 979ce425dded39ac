"""How often is a cubic field's genus number one?

Compares the Euler-product density against the empirical fraction of cubic
fields with trivial genus 3-part, enumerated by discriminant.
"""

import numpy as np

from genustats.constants import genus_one_density
from genustats.cubic_enum import cubic_discriminants, cubic_genus_exponents

rep = genus_one_density(500_000)
print(f"predicted density: {float(rep):.7f}  (tail bound {rep.value.tail_bound:.1e})")

for X in (10**4, 10**5, 10**6, 10**7):
    D = cubic_discriminants(X)
    e = cubic_genus_exponents(D)
    frac = np.count_nonzero(e == 0) / e.size
    print(f"X={X:>9}  fields={D.size:>8}  genus-one fraction={frac:.5f}")
