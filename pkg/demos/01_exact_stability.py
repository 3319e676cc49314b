"""
Exact stability certificates
============================

Build Hurwitz matrices, certify stability with exact leading minors, and
compare against the floating-point root oracle.
"""

from hadamard_stability import (
    PositivePolynomial,
    hurwitz_matrix,
    is_stable_exact,
    is_stable_float,
    leading_minors,
    ones,
    random_stable,
)
from hadamard_stability.hurwitz import float_roots

###############################################################################
# The Hurwitz matrix of (s + 1)^4
# -------------------------------
# Coefficients are ascending: a0 first.

f = PositivePolynomial([1, 4, 6, 4, 1])
for row in hurwitz_matrix(f).rows():
    print(" ".join(f"{str(x):>3}" for x in row))

###############################################################################
# Leading minors decide stability exactly; no tolerance is involved.

print("minors:", [str(m) for m in leading_minors(f)], "stable:", is_stable_exact(f))

###############################################################################
# The all-ones quartic has roots on the unit circle, two of them to the right.

g = ones(4)
print("ones(4) minors:", [str(m) for m in leading_minors(g)], "stable:", is_stable_exact(g))
print("max real part of roots:", float_roots(g).real.max())

###############################################################################
# Random stable polynomials are exact expansions of sampled root factors,
# so the two oracles must agree on them.

for seed in range(5):
    h = random_stable(7, seed)
    print(seed, is_stable_exact(h), is_stable_float(h))
