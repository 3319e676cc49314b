"""
Searching for a Hadamard factorization
======================================

The search proposes a stable ``g`` and checks ``f / g`` exactly. Every
reported witness is re-verified from scratch.
"""

from hadamard_stability import (
    PositivePolynomial,
    hadamard_product,
    random_stable,
    search_factorization,
    verify_factorization,
)

###############################################################################
# A product of two stable quartics

f = PositivePolynomial([1, 64, 216, 64, 1])
out = search_factorization(f, budget=1000, rng_seed=0)
g, q = out.witness
print(out.status.value, "after", out.stats.evaluations, "evaluation(s)")
print("g     =", g)
print("f / g =", q)
print("verified:", verify_factorization(f, q, g).valid)

###############################################################################
# A degree-7 product of random stable factors

f = hadamard_product(random_stable(7, 1), random_stable(7, 2))
out = search_factorization(f, budget=2000, rng_seed=3)
print(out.status.value, out.stats)

###############################################################################
# A certified non-factorizable quartic never reaches the search loop.

b = PositivePolynomial(["1/4", 1, 1, 1, "1/4"])
print(search_factorization(b).status.value)
