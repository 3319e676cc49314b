"""
Quotient chains
===============

A chain ``g0, g1, ...`` where every ``g_i / g_{i+1}`` is stable. Both ratios
strictly grow along it and each step's ratio sum stays below one, which caps
the length at ``log2(1 / (delta1(g0) delta2(g0)))``.
"""

from hadamard_stability import binomial_polynomial, build_chain, hadamard_product, random_stable

###############################################################################
# From (s + 1)^4 the first step already lands on a certified polynomial.

rec = build_chain(binomial_polynomial(4), max_steps=10, step_budget=2000, rng_seed=0)
print("length", rec.length, "bound", round(rec.length_bound, 3), "end", rec.termination.value)

###############################################################################
# Deep products have tiny ratios and leave room for several steps.

f = random_stable(6, 1)
for k in range(5):
    f = hadamard_product(f, random_stable(6, 10 + k))
rec = build_chain(f, max_steps=10, step_budget=500, rng_seed=4)
print("length", rec.length, "bound", round(rec.length_bound, 3), "end", rec.termination.value)
for d, r in zip(rec.deltas[1:], rec.ratio_sums):
    print(f"delta1={float(d.delta1):.3e} delta2={float(d.delta2):.3e} ratio_sum={float(r):.4f}")
