"""
Hunting certified non-factorizable stable polynomials
=====================================================

Maximise the obstruction value over exactly certified stable polynomials.
When it reaches one, the winner is a stable polynomial that is provably not
a Hadamard product of two stable polynomials of the same degree.
"""

from hadamard_stability import hunt_counterexample, is_stable_exact, leading_minors

for n in (4, 5, 6, 7):
    rep = hunt_counterexample(n, budget=4000, restarts=4, rng_seed=1)
    omega = rep.obstruction.decimal(6)
    print(f"n={n}: omega in [{omega['lower']}, {omega['upper']}], certificate: {rep.certified}")

###############################################################################
# Inspect one winner: exact coefficients and the minors that certify it.

rep = hunt_counterexample(5, budget=4000, restarts=4, rng_seed=1)
print(rep.best)
print("stable:", is_stable_exact(rep.best))
print("smallest leading minor:", float(min(leading_minors(rep.best))))

###############################################################################
# Best-so-far trace of restart 0 (first few improvements).

for mark in rep.per_restart[0].improvements[:8]:
    print(mark.evaluation, float(mark.omega_lower))
