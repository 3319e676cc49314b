"""
Coefficient ratios and the obstruction value
============================================

``delta1 = a1 a4 / (a3 a2)`` and ``delta2 = a_{n-1} a0 / (a_{n-3} a2)`` are
below one, with sum below one, for every stable polynomial. They divide under
the Hadamard quotient, and ``omega = sqrt(delta1) + sqrt(delta2) >= 1``
rules out any Hadamard factorization.
"""

from hadamard_stability import (
    PositivePolynomial,
    delta_bounds,
    deltas,
    hadamard_quotient,
    obstruction_value,
    quotient_delta_identity,
)

###############################################################################
# Two binomials

for coeffs in ([1, 4, 6, 4, 1], [1, 5, 10, 10, 5, 1]):
    f = PositivePolynomial(coeffs)
    d = deltas(f)
    print(coeffs, "delta =", d.delta1, d.delta2, "omega in", obstruction_value(f).decimal(8))

###############################################################################
# The ratios of a quotient are the quotients of the ratios, exactly.

f = PositivePolynomial([1, 64, 216, 64, 1])
g = PositivePolynomial([1, 4, 6, 4, 1])
ident = quotient_delta_identity(f, g)
print("f/g =", hadamard_quotient(f, g), "identity holds:", ident.holds, ident.of_quotient)

###############################################################################
# A stable quartic whose obstruction value sits exactly at one.

b = PositivePolynomial(["1/4", 1, 1, 1, "1/4"])
print("bounds hold:", delta_bounds(b).all_hold, "certificate:", obstruction_value(b).certified)
