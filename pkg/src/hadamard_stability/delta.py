"""Two scale-free ratios of low and high coefficients and what stability forces on them.

For ``f = a0 + a1 s + ... + an s^n`` with ``n >= 4``::

    delta1(f) = a1 a4 / (a3 a2)
    delta2(f) = a_{n-1} a0 / (a_{n-3} a2)

A stable ``f`` has ``delta1 < 1``, ``delta2 < 1`` and ``delta1 + delta2 < 1``.
The ratios divide under the Hadamard quotient,
``delta_i(f / g) = delta_i(f) / delta_i(g)``, so a stable quotient of a stable
``f`` by a stable ``g`` forces ``delta_i(g) > delta_i(f)``.

Obstruction value
-----------------
Write ``x, y`` for the ratios of ``f`` and ``u, v`` for those of a candidate
``g``. A factorization needs ``u + v < 1`` (``g`` stable) and
``x/u + y/v < 1`` (``f / g`` stable). By Cauchy-Schwarz,
``(x/u + y/v)(u + v) >= (sqrt(x) + sqrt(y))**2``, so both can hold only if
``omega(f) = sqrt(x) + sqrt(y) < 1``. Hence ``omega(f) >= 1`` certifies that
``f`` has no Hadamard factorization into two stable factors. The converse is
not claimed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._exact import decimal_ceil, decimal_floor, format_rational, sqrt_bounds
from ._parallel import derive_seed, pool_map
from .errors import DegreeMismatch, DegreeTooSmall, QuotientNotStable
from .hurwitz import is_stable_exact
from .polynomial import PositivePolynomial, hadamard_quotient, random_stable


@dataclass(frozen=True)
class DeltaPair:
    delta1: Fraction
    delta2: Fraction

    @property
    def total(self) -> Fraction:
        return self.delta1 + self.delta2

    def __truediv__(self, other: DeltaPair) -> DeltaPair:
        return DeltaPair(self.delta1 / other.delta1, self.delta2 / other.delta2)


def _require_degree(f: PositivePolynomial) -> int:
    if f.degree < 4:
        raise DegreeTooSmall(f"needs degree >= 4, got {f.degree}")
    return f.degree


def deltas(f: PositivePolynomial) -> DeltaPair:
    """Exact ratios; defined for any positive polynomial of degree >= 4."""
    n = _require_degree(f)
    a = f.coefficients
    # index overlaps at n = 4 (a_{n-1} = a3) and n = 5 (a_{n-3} = a2) are intended
    return DeltaPair(a[1] * a[4] / (a[3] * a[2]), a[n - 1] * a[0] / (a[n - 3] * a[2]))


@dataclass(frozen=True)
class DeltaBounds:
    d1_lt_1: bool
    d2_lt_1: bool
    sum_lt_1: bool
    margin1: Fraction
    margin2: Fraction
    margin_sum: Fraction
    deltas: DeltaPair

    @property
    def all_hold(self) -> bool:
        return self.d1_lt_1 and self.d2_lt_1 and self.sum_lt_1


def delta_bounds(f: PositivePolynomial) -> DeltaBounds:
    """Evaluate ``delta1 < 1``, ``delta2 < 1``, ``delta1 + delta2 < 1`` with margins ``1 - lhs``."""
    d = deltas(f)
    m1, m2, ms = 1 - d.delta1, 1 - d.delta2, 1 - d.total
    return DeltaBounds(m1 > 0, m2 > 0, ms > 0, m1, m2, ms, d)


@dataclass(frozen=True)
class QuotientDeltaIdentity:
    of_quotient: DeltaPair
    ratio_of_deltas: DeltaPair

    @property
    def holds(self) -> bool:
        return self.of_quotient == self.ratio_of_deltas


def _pair_degrees(f: PositivePolynomial, g: PositivePolynomial) -> None:
    if f.degree != g.degree:
        raise DegreeMismatch(f"degrees differ: {f.degree} != {g.degree}")
    _require_degree(f)


def quotient_delta_identity(f: PositivePolynomial, g: PositivePolynomial) -> QuotientDeltaIdentity:
    """Both sides of ``delta_i(f / g) = delta_i(f) / delta_i(g)``, computed independently."""
    _pair_degrees(f, g)
    return QuotientDeltaIdentity(deltas(hadamard_quotient(f, g)), deltas(f) / deltas(g))


@dataclass(frozen=True)
class DeltaGrowth:
    d1_increases: bool
    d2_increases: bool
    deltas_f: DeltaPair
    deltas_g: DeltaPair

    @property
    def both(self) -> bool:
        return self.d1_increases and self.d2_increases


def quotient_delta_growth(f: PositivePolynomial, g: PositivePolynomial) -> DeltaGrowth:
    """Whether ``delta_i(f) < delta_i(g)`` for both i, given that ``f / g`` is stable.

    Raises :class:`QuotientNotStable` when the Hadamard quotient fails the
    exact stability test.
    """
    _pair_degrees(f, g)
    if not is_stable_exact(hadamard_quotient(f, g)):
        raise QuotientNotStable("Hadamard quotient f/g is not stable")
    df, dg = deltas(f), deltas(g)
    return DeltaGrowth(df.delta1 < dg.delta1, df.delta2 < dg.delta2, df, dg)


@dataclass(frozen=True)
class Obstruction:
    """``omega = sqrt(delta1) + sqrt(delta2)`` enclosed in ``[lower, upper]``.

    ``certified`` is decided exactly, so it never depends on the enclosure.
    """

    deltas: DeltaPair
    lower: Fraction
    upper: Fraction
    certified: bool

    @property
    def value(self) -> float:
        return float((self.lower + self.upper) / 2)

    def decimal(self, digits: int = 12) -> dict:
        return {
            "lower": decimal_floor(self.lower, digits),
            "upper": decimal_ceil(self.upper, digits),
            "rounding": "outward",
        }


def omega_at_least_one(d: DeltaPair) -> bool:
    """Exact test of ``sqrt(x) + sqrt(y) >= 1``.

    Equivalent to ``2 sqrt(xy) >= 1 - x - y``: true outright when the right
    side is non-positive, otherwise compare squares of both (non-negative) sides.
    """
    x, y = d.delta1, d.delta2
    rhs = 1 - x - y
    if rhs <= 0:
        return True
    return 4 * x * y >= rhs * rhs


def obstruction_value(f: PositivePolynomial, bits: int = 128) -> Obstruction:
    d = deltas(f)
    lo1, hi1 = sqrt_bounds(d.delta1, bits)
    lo2, hi2 = sqrt_bounds(d.delta2, bits)
    return Obstruction(d, lo1 + lo2, hi1 + hi2, omega_at_least_one(d))


def delta_report(f: PositivePolynomial, digits: int = 12) -> dict:
    """JSON-ready summary of ratios, bound margins and the obstruction value."""
    b = delta_bounds(f)
    ob = obstruction_value(f)
    return {
        "delta1": format_rational(b.deltas.delta1),
        "delta2": format_rational(b.deltas.delta2),
        "bounds": {
            "d1_lt_1": b.d1_lt_1,
            "d2_lt_1": b.d2_lt_1,
            "sum_lt_1": b.sum_lt_1,
            "margin1": format_rational(b.margin1),
            "margin2": format_rational(b.margin2),
            "margin_sum": format_rational(b.margin_sum),
        },
        "omega": ob.decimal(digits),
        "omega_certificate": ob.certified,
    }


@dataclass(frozen=True)
class BoundsSurvey:
    rng_seed: int
    degrees: tuple[int, ...]
    per_degree: int
    checked: int
    violations: tuple[dict, ...]
    min_sum_margin: Fraction


def _bounds_case(args):
    seed, n, i = args
    f = random_stable(n, derive_seed(seed, n, i))
    stable = is_stable_exact(f)
    return n, i, stable, delta_bounds(f), f


def delta_bounds_survey(
    per_degree: int = 1000,
    degrees: Sequence[int] = (4, 5, 6, 7, 8),
    rng_seed: int = 0,
    workers: int = 1,
) -> BoundsSurvey:
    """Evaluate :func:`delta_bounds` on seeded stable samples of each degree."""
    degrees = tuple(degrees)
    tasks = [(rng_seed, n, i) for n in degrees for i in range(per_degree)]
    with pool_map(workers) as pmap:
        results = pmap(_bounds_case, tasks)
    bad = []
    min_margin = None
    for n, i, stable, b, f in results:
        if not stable or not b.all_hold:
            bad.append({"degree": n, "index": i, "stable": stable, "polynomial": f})
        if min_margin is None or b.margin_sum < min_margin:
            min_margin = b.margin_sum
    return BoundsSurvey(rng_seed, degrees, per_degree, len(results), tuple(bad), min_margin)
