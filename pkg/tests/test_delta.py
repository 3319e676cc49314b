import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadamard_stability import (
    DegreeMismatch,
    DegreeTooSmall,
    PositivePolynomial,
    QuotientNotStable,
    delta_bounds,
    delta_bounds_survey,
    deltas,
    hadamard_quotient,
    obstruction_value,
    ones,
    quotient_delta_growth,
    quotient_delta_identity,
    random_stable,
)
from hadamard_stability.delta import DeltaPair, delta_report, omega_at_least_one
from hadamard_stability.polynomial import random_positive

F216 = PositivePolynomial([1, 64, 216, 64, 1])


def brute_omega_at_least_one(x: Fraction, y: Fraction, digits: int = 60) -> bool:
    """Decide sqrt(x) + sqrt(y) >= 1 from integer square roots at high precision."""
    scale = 10**digits
    lo = math.isqrt(x.numerator * scale**2 // x.denominator) + math.isqrt(y.numerator * scale**2 // y.denominator)
    hi = lo + 2
    if hi < scale:
        return False
    if lo >= scale:
        return True
    raise AssertionError("undecided at this precision")


class TestDeltas:
    def test_binomial_quartic(self, quartic):
        assert deltas(quartic) == DeltaPair(Fraction(1, 6), Fraction(1, 6))

    def test_binomial_quintic(self, quintic):
        assert deltas(quintic) == DeltaPair(Fraction(1, 4), Fraction(1, 20))

    @pytest.mark.parametrize("n", range(4, 11))
    def test_ones(self, n):
        assert deltas(ones(n)) == DeltaPair(Fraction(1), Fraction(1))

    def test_product_example(self):
        assert deltas(F216) == DeltaPair(Fraction(1, 216), Fraction(1, 216))

    def test_degree_too_small(self):
        with pytest.raises(DegreeTooSmall):
            deltas(ones(3))

    @given(st.integers(4, 10), st.integers(0, 2**32), st.fractions(Fraction(1, 100), 100).filter(lambda c: c > 0))
    def test_scale_invariant(self, n, seed, c):
        f = random_positive(n, seed)
        assert deltas(f.scaled(c)) == deltas(f)
        assert obstruction_value(f.scaled(c)) == obstruction_value(f)

    def test_invariant_under_variable_scaling(self):
        f = random_positive(7, 1)
        g = PositivePolynomial([a * Fraction(3, 2) ** k for k, a in enumerate(f)])
        assert deltas(g) == deltas(f)


class TestBounds:
    def test_binomial_quartic(self, quartic):
        b = delta_bounds(quartic)
        assert b.all_hold and b.deltas.total == Fraction(1, 3) and b.margin_sum == Fraction(2, 3)

    def test_ones_on_boundary(self):
        b = delta_bounds(ones(4))
        assert not (b.d1_lt_1 or b.d2_lt_1 or b.sum_lt_1)
        assert b.deltas.total == 2

    def test_binomial_quintic(self, quintic):
        b = delta_bounds(quintic)
        assert b.all_hold and b.deltas.total == Fraction(3, 10)

    def test_hold_for_stable_corpus(self):
        for seed in range(500):
            assert delta_bounds(random_stable(4 + seed % 7, seed)).all_hold

    def test_quartic_bounds_equal_stability(self):
        # for n = 4 the sum bound is exactly the third Hurwitz minor condition
        from hadamard_stability import is_stable_exact

        for seed in range(200):
            f = random_positive(4, seed, spread=1.0)
            assert is_stable_exact(f) == delta_bounds(f).sum_lt_1

    def test_survey(self):
        s = delta_bounds_survey(50, rng_seed=2)
        assert s.checked == 250 and s.violations == () and s.min_sum_margin > 0


class TestQuotientIdentity:
    def test_self_quotient(self, quintic):
        ident = quotient_delta_identity(quintic, quintic)
        assert ident.holds and ident.of_quotient == DeltaPair(Fraction(1), Fraction(1))

    def test_example(self, quartic):
        ident = quotient_delta_identity(F216, quartic)
        assert ident.holds
        assert ident.of_quotient == DeltaPair(Fraction(1, 36), Fraction(1, 36))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(4, 10), st.integers(0, 2**32))
    def test_holds_on_positive_pairs(self, n, seed):
        f, g = random_positive(n, seed), random_positive(n, seed + 1)
        assert quotient_delta_identity(f, g).holds

    def test_errors(self, quartic, quintic):
        with pytest.raises(DegreeMismatch):
            quotient_delta_identity(quartic, quintic)
        with pytest.raises(DegreeTooSmall):
            quotient_delta_identity(ones(3), ones(3))


class TestGrowth:
    def test_example(self, quartic):
        growth = quotient_delta_growth(F216, quartic)
        assert growth.both
        assert growth.deltas_f.delta1 == Fraction(1, 216) < growth.deltas_g.delta1 == Fraction(1, 6)

    def test_self_quotient_rejected(self, quartic):
        with pytest.raises(QuotientNotStable):
            quotient_delta_growth(quartic, quartic)

    def test_degree_mismatch(self, quartic, quintic):
        with pytest.raises(DegreeMismatch):
            quotient_delta_growth(quartic, quintic)


class TestObstruction:
    def test_binomial_quartic(self, quartic):
        ob = obstruction_value(quartic)
        assert not ob.certified
        # omega = 2 sqrt(1/6): check the enclosure by squaring
        assert (ob.lower / 2) ** 2 < Fraction(1, 6) < (ob.upper / 2) ** 2
        assert ob.upper - ob.lower < Fraction(1, 10**30)
        assert ob.value == pytest.approx(2 / math.sqrt(6))

    def test_binomial_quintic(self, quintic):
        ob = obstruction_value(quintic)
        assert not ob.certified and ob.value == pytest.approx(0.5 + math.sqrt(0.05))
        # sqrt(1/4) is exact; the sqrt(1/20) part is enclosed outward
        assert (ob.lower - Fraction(1, 2)) ** 2 < Fraction(1, 20) < (ob.upper - Fraction(1, 2)) ** 2

    def test_boundary_fires(self):
        f = PositivePolynomial(["1/4", 1, 1, 1, "1/4"])
        assert deltas(f) == DeltaPair(Fraction(1, 4), Fraction(1, 4))
        ob = obstruction_value(f)
        assert ob.certified and ob.lower == ob.upper == 1

    def test_decimal_rounding_direction(self, quartic):
        d = obstruction_value(quartic).decimal(6)
        assert d == {"lower": "0.816496", "upper": "0.816497", "rounding": "outward"}

    @settings(max_examples=500)
    @given(
        st.fractions(Fraction(1, 10**4), 1).filter(lambda x: x > 0),
        st.fractions(Fraction(1, 10**4), 1).filter(lambda x: x > 0),
    )
    def test_exact_comparison_against_isqrt(self, x, y):
        exact = omega_at_least_one(DeltaPair(x, y))
        try:
            assert exact == brute_omega_at_least_one(x, y)
        except AssertionError as err:
            if "undecided" not in str(err):
                raise
            # sqrt(x) + sqrt(y) == 1 only on the boundary, which counts as certified
            assert exact

    @settings(max_examples=200)
    @given(st.integers(4, 10), st.integers(0, 2**32))
    def test_enclosure(self, n, seed):
        ob = obstruction_value(random_positive(n, seed))
        approx = math.sqrt(ob.deltas.delta1) + math.sqrt(ob.deltas.delta2)
        assert float(ob.lower) <= approx * (1 + 1e-12) and approx <= float(ob.upper) * (1 + 1e-12)

    def test_report_strings(self, quintic):
        rep = delta_report(quintic, 4)
        assert rep["delta1"] == "1/4" and rep["delta2"] == "1/20"
        assert rep["omega"] == {"lower": "0.7236", "upper": "0.7237", "rounding": "outward"}
