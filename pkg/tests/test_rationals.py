from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractallab.errors import DomainError
from fractallab.rationals import (
    bernoulli_holds,
    geom_sum_finite,
    geom_sum_infinite,
    rat_str,
    ternary_expand,
    ternary_value,
)


def term_by_term(r, x, n):
    """Independent oracle: literally add up r * x**i."""
    total = F(0)
    for i in range(n):
        total += F(r) * F(x) ** i
    return total


class TestGeomSumFinite:
    def test_empty_sum(self):
        assert geom_sum_finite(F(1), F(1, 2), 0) == 0

    def test_ten_days_of_chocolate(self):
        # frozen from the term-by-term oracle
        assert term_by_term(F(1, 2), F(1, 2), 10) == F(1023, 1024)
        assert geom_sum_finite(F(1, 2), F(1, 2), 10) == F(1023, 1024)

    def test_three_terms(self):
        assert term_by_term(1, F(1, 2), 3) == F(7, 4)
        assert geom_sum_finite(1, F(1, 2), 3) == F(7, 4)

    def test_ratio_one(self):
        assert geom_sum_finite(F(2, 3), 1, 5) == F(10, 3)

    @given(
        r=st.fractions(min_value=-5, max_value=5, max_denominator=100),
        x=st.fractions(min_value=-3, max_value=3, max_denominator=100),
        n=st.integers(min_value=0, max_value=30),
    )
    def test_matches_term_by_term(self, r, x, n):
        assert geom_sum_finite(r, x, n) == term_by_term(r, x, n)

    def test_negative_count_rejected(self):
        with pytest.raises(DomainError):
            geom_sum_finite(1, F(1, 2), -1)


class TestGeomSumInfinite:
    def test_half(self):
        assert geom_sum_infinite(F(1, 2), F(1, 2)) == 1

    def test_quarter(self):
        assert geom_sum_infinite(F(1, 4), F(1, 4)) == F(1, 3)

    def test_first_term_only(self):
        assert geom_sum_infinite(1, 0) == 1

    @pytest.mark.parametrize("a", range(2, 51))
    def test_inverse_power_family(self, a):
        # sum of (1/a)**n from n=1 collapses to 1/(a-1)
        assert geom_sum_infinite(F(1, a), F(1, a)) == F(1, a - 1)

    @pytest.mark.parametrize("x", [F(1), F(-1), F(3, 2), F(-7, 5)])
    def test_divergent_ratio_rejected(self, x):
        with pytest.raises(DomainError, match="diverges"):
            geom_sum_infinite(F(1, 2), x)

    @given(
        r=st.fractions(min_value=-5, max_value=5, max_denominator=100),
        x=st.fractions(min_value=F(-9, 10), max_value=F(9, 10), max_denominator=100),
        n=st.integers(min_value=0, max_value=40),
    )
    def test_splits_into_partial_sum_plus_tail(self, r, x, n):
        # tail after n terms is r * x**n / (1 - x), exactly
        tail = F(r) * F(x) ** n / (1 - F(x))
        assert geom_sum_finite(r, x, n) + tail == geom_sum_infinite(r, x)


class TestBernoulli:
    def test_identity_case(self):
        check = bernoulli_holds(0, 5)
        assert check.lhs == check.rhs == 1
        assert check.holds

    def test_monthly_interest(self):
        check = bernoulli_holds(F(1, 10), 12)
        assert check.lhs == F(11, 10) ** 12
        assert check.rhs == F(11, 5)
        assert check.holds

    def test_lower_boundary(self):
        check = bernoulli_holds(-1, 3)
        assert check.lhs == 0
        assert check.rhs == -2
        assert check.holds

    def test_below_boundary_rejected(self):
        with pytest.raises(DomainError):
            bernoulli_holds(F(-11, 10), 2)

    def test_random_sweep(self):
        import random

        rng = random.Random(1234)
        for _ in range(1000):
            h = F(rng.randrange(-100, 400), rng.randrange(1, 100))
            if h < -1:
                h = -h - 1
            n = rng.randrange(0, 65)
            assert bernoulli_holds(h, n).holds


class TestTernary:
    def test_one_quarter(self):
        assert ternary_expand(F(1, 4)) == ([], [0, 2])
        # reconstruction via the geometric series: 2/9 / (1 - 1/9)
        assert geom_sum_infinite(F(2, 9), F(1, 9)) == F(1, 4)

    def test_one_half(self):
        assert ternary_expand(F(1, 2)) == ([], [1])

    def test_zero(self):
        assert ternary_expand(0) == ([0], [])

    def test_one(self):
        assert ternary_expand(1) == ([], [2])

    def test_terminating_prefers_no_repetend(self):
        assert ternary_expand(F(1, 3)) == ([1], [])
        assert ternary_expand(F(7, 9)) == ([2, 1], [])

    def test_out_of_range(self):
        for q in (F(-1, 2), F(3, 2)):
            with pytest.raises(DomainError):
                ternary_expand(q)

    def test_digits_are_ternary(self):
        pre, per = ternary_expand(F(355, 113) - 3)  # pi-ish fraction in [0,1]
        assert set(pre) | set(per) <= {0, 1, 2}

    def test_reconstruction_sweep(self):
        import random

        rng = random.Random(4321)
        for _ in range(500):
            den = rng.randrange(1, 10**4)
            num = rng.randrange(0, den + 1)
            q = F(num, den)
            pre, per = ternary_expand(q)
            assert ternary_value(pre, per) == q

    @given(st.fractions(min_value=0, max_value=1, max_denominator=10**4))
    @settings(max_examples=200)
    def test_period_is_minimal(self, q):
        pre, per = ternary_expand(q)
        assert ternary_value(pre, per) == q
        if per:
            for p in range(1, len(per)):
                if len(per) % p == 0:
                    assert per != per[:p] * (len(per) // p)


def test_rat_str():
    assert rat_str(F(8, 5)) == "8/5"
    assert rat_str(0) == "0/1"
    assert rat_str(F(-3, 9)) == "-1/3"
