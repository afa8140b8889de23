from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unimoment.errors import (
    BadConstantTerm,
    NonPolynomialQuotient,
    ZeroPolynomial,
)
from unimoment.exactpoly import (
    ExactPoly,
    FactoredSpec,
    TruncatedSeries,
    evaluate,
    expand_factored,
    from_coeffs,
    poly_add,
    poly_exact_div,
    poly_mul,
    power_sums,
    series_exp,
    series_from_moments,
    series_log,
    strip_shift,
)

F = Fraction


class TestFromCoeffs:
    def test_identity_constructor(self):
        p = from_coeffs([1, 2, 2, 1])
        assert p.degree == 3
        assert p.coeffs == (F(1), F(2), F(2), F(1))

    def test_zero_polynomial_sentinel(self):
        p = from_coeffs([0])
        assert p.is_zero()
        assert p.degree == -1

    def test_rational_inputs_sum_to_one(self):
        # normalized inversion counts for 3 symbols: 6 permutations total
        p = from_coeffs([F(1, 6), F(2, 6), F(2, 6), F(1, 6)])
        assert p.degree == 3
        assert evaluate(p, 1) == 1

    def test_trailing_zeros_normalized(self):
        assert from_coeffs([1, 1, 0, 0]).degree == 1

    def test_string_coefficients(self):
        assert from_coeffs(["1/2", "1/2"]).coeffs == (F(1, 2), F(1, 2))


class TestExpandFactored:
    def test_single_quotient(self):
        spec = FactoredSpec(numer=(2,), denom=(1,))
        assert expand_factored(spec).coeffs == (F(1), F(1))

    def test_inversions_n3(self):
        spec = FactoredSpec(numer=(1, 2, 3), denom=(1, 1, 1))
        assert expand_factored(spec).coeffs == (F(1), F(2), F(2), F(1))

    def test_negative_formal_degree_rejected(self):
        spec = FactoredSpec(numer=(2,), denom=(3,))
        with pytest.raises(NonPolynomialQuotient):
            expand_factored(spec)

    def test_strategies_agree(self):
        spec = FactoredSpec(numer=(2, 4, 6, 8), denom=(1, 2, 3, 4))
        a = expand_factored(spec, strategy="interleaved")
        b = expand_factored(spec, strategy="expand_then_divide")
        assert a.coeffs == b.coeffs

    def test_value_at_one_is_exponent_ratio(self):
        # L'Hopital on each (1-z^b)/(1-z^a) factor gives b/a
        spec = FactoredSpec(numer=(2, 6, 4), denom=(1, 3, 2))
        p = expand_factored(spec)
        assert evaluate(p, 1) == F(2 * 6 * 4, 1 * 3 * 2)


class TestPolyArith:
    def test_mul(self):
        p = from_coeffs([1, 1]) * from_coeffs([1, 0, 1])
        assert p.coeffs == (F(1), F(1), F(1), F(1))

    def test_exact_div(self):
        q = poly_exact_div(from_coeffs([1, 2, 2, 1]), from_coeffs([1, 1]))
        assert q.coeffs == (F(1), F(1), F(1))

    def test_inexact_div_raises(self):
        with pytest.raises(NonPolynomialQuotient):
            poly_exact_div(from_coeffs([1, 1]), from_coeffs([1, 0, 1]))

    def test_add(self):
        s = poly_add(from_coeffs([1, 2]), from_coeffs([0, -2, 3]))
        assert s.coeffs == (F(1), F(0), F(3))


class TestPowerSums:
    def test_fair_coin(self):
        assert power_sums(from_coeffs([1, 1]), 2) == (F(1), F(1, 2), F(1, 2))

    def test_inversions_mean(self):
        assert power_sums(from_coeffs([1, 2, 2, 1]), 1) == (F(1), F(3, 2))

    def test_two_point_mass(self):
        assert power_sums(from_coeffs([1, 0, 0, 0, 1]), 2) == (F(1), F(2), F(8))

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomial):
            power_sums(from_coeffs([0]), 2)


class TestSeries:
    def test_log_of_one_plus_s(self):
        ts = TruncatedSeries((F(1), F(1), F(0), F(0)))
        assert series_log(ts).coeffs == (F(0), F(1), F(-1, 2), F(1, 3))

    def test_log_of_exp_series(self):
        ts = TruncatedSeries((F(1), F(1), F(1, 2), F(1, 6), F(1, 24)))
        assert series_log(ts).coeffs == (F(0), F(1), F(0), F(0), F(0))

    def test_bad_constant_term(self):
        with pytest.raises(BadConstantTerm):
            series_log(TruncatedSeries((F(2), F(1))))

    def test_fair_coin_mgf_second_cumulant(self):
        # raw moments of 1+z are E X^m = 1/2 for m >= 1
        mgf = series_from_moments([F(1), F(1, 2), F(1, 2)])
        logs = series_log(mgf)
        assert logs.coeffs[2] == F(1, 8)  # kappa_2 / 2! = 1/8


def test_strip_shift():
    shift, core = strip_shift(from_coeffs([0, 0, 3, 1]))
    assert shift == 2
    assert core.coeffs == (F(3), F(1))


# property checks ------------------------------------------------------------

small_polys = st.lists(
    st.integers(min_value=0, max_value=9), min_size=1, max_size=7
).filter(lambda cs: any(cs))


@given(small_polys, small_polys)
@settings(max_examples=60, deadline=None)
def test_mul_div_round_trip(cs, ds):
    p, q = from_coeffs(cs), from_coeffs(ds)
    assert poly_exact_div(poly_mul(p, q), q).coeffs == p.coeffs


@given(
    st.lists(
        st.fractions(
            min_value=-2, max_value=2, max_denominator=6
        ),
        min_size=1,
        max_size=6,
    )
)
@settings(max_examples=60, deadline=None)
def test_log_exp_identity(cs):
    t = TruncatedSeries((F(0), *cs))
    assert series_log(series_exp(t)).coeffs == t.coeffs


@given(small_polys)
@settings(max_examples=60, deadline=None)
def test_power_sums_normalized(cs):
    assert power_sums(from_coeffs(cs), 3)[0] == 1


@given(st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_expanded_mass_matches_exponent_ratio(exponents):
    # multiply every exponent by 2 for the numerator: quotient of each pair
    # (1-z^(2a))/(1-z^a) = 1+z^a is a polynomial, so the product always is
    spec = FactoredSpec(
        numer=tuple(2 * a for a in exponents), denom=tuple(exponents)
    )
    p = expand_factored(spec)
    assert evaluate(p, 1) == 2 ** len(exponents)
    assert all(c >= 0 for c in p.coeffs)
