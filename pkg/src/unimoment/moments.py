"""Exact moment and cumulant computations for lattice mass functions.

A Distribution is a normalized nonnegative coefficient vector: index k
carries the probability of the integer point k.  All moment arithmetic is
done with Fractions; only the moment-generating-function bound check leaves
the rationals, and it does so in controlled mpmath precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import mpmath as mp

from .errors import (
    EvenDegree,
    NegativeCoefficient,
    NotPalindromic,
    OddDegree,
    RootsOffCircle,
    ZeroPolynomial,
    ZeroVariance,
)
from .exactpoly import (
    DEFAULT_SERIES_ORDER,
    ExactPoly,
    FactoredSpec,
    RationalLike,
    TruncatedSeries,
    expand_factored,
    from_coeffs,
    power_sums,
    series_from_moments,
    series_log,
)
from .specfun import bernoulli


@dataclass(frozen=True)
class Distribution:
    """Probability masses on {0, 1, ..., span}; pmf[k] = P(X = k)."""

    pmf: tuple[Fraction, ...]

    @property
    def span(self) -> int:
        """Largest support point carried by the vector (top mass nonzero)."""
        return len(self.pmf) - 1

    def poly(self) -> ExactPoly:
        return from_coeffs(self.pmf)

    def is_palindromic(self) -> bool:
        return self.pmf == self.pmf[::-1]

    @property
    def mean(self) -> Fraction:
        return sum(Fraction(k) * p for k, p in enumerate(self.pmf))

    @property
    def variance(self) -> Fraction:
        mu = self.mean
        return sum((k - mu) ** 2 * p for k, p in enumerate(self.pmf))


@dataclass(frozen=True)
class CumulantVector:
    """Cumulants kappa_1 .. kappa_order as exact rationals."""

    values: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.values)

    def kappa(self, m: int) -> Fraction:
        if not 1 <= m <= self.order:
            raise IndexError(f"cumulant order {m} outside 1..{self.order}")
        return self.values[m - 1]


def make_distribution(source: ExactPoly | Iterable[RationalLike]) -> Distribution:
    """Normalize a nonnegative, nonzero coefficient vector into a Distribution."""
    poly = source if isinstance(source, ExactPoly) else from_coeffs(source)
    if poly.is_zero():
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    if any(c < 0 for c in poly.coeffs):
        raise NegativeCoefficient("mass function has a negative coefficient")
    total = sum(poly.coeffs)
    return Distribution(tuple(c / total for c in poly.coeffs))


def raw_moments(dist: Distribution, max_order: int = DEFAULT_SERIES_ORDER) -> tuple[Fraction, ...]:
    """E[X^m] for m = 0..max_order."""
    return power_sums(dist.poly(), max_order)


def central_moment(dist: Distribution, m: int) -> Fraction:
    """E[(X - EX)^m], exactly."""
    if m < 0:
        raise ValueError("moment order must be nonnegative")
    raws = raw_moments(dist, m)
    mu = raws[1] if m >= 1 else Fraction(0)
    acc = Fraction(0)
    for j in range(m + 1):
        acc += comb(m, j) * raws[j] * (-mu) ** (m - j)
    return acc


def normalized_fourth(dist: Distribution) -> Fraction:
    """The fourth standardized moment E[(X-EX)^4] / Var(X)^2."""
    var = dist.variance
    if var == 0:
        raise ZeroVariance("a single-atom distribution has no fourth moment ratio")
    return central_moment(dist, 4) / var**2


@dataclass(frozen=True)
class FourthMomentGap:
    """How far the standardized fourth moment sits from its two walls."""

    m4: Fraction
    gap_to_3: Fraction       # 3 - m4, the shortfall below the Gaussian value
    gap_to_1: Fraction       # m4 - 1, the excess above the two-point floor
    upper_bound: Fraction    # 3 - 1/(2 sigma^2)
    upper_slack: Fraction    # upper_bound - m4; negative would be a violation


def fourth_moment_gap(dist: Distribution) -> FourthMomentGap:
    """Locate m4 within [1, 3 - 1/(2 sigma^2)].

    For an even-span palindromic mass function whose polynomial has all roots
    on the unit circle, m4 is guaranteed to lie in that window.  If such an
    input lands above the upper wall, that is a certificate of roots off the
    circle and RootsOffCircle is raised; the floor m4 >= 1 can never fail.
    """
    var = dist.variance
    if var == 0:
        raise ZeroVariance("a single-atom distribution has no fourth moment ratio")
    m4 = normalized_fourth(dist)
    upper = 3 - Fraction(1, 2) / var
    gap = FourthMomentGap(
        m4=m4,
        gap_to_3=3 - m4,
        gap_to_1=m4 - 1,
        upper_bound=upper,
        upper_slack=upper - m4,
    )
    if gap.upper_slack < 0 and dist.is_palindromic() and dist.span % 2 == 0:
        raise RootsOffCircle(
            f"fourth moment {m4} exceeds the unit-circle ceiling {upper}; "
            "some root must lie off the unit circle",
            witness=gap,
        )
    return gap


def cumulants_from_pmf(dist: Distribution, max_order: int = DEFAULT_SERIES_ORDER) -> CumulantVector:
    """Cumulants through max_order by taking log of the exact mgf series.

    The variable is centered at its mean before the series work, which keeps
    the rationals small and makes odd cumulants of symmetric laws vanish
    identically; kappa_1 is restored afterwards.
    """
    raws = raw_moments(dist, max_order)
    mu = raws[1]
    centered = [Fraction(0)] * (max_order + 1)
    centered[0] = Fraction(1)
    for m in range(1, max_order + 1):
        acc = Fraction(0)
        for j in range(m + 1):
            acc += comb(m, j) * raws[j] * (-mu) ** (m - j)
        centered[m] = acc
    mgf = series_from_moments(centered)
    logmgf = series_log(mgf)
    fact = 1
    kappas = []
    for m in range(1, max_order + 1):
        fact *= m
        kappas.append(logmgf.coeffs[m] * fact)
    kappas[0] = mu
    return CumulantVector(tuple(kappas))


def cumulants_factored(
    spec: FactoredSpec,
    max_order: int = DEFAULT_SERIES_ORDER,
    check: bool = True,
) -> CumulantVector:
    """Cumulants of the mass function of a factored product, without expanding.

    For P(z) = prod (1 - z^b_j) / (1 - z^a_j) the cumulant of order m is
    (-1)^m/m * B_m * sum_j (b_j^m - a_j^m) with B_m the Bernoulli numbers in
    the B_1 = -1/2 convention; every odd order above 1 vanishes and the first
    equals half the degree.  With check=True the product is also expanded to
    confirm it really is a nonnegative polynomial (the formula is only a
    cumulant sequence in that case).
    """
    if check:
        expand_factored(spec)
    bern = bernoulli(max_order)
    kappas = []
    for m in range(1, max_order + 1):
        s = sum(
            Fraction(b) ** m - Fraction(a) ** m
            for b, a in zip(spec.numer, spec.denom)
        )
        sign = -1 if m % 2 else 1
        kappas.append(Fraction(sign, m) * bern[m] * s)
    return CumulantVector(tuple(kappas))


@dataclass(frozen=True)
class LiftReport:
    """Exact bookkeeping for the fair-coin lift of an odd-span input."""

    mean_before: Fraction
    mean_after: Fraction
    variance_before: Fraction
    variance_after: Fraction
    fourth_before: Fraction
    fourth_after: Fraction

    def identities_hold(self) -> bool:
        return (
            self.mean_after == self.mean_before + Fraction(1, 2)
            and self.variance_after == self.variance_before + Fraction(1, 4)
            and self.fourth_before
            == self.fourth_after - Fraction(3, 2) * self.variance_after + Fraction(5, 16)
        )


def odd_degree_lift(dist: Distribution) -> tuple[Distribution, LiftReport]:
    """Convolve an odd-span palindromic mass function with a fair coin.

    The result has even span, its mean grows by 1/2 and its variance by 1/4,
    and the fourth central moments are tied by
    mu4_before = mu4_after - (3/2) * var_after + 5/16.
    The report carries both sides of all three identities exactly.
    """
    if dist.span % 2 == 0:
        raise EvenDegree("lift applies to odd-span inputs only")
    if not dist.is_palindromic():
        raise NotPalindromic("lift is defined for palindromic mass functions")
    half = Fraction(1, 2)
    lifted = [Fraction(0)] * (len(dist.pmf) + 1)
    for k, p in enumerate(dist.pmf):
        lifted[k] += p * half
        lifted[k + 1] += p * half
    out = Distribution(tuple(lifted))
    report = LiftReport(
        mean_before=dist.mean,
        mean_after=out.mean,
        variance_before=dist.variance,
        variance_after=out.variance,
        fourth_before=central_moment(dist, 4),
        fourth_after=central_moment(out, 4),
    )
    return out, report


@dataclass(frozen=True)
class MgfCheckRecord:
    """One point of the exponential-moment ceiling check."""

    s: Fraction
    lhs: object           # mpf: E exp((X - n) s / sigma)
    rhs: object           # mpf: exp(1.5 s^2 e^(2 |s| / sigma))
    relative_margin: object  # mpf: (rhs - lhs) / rhs
    status: str           # "ok" | "equality" | "inconclusive" | "violated"


def mgf_bound_check(
    dist: Distribution,
    s_values: Sequence[RationalLike],
    precision_bits: int = 128,
) -> list[MgfCheckRecord]:
    """Check E exp((X-n)s/sigma) <= exp(1.5 s^2 exp(2|s|/sigma)) pointwise.

    Applies to even-span palindromic mass functions (n is the center, sigma
    the exact standard deviation).  Symmetry makes the left side even in s,
    so the ceiling is evaluated at |s|; with a signed exponent it is
    demonstrably false for negative s once sigma is small.  A margin whose
    relative size is below 2^-64 is reported "inconclusive" rather than
    trusted; s = 0 is reported as "equality" since both sides are exactly 1
    there.
    """
    if dist.span % 2 != 0:
        raise OddDegree("the exponential-moment ceiling is stated for even span")
    if not dist.is_palindromic():
        raise NotPalindromic("the exponential-moment ceiling needs symmetry")
    var = dist.variance
    if var == 0:
        raise ZeroVariance("degenerate input: zero variance")
    center = Fraction(dist.span, 2)
    records = []
    threshold = mp.mpf(2) ** -64
    with mp.workprec(precision_bits):
        sigma = mp.sqrt(mp.mpf(var.numerator) / var.denominator)
        for raw_s in s_values:
            s = Fraction(raw_s)
            if s == 0:
                records.append(
                    MgfCheckRecord(s, mp.mpf(1), mp.mpf(1), mp.mpf(0), "equality")
                )
                continue
            sf = mp.mpf(s.numerator) / s.denominator
            lhs = mp.mpf(0)
            for k, p in enumerate(dist.pmf):
                if p == 0:
                    continue
                shift = Fraction(k) - center
                arg = (mp.mpf(shift.numerator) / shift.denominator) * sf / sigma
                lhs += (mp.mpf(p.numerator) / p.denominator) * mp.exp(arg)
            rhs = mp.exp(mp.mpf(3) / 2 * sf**2 * mp.exp(2 * abs(sf) / sigma))
            rel = (rhs - lhs) / rhs
            if rel > threshold:
                status = "ok"
            elif rel < -threshold:
                status = "violated"
            else:
                status = "inconclusive"
            records.append(MgfCheckRecord(s, lhs, rhs, rel, status))
    return records
