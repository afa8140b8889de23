"""Exact dense polynomials over the rationals, plus factored products and
truncated power series.

Everything in this module is exact: coefficients are `fractions.Fraction`
(plain ints are accepted and widened on the way in).  Polynomials are stored
dense in ascending order of the exponent, so ``coeffs[k]`` multiplies ``z**k``.
Nothing here assumes coefficients are nonnegative except the operations that
explicitly treat the polynomial as a mass function and say so.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .errors import (
    BadConstantTerm,
    InvalidParams,
    NegativeCoefficient,
    NonPolynomialQuotient,
    ZeroPolynomial,
)

DEFAULT_SERIES_ORDER = 16

RationalLike = int | Fraction | str


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise InvalidParams(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class ExactPoly:
    """Dense polynomial with Fraction coefficients, ascending exponents.

    The highest-order stored coefficient is nonzero; the zero polynomial is
    the empty tuple and reports degree -1.  Low-order zero coefficients are
    kept as-is (they carry support information for shifted mass functions).
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cs = [_as_fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        return poly_add(self, other)

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        neg = ExactPoly(tuple(-c for c in other.coeffs))
        return poly_add(self, neg)

    def __mul__(self, other: "ExactPoly") -> "ExactPoly":
        return poly_mul(self, other)

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate(self, x)


def from_coeffs(values: Iterable[RationalLike]) -> ExactPoly:
    """Build an ExactPoly from ints, Fractions, or rational strings."""
    return ExactPoly(tuple(_as_fraction(v) for v in values))


def evaluate(p: ExactPoly, x: RationalLike) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    xf = _as_fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * xf + c
    return acc


def is_palindromic(p: ExactPoly) -> bool:
    """True when the coefficient list reads the same in both directions."""
    return p.coeffs == p.coeffs[::-1]


def strip_shift(p: ExactPoly) -> tuple[int, ExactPoly]:
    """Split off the largest power of z dividing p.

    Returns ``(s, q)`` with ``p = z**s * q`` and ``q(0) != 0``.  Central
    moments of a mass function are unchanged by this; the mean drops by s.
    """
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no shift decomposition")
    s = 0
    while p.coeffs[s] == 0:
        s += 1
    return s, ExactPoly(p.coeffs[s:])


def poly_add(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    n = max(len(p.coeffs), len(q.coeffs))
    cs = [Fraction(0)] * n
    for i, c in enumerate(p.coeffs):
        cs[i] += c
    for i, c in enumerate(q.coeffs):
        cs[i] += c
    return ExactPoly(tuple(cs))


def poly_mul(p: ExactPoly, q: ExactPoly) -> ExactPoly:
    if p.is_zero() or q.is_zero():
        return ExactPoly(())
    cs = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            cs[i + j] += a * b
    return ExactPoly(tuple(cs))


def poly_exact_div(p: ExactPoly, d: ExactPoly) -> ExactPoly:
    """Exact polynomial division; raises NonPolynomialQuotient on a remainder."""
    if d.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if p.is_zero():
        return ExactPoly(())
    if p.degree < d.degree:
        raise NonPolynomialQuotient(
            f"degree {p.degree} not divisible by degree {d.degree}"
        )
    rem = list(p.coeffs)
    dc = d.coeffs
    lead = dc[-1]
    qn = len(rem) - len(dc) + 1
    q = [Fraction(0)] * qn
    for i in range(qn - 1, -1, -1):
        q[i] = rem[i + len(dc) - 1] / lead
        if q[i] == 0:
            continue
        for j, c in enumerate(dc):
            rem[i + j] -= q[i] * c
    if any(c != 0 for c in rem[: len(dc) - 1]):
        raise NonPolynomialQuotient("nonzero remainder in exact division")
    return ExactPoly(tuple(q))


# ---------------------------------------------------------------------------
# factored products  prod_j (1 - z**numer[j]) / prod_j (1 - z**denom[j])
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredSpec:
    """A ratio of products of (1 - z**e) factors.

    ``numer`` and ``denom`` hold the exponents e of the numerator and
    denominator factors.  The lists have equal length and all exponents are
    positive integers.  Whether the ratio is actually a polynomial (it never
    is when the formal degree ``sum(numer) - sum(denom)`` is negative) is
    decided by :func:`expand_factored`, not here.
    """

    numer: tuple[int, ...]
    denom: tuple[int, ...]

    def __post_init__(self) -> None:
        numer = tuple(int(e) for e in self.numer)
        denom = tuple(int(e) for e in self.denom)
        if len(numer) != len(denom):
            raise InvalidParams(
                f"exponent lists differ in length: {len(numer)} vs {len(denom)}"
            )
        if any(e <= 0 for e in numer + denom):
            raise InvalidParams("all factor exponents must be positive integers")
        # A negative formal degree is representable; expansion reports it as
        # NonPolynomialQuotient, since the ratio is then never a polynomial.
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "denom", denom)

    @property
    def degree(self) -> int:
        return sum(self.numer) - sum(self.denom)


def _sparse_mul(c: list[int], e: int) -> list[int]:
    """Multiply an int coefficient list by (1 - z**e)."""
    out = c + [0] * e
    for i, v in enumerate(c):
        out[i + e] -= v
    return out


def _sparse_div(c: list[int], e: int) -> list[int]:
    """Divide an int coefficient list exactly by (1 - z**e)."""
    d = len(c) - 1
    if d < e:
        raise NonPolynomialQuotient(f"cannot divide degree {d} by (1 - z^{e})")
    q = [0] * (d - e + 1)
    for i in range(d - e + 1):
        q[i] = c[i] + (q[i - e] if i >= e else 0)
    for i in range(d - e + 1, d + 1):
        if c[i] + (q[i - e] if i >= e else 0) != 0:
            raise NonPolynomialQuotient(f"(1 - z^{e}) leaves a remainder")
    return q


def _expand_then_divide(spec: FactoredSpec) -> list[int]:
    cur = [1]
    for e in spec.numer:
        cur = _sparse_mul(cur, e)
    for e in spec.denom:
        cur = _sparse_div(cur, e)
    return cur


def _interleaved(spec: FactoredSpec) -> list[int]:
    cur = [1]
    pending: list[int] = []
    for b, a in zip(spec.numer, spec.denom):
        cur = _sparse_mul(cur, b)
        retry = pending + [a]
        pending = []
        for e in retry:
            try:
                cur = _sparse_div(cur, e)
            except NonPolynomialQuotient:
                pending.append(e)
    progress = True
    while pending and progress:
        progress = False
        still: list[int] = []
        for e in pending:
            try:
                cur = _sparse_div(cur, e)
                progress = True
            except NonPolynomialQuotient:
                still.append(e)
        pending = still
    if pending:
        raise NonPolynomialQuotient(
            f"factors (1 - z^e) for e in {pending} do not divide the product"
        )
    return cur


def expand_factored(spec: FactoredSpec, strategy: str = "both") -> ExactPoly:
    """Expand a factored ratio into a dense polynomial.

    Strategies:
      * ``"expand_then_divide"`` multiplies out the whole numerator first;
      * ``"interleaved"`` alternates multiply/divide, deferring a division
        until it becomes exact;
      * ``"both"`` (default) runs the two and insists they agree.

    Raises NonPolynomialQuotient when the ratio is not a polynomial and
    NegativeCoefficient when the expansion is a polynomial but not a mass
    function.  For a valid expansion the coefficient sum always equals
    prod(numer)/prod(denom).
    """
    if strategy == "expand_then_divide":
        cs = _expand_then_divide(spec)
    elif strategy == "interleaved":
        cs = _interleaved(spec)
    elif strategy == "both":
        cs = _expand_then_divide(spec)
        alt = _interleaved(spec)
        if cs != alt:
            raise MismatchError(spec)
    else:
        raise InvalidParams(f"unknown expansion strategy: {strategy!r}")
    mass = Fraction(prod(spec.numer), prod(spec.denom))
    if sum(cs) != mass:
        raise NonPolynomialQuotient(
            "expansion does not carry the expected total mass"
        )
    neg = [i for i, v in enumerate(cs) if v < 0]
    if neg:
        raise NegativeCoefficient(
            f"expansion has negative coefficients at exponents {neg[:8]}"
        )
    return from_coeffs(cs)


class MismatchError(AssertionError):
    """Internal: the two expansion strategies disagreed (a bug, not bad input)."""

    def __init__(self, spec: FactoredSpec):
        super().__init__(f"expansion strategies disagree for {spec}")


# ---------------------------------------------------------------------------
# normalized raw moments of a mass-function polynomial
# ---------------------------------------------------------------------------

def power_sums(p: ExactPoly, max_order: int = DEFAULT_SERIES_ORDER) -> tuple[Fraction, ...]:
    """Normalized raw moments E[X^m] for m = 0..max_order.

    Treats ``coeffs[k]`` as the (unnormalized) mass at the integer point k.
    The zero polynomial carries no mass and is rejected; so is any negative
    coefficient, because the result would not be a moment sequence.
    """
    if p.is_zero():
        raise ZeroPolynomial("no moments: the zero polynomial carries no mass")
    if any(c < 0 for c in p.coeffs):
        raise NegativeCoefficient("mass function has a negative coefficient")
    total = sum(p.coeffs)
    sums = [Fraction(0)] * (max_order + 1)
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        kp = Fraction(1)
        for m in range(max_order + 1):
            sums[m] += c * kp
            kp *= k
    return tuple(s / total for s in sums)


# ---------------------------------------------------------------------------
# truncated power series with exact coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """A power series known through z**order, with exact coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", tuple(_as_fraction(c) for c in self.coeffs)
        )
        if not self.coeffs:
            raise InvalidParams("a truncated series needs at least a constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        return TruncatedSeries(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        n = self.order
        cs = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                cs[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(cs))

    def _check_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise InvalidParams(
                f"series orders differ: {self.order} vs {other.order}"
            )


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log of a series with constant term exactly 1.

    Uses the derivative recurrence n*g_n = n*a_n - sum_{j<n} j*g_j*a_{n-j},
    which keeps everything rational.
    """
    if s.coeffs[0] != 1:
        raise BadConstantTerm(
            f"series logarithm needs constant term 1, got {s.coeffs[0]}"
        )
    n = s.order
    g = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        acc = m * s.coeffs[m]
        for j in range(1, m):
            acc -= j * g[j] * s.coeffs[m - j]
        g[m] = acc / m
    return TruncatedSeries(tuple(g))


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp of a series with constant term exactly 0 (inverse of series_log)."""
    if s.coeffs[0] != 0:
        raise BadConstantTerm(
            f"series exponential needs constant term 0, got {s.coeffs[0]}"
        )
    n = s.order
    f = [Fraction(0)] * (n + 1)
    f[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, m + 1):
            acc += j * s.coeffs[j] * f[m - j]
        f[m] = acc / m
    return TruncatedSeries(tuple(f))


def series_from_moments(moments: Sequence[Fraction]) -> TruncatedSeries:
    """Exponential generating series sum_m moments[m] t^m / m!.

    Feeding in raw moments of a random variable gives the moment generating
    function as a truncated series in t.
    """
    fact = 1
    cs = []
    for m, mom in enumerate(moments):
        if m > 0:
            fact *= m
        cs.append(_as_fraction(mom) / fact)
    return TruncatedSeries(tuple(cs))
