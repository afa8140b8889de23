"""Generators for the catalogued polynomial families.

Each generator returns a FamilyOutput bundling the mass polynomial, the
factored form when one exists, and whatever closed-form expectations the
family carries (mean, variance, fourth-moment ratio), so tests and the CLI
can cross-check the generic engine against per-family formulas.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable, Optional, Sequence

from .errors import InvalidParams, NoKnownLimit
from .exactpoly import ExactPoly, FactoredSpec, expand_factored, from_coeffs
from .specfun import cauchy, euler


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its parameter assignment."""

    family: str
    params: dict


@dataclass(frozen=True)
class FamilyOutput:
    """A generated polynomial with its per-family closed-form expectations.

    ``expected_m4_identity`` is the family's exact standardized fourth
    moment when a closed form exists (None otherwise, and None for
    degenerate single-atom instances).  ``claims_root_unitary`` records
    whether the family is asserted to have all roots on the unit circle;
    generators never verify that claim themselves.
    """

    family: str
    params: dict
    poly: ExactPoly
    factored: Optional[FactoredSpec]
    expected_mean: Optional[Fraction]
    expected_variance: Optional[Fraction]
    expected_m4_identity: Optional[Fraction]
    claims_root_unitary: bool
    notes: tuple[str, ...] = field(default=())


def _require_int(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParams(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParams(f"{name} must be >= {minimum}, got {value}")
    return value


def _require_fraction(name: str, value) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidParams(f"{name} must be rational, got {value!r}") from exc


def _rising(x: Fraction, m: int) -> Fraction:
    acc = Fraction(1)
    for i in range(m):
        acc *= x + i
    return acc


# ---------------------------------------------------------------------------
# families with an explicit factored form
# ---------------------------------------------------------------------------

def _factored_output(
    family: str,
    params: dict,
    numer: Sequence[int],
    denom: Sequence[int],
    notes: tuple[str, ...] = (),
) -> FamilyOutput:
    spec = FactoredSpec(tuple(numer), tuple(denom))
    poly = expand_factored(spec)
    s2 = sum(b * b - a * a for b, a in zip(spec.numer, spec.denom))
    s4 = sum(b**4 - a**4 for b, a in zip(spec.numer, spec.denom))
    variance = Fraction(s2, 12)
    if variance:
        m4 = 3 - Fraction(6, 5) * Fraction(s4) / (Fraction(s2) ** 2)
    else:
        m4 = None
    return FamilyOutput(
        family=family,
        params=params,
        poly=poly,
        factored=spec,
        expected_mean=Fraction(spec.degree, 2),
        expected_variance=variance,
        expected_m4_identity=m4,
        claims_root_unitary=True,
        notes=notes,
    )


def gen_inversions(n: int) -> FamilyOutput:
    """Permutation inversion counts: prod_{j<=n} (1-z^j)/(1-z)."""
    n = _require_int("n", n, 0)
    return _factored_output(
        "inversions", {"n": n}, list(range(1, n + 1)), [1] * n
    )


def gen_stirling_inversions(n: int, r: int) -> FamilyOutput:
    """Inversions of generalized permutations with block size r."""
    n = _require_int("n", n, 0)
    r = _require_int("r", r, 1)
    numer = [r + (j - 1) * r * r for j in range(1, n + 1)]
    return _factored_output(
        "stirling_inversions", {"n": n, "r": r}, numer, [r] * n
    )


def gen_gaussian(n: int, m: int) -> FamilyOutput:
    """Gaussian binomial coefficient of shape (n, m) as a polynomial in z."""
    n = _require_int("n", n, 0)
    m = _require_int("m", m, 0)
    numer = [j + m for j in range(1, n + 1)]
    denom = list(range(1, n + 1))
    return _factored_output("gaussian", {"n": n, "m": m}, numer, denom)


def _as_list(value) -> list:
    """Accept a bare scalar where a list parameter is expected."""
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def gen_mahonian(parts: Sequence[int]) -> FamilyOutput:
    """Inversions of multiset permutations with the given multiplicities."""
    parts = _as_list(parts)
    if not parts:
        raise InvalidParams("mahonian needs at least one multiplicity")
    sizes = sorted((_require_int("part", p, 1) for p in parts), reverse=True)
    total = sum(sizes)
    numer = list(range(1, total + 1))
    denom: list[int] = []
    for a in sizes:
        denom.extend(range(1, a + 1))
    return _factored_output("mahonian", {"parts": tuple(sizes)}, numer, denom)


def gen_q_catalan(n: int, m: int) -> FamilyOutput:
    """Generalized Catalan numbers: prod_{j=2..n} (1-z^((m-1)n+j))/(1-z^j)."""
    n = _require_int("n", n, 1)
    m = _require_int("m", m, 2)
    numer = [(m - 1) * n + j for j in range(2, n + 1)]
    denom = list(range(2, n + 1))
    return _factored_output("q_catalan", {"n": n, "m": m}, numer, denom)


def gen_uniform_sums(parts: Sequence[int]) -> FamilyOutput:
    """Sum of independent uniforms on {0..d-1}: prod (1-z^d)/(1-z)."""
    parts = _as_list(parts)
    if not parts:
        raise InvalidParams("uniform_sums needs at least one part")
    sizes = [_require_int("part", d, 2) for d in parts]
    return _factored_output(
        "uniform_sums", {"parts": tuple(sizes)}, sizes, [1] * len(sizes)
    )


def gen_signed_rank(ranks: Sequence[int]) -> FamilyOutput:
    """Signed-rank statistics: prod (1+z^a) via (1-z^(2a))/(1-z^a)."""
    ranks = _as_list(ranks)
    if not ranks:
        raise InvalidParams("signed_rank needs at least one rank")
    sizes = [_require_int("rank", a, 1) for a in ranks]
    return _factored_output(
        "signed_rank",
        {"ranks": tuple(sizes)},
        [2 * a for a in sizes],
        sizes,
        notes=("the mass normalizer 2^-len(ranks) is left to normalization",),
    )


def gen_bimodal(i: int, j: int, k: int, l: int) -> FamilyOutput:
    """Three-block bimodal permutation statistic (monomial prefactor dropped).

    The generating product carries a pure power-of-z prefactor in some
    presentations; it only shifts the support, so it is omitted here and the
    polynomial starts at z^0.
    """
    i = _require_int("i", i, 0)
    j = _require_int("j", j, 0)
    k = _require_int("k", k, 0)
    l = _require_int("l", l, 0)
    if k < j:
        raise InvalidParams(f"needs k >= j, got k={k}, j={j}")
    numer = (
        [k + v for v in range(1, i + 1)]
        + [k + i + v for v in range(1, l + 1)]
        + [k - j + v for v in range(1, j + 1)]
    )
    denom = (
        list(range(1, i + 1)) + list(range(1, l + 1)) + list(range(1, j + 1))
    )
    return _factored_output(
        "bimodal",
        {"i": i, "j": j, "k": k, "l": l},
        numer,
        denom,
        notes=("support shift z^(C(i,2)+C(j,2)) omitted",),
    )


# ---------------------------------------------------------------------------
# coefficient-level families
# ---------------------------------------------------------------------------

def gen_turan_fejer(n: int, k: int) -> FamilyOutput:
    """Probability weights C(j+k,k) C(n-j,k) / C(n+k+1,2k+1), j = 0..n-k."""
    n = _require_int("n", n, 0)
    k = _require_int("k", k, 0)
    if k > n:
        raise InvalidParams(f"needs 0 <= k <= n, got k={k}, n={n}")
    ints = [comb(j + k, k) * comb(n - j, k) for j in range(n - k + 1)]
    total = comb(n + k + 1, 2 * k + 1)
    assert sum(ints) == total
    coeffs = [Fraction(c, total) for c in ints]
    if n == k:
        m4 = None
    else:
        m4 = 3 - Fraction(
            2 * (3 * n * n + 6 * n + k * k + 4 * k + 6),
            (n - k) * (n + k + 2) * (2 * k + 5),
        )
    return FamilyOutput(
        family="turan_fejer",
        params={"n": n, "k": k},
        poly=from_coeffs(coeffs),
        factored=None,
        expected_mean=Fraction(n - k, 2),
        expected_variance=Fraction((n - k) * (n + k + 2), 4 * (2 * k + 3)),
        expected_m4_identity=m4,
        claims_root_unitary=True,
    )


def gen_reimer(n: int, m: int = 1) -> FamilyOutput:
    """Probability generating polynomial of the binomially weighted
    absolute-product integrals, normalized so the coefficients sum to 1.

    Only the linear-weight case m=1 has a closed coefficient form here;
    higher m is not implemented.
    """
    n = _require_int("n", n, 1)
    if m != 1:
        raise NotImplementedError(
            "only the m=1 member of this family has an implemented closed form"
        )
    table = cauchy(n + 2)
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        scale = 12 * comb(n, j) * table[j + 2]
        for i in range(j + 1):
            term = scale * comb(j, i)
            coeffs[n - j + i] += -term if i % 2 else term
    assert sum(coeffs) == 1
    assert all(c >= 0 for c in coeffs)
    return FamilyOutput(
        family="reimer",
        params={"n": n, "m": m},
        poly=from_coeffs(coeffs),
        factored=None,
        expected_mean=Fraction(n, 2),
        expected_variance=Fraction(n * (4 * n + 11), 60),
        expected_m4_identity=None,
        claims_root_unitary=True,
    )


def gen_gegenbauer(n: int, alpha) -> FamilyOutput:
    """Symmetric beta-binomial weights: rising-factorial coefficient ratios.

    Coefficient j is proportional to
    [rising(alpha, j)/j!] * [rising(alpha, n-j)/(n-j)!], all exact rationals;
    alpha = 1/2 reproduces the positive-step law of symmetric walks and
    alpha = 1 the uniform distribution.
    """
    n = _require_int("n", n, 0)
    alpha = _require_fraction("alpha", alpha)
    if alpha <= 0:
        raise InvalidParams(f"alpha must be positive, got {alpha}")
    total = _rising(2 * alpha, n) / factorial(n)
    coeffs = [
        _rising(alpha, j)
        / factorial(j)
        * _rising(alpha, n - j)
        / factorial(n - j)
        / total
        for j in range(n + 1)
    ]
    assert sum(coeffs) == 1
    return FamilyOutput(
        family="gegenbauer",
        params={"n": n, "alpha": alpha},
        poly=from_coeffs(coeffs),
        factored=None,
        expected_mean=Fraction(n, 2),
        expected_variance=Fraction(n) * (n + 2 * alpha) / (4 * (2 * alpha + 1)),
        expected_m4_identity=None,
        claims_root_unitary=True,
    )


def gen_chung_feller(n: int) -> FamilyOutput:
    """Positive-step distribution of symmetric lattice walks:
    mass at k is C(2k,k) C(2n-2k,n-k) 4^(-n)."""
    n = _require_int("n", n, 0)
    ints = [comb(2 * k, k) * comb(2 * n - 2 * k, n - k) for k in range(n + 1)]
    assert sum(ints) == 4**n
    coeffs = [Fraction(c, 4**n) for c in ints]
    out = gen_gegenbauer(n, Fraction(1, 2))
    return FamilyOutput(
        family="chung_feller",
        params={"n": n},
        poly=from_coeffs(coeffs),
        factored=None,
        expected_mean=out.expected_mean,
        expected_variance=out.expected_variance,
        expected_m4_identity=None,
        claims_root_unitary=True,
    )


def gen_euler_cosh(n: int) -> FamilyOutput:
    """Palindromic positive polynomials from products of secant coefficients.

    Coefficient j is (-1)^n C(2n,2j) E_{2j} E_{2n-2j} with E the sech-series
    numbers; the first instances are 1+z and 5+6z+5z^2.
    """
    n = _require_int("n", n, 0)
    table = euler(n)
    sign = -1 if n % 2 else 1
    coeffs = [
        sign * comb(2 * n, 2 * j) * table[j] * table[n - j]
        for j in range(n + 1)
    ]
    assert all(c > 0 for c in coeffs)
    return FamilyOutput(
        family="euler_cosh",
        params={"n": n},
        poly=from_coeffs(coeffs),
        factored=None,
        expected_mean=Fraction(n, 2),
        expected_variance=None,
        expected_m4_identity=None,
        claims_root_unitary=True,
    )


# ---------------------------------------------------------------------------
# hypergeometric order-statistic mixtures
# ---------------------------------------------------------------------------

def gen_hypergeom_mixture(n: int, weights: Sequence) -> FamilyOutput:
    """Mixture over j of the law of the (j+1)-th smallest of r draws
    without replacement from {0..n-1}.

    The weight vector must be a symmetric probability vector of length r,
    and n must exceed r.  Mass points at the edge of {0..n-1} can be
    structurally zero (weights supported away from the ends); the stored
    polynomial keeps those zeros at the low end so the support stays put.
    """
    n = _require_int("n", n, 2)
    ws = [_require_fraction("weight", w) for w in _as_list(weights)]
    r = len(ws)
    if r < 1:
        raise InvalidParams("needs at least one mixture weight")
    if n <= r:
        raise InvalidParams(f"needs n > r, got n={n}, r={r}")
    if any(w < 0 for w in ws):
        raise InvalidParams("mixture weights must be nonnegative")
    if sum(ws) != 1:
        raise InvalidParams(f"mixture weights must sum to 1, got {sum(ws)}")
    if ws != ws[::-1]:
        raise InvalidParams("mixture weights must be symmetric")
    total = comb(n, r)
    coeffs = []
    for k in range(n):
        acc = Fraction(0)
        for j, w in enumerate(ws):
            if w:
                acc += w * comb(k, j) * comb(n - 1 - k, r - 1 - j)
        coeffs.append(acc / total)
    pi1 = sum(w * j for j, w in enumerate(ws))
    pi2 = sum(w * j * j for j, w in enumerate(ws))
    var_num = (
        (4 * pi2 - r * r + 3 * r) * n * n
        + 2 * (6 * pi2 - 2 * r * r + 3 * r - 1) * n
        + 8 * pi2
        - 3 * r * r
        + 3 * r
        - 2
    )
    assert 2 * pi1 == r - 1  # symmetry pins the mean at (n-1)/2
    return FamilyOutput(
        family="hypergeom_mixture",
        params={"n": n, "weights": tuple(ws)},
        poly=from_coeffs(coeffs),
        factored=None,
        expected_mean=Fraction(n - 1, 2),
        expected_variance=var_num / (4 * (r + 1) * (r + 2)),
        expected_m4_identity=None,
        claims_root_unitary=False,
        notes=(
            "unit-circle structure is checked per instance, never assumed",
            "edge masses can be structurally zero; strip the shift before "
            "root analysis",
        ),
    )


def gen_median_of_3(n: int) -> FamilyOutput:
    out = gen_hypergeom_mixture(n, [0, 1, 0])
    return replace(out, family="median_of_3", params={"n": n})


def gen_ninther(n: int) -> FamilyOutput:
    w = [0, 0, 0, Fraction(3, 14), Fraction(4, 7), Fraction(3, 14), 0, 0, 0]
    out = gen_hypergeom_mixture(n, w)
    return replace(out, family="ninther", params={"n": n})


def gen_uniform_mixture(n: int, r: int) -> FamilyOutput:
    r = _require_int("r", r, 1)
    out = gen_hypergeom_mixture(n, [Fraction(1, r)] * r)
    return replace(out, family="uniform_mixture", params={"n": n, "r": r})


# ---------------------------------------------------------------------------
# registry and limiting-moment oracles
# ---------------------------------------------------------------------------

REGISTRY: dict[str, tuple[Callable[..., FamilyOutput], str]] = {
    "inversions": (gen_inversions, "n:int>=0"),
    "stirling_inversions": (gen_stirling_inversions, "n:int>=0, r:int>=1"),
    "gaussian": (gen_gaussian, "n:int>=0, m:int>=0"),
    "mahonian": (gen_mahonian, "parts:list[int>=1]"),
    "q_catalan": (gen_q_catalan, "n:int>=1, m:int>=2"),
    "uniform_sums": (gen_uniform_sums, "parts:list[int>=2]"),
    "signed_rank": (gen_signed_rank, "ranks:list[int>=1]"),
    "bimodal": (gen_bimodal, "i:int>=0, j:int>=0, k:int>=j, l:int>=0"),
    "turan_fejer": (gen_turan_fejer, "n:int>=0, k:int in 0..n"),
    "reimer": (gen_reimer, "n:int>=1, m:int=1"),
    "gegenbauer": (gen_gegenbauer, "n:int>=0, alpha:Fraction>0"),
    "chung_feller": (gen_chung_feller, "n:int>=0"),
    "euler_cosh": (gen_euler_cosh, "n:int>=0"),
    "hypergeom_mixture": (
        gen_hypergeom_mixture,
        "n:int, weights:list[Fraction] symmetric, sum 1, len r < n",
    ),
    "median_of_3": (gen_median_of_3, "n:int>3"),
    "ninther": (gen_ninther, "n:int>9"),
    "uniform_mixture": (gen_uniform_mixture, "n:int, r:int>=1, n>r"),
}

FACTORED_FAMILIES = (
    "inversions",
    "stirling_inversions",
    "gaussian",
    "mahonian",
    "q_catalan",
    "uniform_sums",
    "signed_rank",
    "bimodal",
)


def list_families() -> list[tuple[str, str]]:
    return sorted((name, sig) for name, (_fn, sig) in REGISTRY.items())


def generate(family: str, **params) -> FamilyOutput:
    """Dispatch to a registered generator by name."""
    try:
        fn, _sig = REGISTRY[family]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise InvalidParams(f"unknown family {family!r}; known: {known}") from None
    return fn(**params)


def gen_factored_family(family: str, **params) -> FamilyOutput:
    """Like generate(), restricted to families with a factored form."""
    if family not in FACTORED_FAMILIES:
        raise InvalidParams(
            f"{family!r} is not one of the factored families {FACTORED_FAMILIES}"
        )
    return generate(family, **params)


@dataclass(frozen=True)
class LimitOracle:
    """Moment sequence of a family's limiting law under the stated scaling."""

    law: str
    scaling: str  # "by_n" (X/n) or "standardized" ((X-EX)/sigma)
    moments: tuple[Fraction, ...]  # orders 1..len


def limit_moment_oracles(
    family: str, params: Optional[dict] = None, max_order: int = 8
) -> LimitOracle:
    """Closed-form limiting moments, where the catalogue pins them down.

    Raises NoKnownLimit for families without a recorded limit law.
    """
    params = dict(params or {})
    orders = range(1, max_order + 1)
    if family == "turan_fejer":
        k = _require_int("k", params.get("k"), 0)
        moments = tuple(
            Fraction(factorial(k + m) * factorial(2 * k + 1))
            / (factorial(k) * factorial(2 * k + m + 1))
            for m in orders
        )
        return LimitOracle(f"beta({k + 1},{k + 1}) on [0,1]", "by_n", moments)
    if family == "reimer":
        table = cauchy(max_order + 2)
        moments = []
        for m in orders:
            acc = Fraction(0)
            for ell in range(m + 1):
                term = comb(m, ell) * table[ell + 2]
                acc += -term if ell % 2 else term
            moments.append(12 * acc)
        return LimitOracle("absolute-product integral limit", "by_n", tuple(moments))
    if family == "chung_feller":
        moments = tuple(Fraction(comb(2 * m, m), 4**m) for m in orders)
        return LimitOracle("arcsine on [0,1]", "by_n", moments)
    if family == "gegenbauer":
        alpha = _require_fraction("alpha", params.get("alpha"))
        moments = tuple(
            _rising(alpha, m) / _rising(2 * alpha, m) for m in orders
        )
        return LimitOracle(f"beta({alpha},{alpha}) on [0,1]", "by_n", moments)
    if family == "euler_cosh":
        moments = tuple(Fraction(1, m + 1) for m in orders)
        return LimitOracle("uniform on [0,1]", "by_n", moments)
    if family in ("hypergeom_mixture", "median_of_3", "ninther", "uniform_mixture"):
        if family == "median_of_3":
            ws = [Fraction(0), Fraction(1), Fraction(0)]
        elif family == "ninther":
            ws = [
                Fraction(0), Fraction(0), Fraction(0),
                Fraction(3, 14), Fraction(4, 7), Fraction(3, 14),
                Fraction(0), Fraction(0), Fraction(0),
            ]
        elif family == "uniform_mixture":
            r = _require_int("r", params.get("r"), 1)
            ws = [Fraction(1, r)] * r
        else:
            ws = [_require_fraction("weight", w) for w in params.get("weights", ())]
            if not ws:
                raise InvalidParams("weights are required for the mixture oracle")
        r = len(ws)
        moments = tuple(
            Fraction(factorial(r), factorial(r + m))
            * sum(w * _rising(Fraction(j + 1), m) for j, w in enumerate(ws))
            for m in orders
        )
        return LimitOracle("order-statistic mixture on [0,1]", "by_n", moments)
    if family == "inversions":
        moments = tuple(
            Fraction(0)
            if m % 2
            else Fraction(prod(range(1, m, 2)))
            for m in orders
        )
        return LimitOracle("standard normal", "standardized", moments)
    raise NoKnownLimit(f"no limiting moment sequence on record for {family!r}")
