"""Unit-circle root extraction with certificates.

For a real palindromic polynomial P that does not vanish at z = 1, every
root on the unit circle away from z = -1 belongs to a conjugate pair
e^(+-i*phi) with phi in (0, pi).  On the circle, z = e^(i*theta) turns
z^(-h) P(z) into a plain cosine polynomial

    G(theta) = f_h + 2 * sum_k f_(h+k) cos(k theta)

(2h = deg P), so root-finding becomes locating sign changes of a real
function on (0, pi).  That viewpoint powers both the fast extraction path
and the certificate: if G shows h strict sign alternations, P has exactly
2h simple roots on the circle and none anywhere else.

The certificate logic is exact at the endpoints (integer evaluations at
z = 1 and z = -1) and interval-based in between, with all floating work done
in mpmath/gmpy2 at the caller's precision plus guard bits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Optional, Sequence

import mpmath as mp
import numpy as np

from .errors import (
    DegenerateAtOne,
    InvalidParams,
    MismatchBeyondTolerance,
    OddDegree,
    RootsOffCircle,
    UnresolvedMultiplicity,
    ZeroPolynomial,
)
from .exactpoly import ExactPoly, RationalLike, from_coeffs
from .moments import Distribution, central_moment, normalized_fourth
from .specfun import sinh_power

try:
    import gmpy2

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is normally present
    _HAVE_GMPY2 = False


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AngleProfile:
    """Certified unit-circle root data of a palindromic polynomial.

    ``angles`` are the distinct root angles in the open interval (0, pi),
    ascending; ``multiplicities[i]`` counts how many conjugate pairs sit at
    ``angles[i]``.  The root z = -1 is tracked separately through
    ``pi_multiplicity`` (a count of (z+1) factors, not of pairs).  A root at
    z = 0 is never present (``zero_multiplicity`` is kept for symmetry with
    serialized output and is always 0: shifted inputs are rejected).
    """

    angles: tuple
    multiplicities: tuple[int, ...]
    pi_multiplicity: int
    zero_multiplicity: int
    residual_bound: object
    precision_bits: int
    degree: int

    def accounts_for_degree(self) -> bool:
        paired = 2 * sum(self.multiplicities)
        return paired + self.pi_multiplicity + self.zero_multiplicity == self.degree

    def pair_count(self) -> int:
        """Number of conjugate pairs, counting z = -1 roots two-per-pair."""
        if self.pi_multiplicity % 2:
            raise OddDegree(
                "odd count of roots at z = -1: angle pairing needs even degree"
            )
        return sum(self.multiplicities) + self.pi_multiplicity // 2


@dataclass(frozen=True)
class JumpFunction:
    """Spectral jump data: mass 1/(sigma^2 (1-cos phi)) placed at that value.

    One entry per conjugate pair (multiplicities repeat entries), sorted by
    descending mass.  Positions and masses coincide by construction, and the
    masses sum to 1 up to the rounding of the angle data.
    """

    masses: tuple
    angles: tuple
    sigma_sq: object
    total_mass: object

    def top(self, k: int) -> tuple:
        return self.masses[:k]


# ---------------------------------------------------------------------------
# exact preprocessing
# ---------------------------------------------------------------------------

def _integer_coeffs(poly: ExactPoly) -> list[int]:
    """Clear denominators and common content; make the leading entry positive."""
    denom_lcm = 1
    for c in poly.coeffs:
        denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in poly.coeffs]
    content = 0
    for v in ints:
        content = gcd(content, v)
    if content > 1:
        ints = [v // content for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def self_inversive_check(poly: ExactPoly | Iterable[RationalLike]) -> bool:
    """True when the coefficient vector is symmetric under reversal."""
    p = poly if isinstance(poly, ExactPoly) else from_coeffs(poly)
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no inversive structure")
    return p.coeffs == p.coeffs[::-1]


def _synthetic_div_minus_one(c: list[int]) -> list[int]:
    """Divide by (z + 1), assuming exact divisibility (checked by caller)."""
    d = len(c) - 1
    q = [0] * d
    acc = c[d]
    for i in range(d - 1, -1, -1):
        q[i] = acc
        acc = c[i] - acc
    return q


# ---------------------------------------------------------------------------
# cosine-series evaluation backends
# ---------------------------------------------------------------------------

class _CosSeries:
    """C(t) = a0 + sum_{k>=1} a_k cos(k t), evaluated by Clenshaw recurrence.

    Built from integer coefficients; evaluations run at ``prec`` bits using
    gmpy2.mpfr when available (much faster) and mpmath otherwise.  Values
    returned to callers are always mpmath mpf.
    """

    def __init__(self, a_ints: Sequence[int], prec: int):
        self.prec = prec
        self.n = len(a_ints) - 1
        self.abs_sum = sum(abs(v) for v in a_ints)
        self._gm = _HAVE_GMPY2
        if self._gm:
            ctx = gmpy2.context(precision=prec)
            self._ctx = ctx
            with ctx:
                self._a = [gmpy2.mpfr(v) for v in a_ints]
                self._da = [gmpy2.mpfr(k * v) for k, v in enumerate(a_ints)]
        else:
            with mp.workprec(prec):
                self._a = [mp.mpf(v) for v in a_ints]
                self._da = [mp.mpf(k * v) for k, v in enumerate(a_ints)]

    # -- conversions ------------------------------------------------------

    def _to_backend(self, theta):
        # conversions must not round through the ambient mpmath context,
        # which may be far below self.prec when callers sit outside any
        # workprec block
        if not self._gm:
            with mp.workprec(self.prec):
                return mp.mpf(theta)
        if not isinstance(theta, mp.mpf):
            with mp.workprec(self.prec):
                theta = mp.mpf(theta)
        sign, man, exp, _ = theta._mpf_
        v = gmpy2.mpfr(man) * gmpy2.mpfr(2) ** exp
        return -v if sign else v

    def _to_mpf(self, x):
        with mp.workprec(self.prec):
            if not self._gm:
                return +x
            m, e = x.as_mantissa_exp()
            return mp.ldexp(mp.mpf(int(m)), int(e))

    # -- evaluation -------------------------------------------------------

    def value(self, theta) -> mp.mpf:
        if self._gm:
            with self._ctx:
                t = self._to_backend(theta)
                c = gmpy2.cos(t)
                b1 = gmpy2.mpfr(0)
                b2 = gmpy2.mpfr(0)
                two_c = 2 * c
                a = self._a
                for k in range(self.n, 0, -1):
                    b1, b2 = a[k] + two_c * b1 - b2, b1
                val = a[0] + c * b1 - b2
            return self._to_mpf(val)
        with mp.workprec(self.prec):
            c = mp.cos(theta)
            b1 = mp.mpf(0)
            b2 = mp.mpf(0)
            two_c = 2 * c
            a = self._a
            for k in range(self.n, 0, -1):
                b1, b2 = a[k] + two_c * b1 - b2, b1
            return a[0] + c * b1 - b2

    def value_and_derivative(self, theta) -> tuple[mp.mpf, mp.mpf]:
        if self._gm:
            with self._ctx:
                t = self._to_backend(theta)
                c = gmpy2.cos(t)
                s = gmpy2.sin(t)
                two_c = 2 * c
                a, da = self._a, self._da
                b1 = b2 = gmpy2.mpfr(0)
                d1 = d2 = gmpy2.mpfr(0)
                for k in range(self.n, 0, -1):
                    b1, b2 = a[k] + two_c * b1 - b2, b1
                    d1, d2 = da[k] + two_c * d1 - d2, d1
                val = a[0] + c * b1 - b2
                der = -s * d1
            return self._to_mpf(val), self._to_mpf(der)
        with mp.workprec(self.prec):
            c = mp.cos(theta)
            s = mp.sin(theta)
            two_c = 2 * c
            a, da = self._a, self._da
            b1 = b2 = mp.mpf(0)
            d1 = d2 = mp.mpf(0)
            for k in range(self.n, 0, -1):
                b1, b2 = a[k] + two_c * b1 - b2, b1
                d1, d2 = da[k] + two_c * d1 - d2, d1
            return a[0] + c * b1 - b2, -s * d1


def _half_angle_coeffs(r: Sequence[int]) -> list[int]:
    """Clenshaw coefficients of G for an even palindromic integer vector."""
    h = (len(r) - 1) // 2
    return [r[h]] + [2 * r[h + k] for k in range(1, h + 1)]


def _scaled_doubles(ints: Sequence[int]) -> np.ndarray:
    """Lossy double-precision image of big integers, jointly rescaled."""
    maxbits = max((abs(v).bit_length() for v in ints if v), default=1)
    shift = maxbits - 500 if maxbits > 500 else 0
    if shift:
        return np.array([float(Fraction(v, 1 << shift)) for v in ints], dtype=float)
    return np.array([float(v) for v in ints], dtype=float)


def _clenshaw_cos_np(a: np.ndarray, cos_t: np.ndarray) -> np.ndarray:
    b1 = np.zeros_like(cos_t)
    b2 = np.zeros_like(cos_t)
    two_c = 2.0 * cos_t
    for k in range(len(a) - 1, 0, -1):
        b1, b2 = a[k] + two_c * b1 - b2, b1
    return a[0] + cos_t * b1 - b2


# ---------------------------------------------------------------------------
# the certified square-free extraction attempt
# ---------------------------------------------------------------------------

def _scan_grid(signs: list[int]) -> Optional[list[tuple]]:
    """Turn a sign sequence over a theta grid into brackets and exact hits.

    Returns a list of ("bracket", i, j) and ("hit", i) events, or None when
    the pattern cannot correspond to simple, separated zeros.
    """
    nonzero = [(i, s) for i, s in enumerate(signs) if s != 0]
    if not nonzero or nonzero[0][0] != 0 or nonzero[-1][0] != len(signs) - 1:
        return None
    events: list[tuple] = []
    for (i1, s1), (i2, s2) in zip(nonzero, nonzero[1:]):
        gap = i2 - i1 - 1
        if s1 == s2:
            if gap:
                return None
        else:
            if gap == 0:
                events.append(("bracket", i1, i2))
            elif gap == 1:
                events.append(("hit", i1 + 1))
            else:
                return None
    return events


def _certified_simple_angles(
    r: list[int], precision_bits: int
) -> Optional[list[mp.mpf]]:
    """All-simple unit-circle angle extraction for an even palindromic
    integer polynomial with r(1) != 0 and r(-1) != 0.

    Returns the h = deg(r)/2 certified angles, or None when the evidence for
    "exactly h simple circle zeros" could not be assembled (multiple roots,
    off-circle roots, or clustering beyond the working resolution).
    """
    h = (len(r) - 1) // 2
    if h == 0:
        return []
    # generous headroom: Newton steps plateau near abs_sum / |G'| times the
    # evaluation roundoff, which can sit well above 2^-prec for layers with
    # large coefficient mass
    prec_work = precision_bits + 64
    a_ints = _half_angle_coeffs(r)
    at_one = sum(r)
    at_minus_one = sum(v if i % 2 == 0 else -v for i, v in enumerate(r))
    s0 = 1 if at_one > 0 else -1
    # r(e^{i.theta}) = e^{i.h.theta} G(theta), so G(pi) = (-1)^h r(-1)
    spi = (1 if at_minus_one > 0 else -1) * (-1) ** h
    if s0 * (-1) ** h != spi:
        return None

    series = _CosSeries(a_ints, prec_work)
    af = _scaled_doubles(a_ints)
    abs_sum_f = float(np.sum(np.abs(af)))
    floor_dbl = abs_sum_f * 1e-11

    from scipy.fft import dct

    m_grid = 1 << max(8, (8 * h - 1).bit_length())
    events = None
    for _attempt in range(3):
        # DCT-I doubles every interior term, and af already carries the
        # factor 2 on the cosine coefficients, so feed it halved.
        x = np.zeros(m_grid + 1)
        x[: h + 1] = af
        x[1 : h + 1] *= 0.5
        y = dct(x, type=1)
        signs = np.sign(y).astype(int)
        signs[np.abs(y) < floor_dbl] = 0
        signs[0] = s0
        signs[m_grid] = spi
        dubious = np.nonzero(signs == 0)[0]
        if len(dubious) <= 4 * h + 8:
            with mp.workprec(prec_work):
                pi_val = +mp.pi
                floor_mp = series.abs_sum * (h + 2) * mp.mpf(2) ** (-precision_bits - 16)
                for idx in dubious:
                    val = series.value(pi_val * int(idx) / m_grid)
                    if abs(val) > floor_mp:
                        signs[idx] = 1 if val > 0 else -1
            events = _scan_grid(list(signs))
            if events is not None and len(events) == h:
                break
            events = None
        m_grid *= 4
        if m_grid > 1 << 22:
            break
    if events is None:
        return None

    # trace each bracket down to double resolution by bisection
    with mp.workprec(prec_work):
        pi_mp = +mp.pi
        step = pi_mp / m_grid
    lo = np.empty(h)
    hi = np.empty(h)
    lo_sign = np.empty(h)
    fixed = np.zeros(h, dtype=bool)
    pi_f = float(mp.pi)
    for t, ev in enumerate(events):
        if ev[0] == "bracket":
            lo[t] = pi_f * ev[1] / m_grid
            hi[t] = pi_f * ev[2] / m_grid
            lo_sign[t] = signs[ev[1]]
        else:
            lo[t] = hi[t] = pi_f * ev[1] / m_grid
            fixed[t] = True
    active = ~fixed
    for _ in range(34):
        mid = 0.5 * (lo + hi)
        vals = _clenshaw_cos_np(af, np.cos(mid))
        same = (np.sign(vals) == lo_sign) | (vals == 0)
        lo = np.where(active & same, mid, lo)
        hi = np.where(active & ~same, mid, hi)

    # high-precision Newton polish, one angle at a time
    polished: list[mp.mpf] = []
    with mp.workprec(prec_work):
        target = mp.mpf(2) ** (-(precision_bits + 16))
        for t in range(h):
            if fixed[t]:
                ev = events[t]
                theta = pi_mp * ev[1] / m_grid
            else:
                theta = mp.mpf(0.5) * (mp.mpf(lo[t]) + mp.mpf(hi[t]))
            blo = mp.mpf(lo[t]) - 2 * step
            bhi = mp.mpf(hi[t]) + 2 * step
            ok = False
            moved = None
            for _it in range(20):
                val, der = series.value_and_derivative(theta)
                if der == 0:
                    break
                delta = val / der
                nxt = theta - delta
                if nxt <= blo or nxt >= bhi:
                    nxt = mp.mpf(0.5) * (blo + bhi)
                moved = abs(nxt - theta)
                theta = nxt
                if moved < target:
                    ok = True
                    break
            if not ok and moved is not None:
                # near a simple root the final step size bounds the remaining
                # error, so a stall slightly above `target` is still a located
                # root as long as it clears the user-facing precision
                ok = moved < mp.mpf(2) ** (-(precision_bits + 4))
            if not ok:
                return None
            final = series.value(theta)
            if abs(final) > series.abs_sum * mp.mpf(2) ** (-precision_bits // 2):
                return None
            polished.append(theta)

        polished.sort()
        merge_tol = mp.mpf(2) ** (-(precision_bits // 8))
        for u, v in zip(polished, polished[1:]):
            if v - u < merge_tol:
                return None
        if polished and (
            polished[0] < merge_tol or pi_mp - polished[-1] < merge_tol
        ):
            return None

        # the certificate: strict sign alternation at midpoints
        floor_mp = series.abs_sum * (h + 2) * mp.mpf(2) ** (-precision_bits - 16)
        checkpoints = [polished[0] / 2]
        checkpoints += [
            (polished[i] + polished[i + 1]) / 2 for i in range(h - 1)
        ]
        checkpoints.append((polished[-1] + pi_mp) / 2)
        expected = s0
        for i, point in enumerate(checkpoints):
            expected = s0 * (-1) ** i
            val = series.value(point)
            if abs(val) <= floor_mp:
                return None
            if (1 if val > 0 else -1) != expected:
                return None
    return polished


# ---------------------------------------------------------------------------
# fallback path: exact square-free split, per-factor certification
# ---------------------------------------------------------------------------

def _numeric_roots(ints: Sequence[int]) -> np.ndarray:
    cs = _scaled_doubles(ints)
    return np.roots(cs[::-1])


def _hunt_off_circle(f: list[int], precision_bits: int) -> None:
    """Find a certified off-circle root of f, or give up honestly.

    Raises RootsOffCircle with a numeric witness when one is confirmed at
    high precision, UnresolvedMultiplicity otherwise.  Never returns.
    """
    prec_work = precision_bits + 32
    try:
        roots = _numeric_roots(f)
        order = np.argsort(-np.abs(np.abs(roots) - 1.0))
        candidates = [complex(roots[i]) for i in order[:4]]
    except Exception:
        candidates = []
    with mp.workprec(prec_work):
        coeffs = [mp.mpf(v) for v in f]
        dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]
        abs_sum = sum(abs(c) for c in coeffs)

        def horner(cs, z):
            acc = mp.mpc(0)
            for c in reversed(cs):
                acc = acc * z + c
            return acc

        threshold = mp.mpf(2) ** (-(precision_bits // 4))
        for cand in candidates:
            if abs(abs(cand) - 1.0) < 1e-9:
                continue
            z = mp.mpc(cand)
            for _ in range(60):
                pv = horner(coeffs, z)
                dv = horner(dcoeffs, z)
                if dv == 0:
                    break
                step = pv / dv
                z -= step
                if abs(step) < mp.mpf(2) ** (-(precision_bits + 8)):
                    break
            residual = abs(horner(coeffs, z)) / abs_sum
            if residual < mp.mpf(2) ** (-(precision_bits // 2)) and abs(
                abs(z) - 1
            ) > threshold:
                raise RootsOffCircle(
                    f"certified root of modulus {mp.nstr(abs(z), 12)} != 1",
                    witness=z,
                )
    raise UnresolvedMultiplicity(
        "sign-change certificate failed but no off-circle witness was "
        "confirmed; raise the working precision to separate the roots"
    )


def _square_free_path(
    r: list[int], precision_bits: int
) -> list[tuple[mp.mpf, int]]:
    """Angle extraction for kernels with repeated roots.

    Splits r into exact square-free layers, certifies each layer separately,
    and reassembles (angle, multiplicity) pairs.
    """
    import sympy

    z = sympy.Symbol("z")
    poly = sympy.Poly(list(reversed(r)), z, domain="ZZ")
    _content, layers = poly.sqf_list()
    pairs: list[tuple[mp.mpf, int]] = []
    accounted = 0
    for layer_poly, mult in layers:
        fc = [int(v) for v in reversed(layer_poly.all_coeffs())]
        if fc[-1] < 0:
            fc = [-v for v in fc]
        deg = len(fc) - 1
        if deg == 0:
            continue
        if fc != fc[::-1]:
            raise RootsOffCircle(
                "a square-free layer of the polynomial is not palindromic, "
                "so it has a root off the unit circle "
                f"(layer degree {deg}, multiplicity {mult})",
                witness=tuple(fc),
            )
        angles = _certified_simple_angles(fc, precision_bits)
        if angles is None:
            _hunt_off_circle(fc, precision_bits)  # always raises
        pairs.extend((theta, mult) for theta in angles)
        accounted += mult * deg
    if accounted != len(r) - 1:
        raise UnresolvedMultiplicity(
            "square-free layers do not account for the full degree"
        )
    pairs.sort(key=lambda item: item[0])
    with mp.workprec(precision_bits + 32):
        sep_tol = mp.mpf(2) ** (-(precision_bits // 2))
        for (u, _), (v, _) in zip(pairs, pairs[1:]):
            if v - u < sep_tol:
                raise UnresolvedMultiplicity(
                    "angles from different square-free layers collide at the "
                    "working precision"
                )
    return pairs


# ---------------------------------------------------------------------------
# the public entry point
# ---------------------------------------------------------------------------

def unit_angles(
    source: ExactPoly | Iterable[RationalLike], precision_bits: int = 256
) -> AngleProfile:
    """Certify that a polynomial has all roots on the unit circle and return
    its angle profile; raise a diagnostic error otherwise.

    The profile carries the distinct pair angles in (0, pi) with their
    multiplicities, the multiplicity of z = -1, and a residual bound
    max_j |P(e^(i phi_j))| / sum_k |p_k| evaluated at the certified angles.
    """
    if precision_bits < 64:
        raise InvalidParams("precision_bits must be at least 64")
    poly = source if isinstance(source, ExactPoly) else from_coeffs(source)
    if poly.is_zero():
        raise ZeroPolynomial("the zero polynomial has no roots to certify")
    if poly.coeffs[0] == 0:
        raise RootsOffCircle(
            "polynomial is divisible by z, and 0 is not on the unit circle; "
            "strip the shift first (exactpoly.strip_shift)",
            witness=0,
        )
    ints = _integer_coeffs(poly)
    degree = len(ints) - 1
    if sum(ints) == 0:
        raise DegenerateAtOne(
            "polynomial vanishes at z = 1 and cannot carry a normalized mass",
            witness=1,
        )
    if degree == 0:
        return AngleProfile(
            angles=(),
            multiplicities=(),
            pi_multiplicity=0,
            zero_multiplicity=0,
            residual_bound=mp.mpf(0),
            precision_bits=precision_bits,
            degree=0,
        )
    if ints != ints[::-1]:
        k = next(i for i in range(degree + 1) if ints[i] != ints[degree - i])
        raise RootsOffCircle(
            "a real polynomial with every root on the unit circle and no "
            f"root at z = 1 must be palindromic; coefficients {k} and "
            f"{degree - k} differ",
            witness=(k, degree - k),
        )

    kernel = ints
    pi_mult = 0
    while sum(v if i % 2 == 0 else -v for i, v in enumerate(kernel)) == 0:
        kernel = _synthetic_div_minus_one(kernel)
        pi_mult += 1

    if (len(kernel) - 1) % 2:
        raise UnresolvedMultiplicity(
            "internal parity failure after deflating z = -1"
        )  # pragma: no cover - impossible for palindromic input

    if len(kernel) == 1:
        pairs: list[tuple[mp.mpf, int]] = []
    else:
        simple = _certified_simple_angles(kernel, precision_bits)
        if simple is not None:
            pairs = [(theta, 1) for theta in simple]
        else:
            pairs = _square_free_path(kernel, precision_bits)

    residual = _residual_bound(ints, [theta for theta, _ in pairs], precision_bits)
    profile = AngleProfile(
        angles=tuple(theta for theta, _ in pairs),
        multiplicities=tuple(m for _, m in pairs),
        pi_multiplicity=pi_mult,
        zero_multiplicity=0,
        residual_bound=residual,
        precision_bits=precision_bits,
        degree=degree,
    )
    if not profile.accounts_for_degree():
        raise UnresolvedMultiplicity(
            "certified roots do not account for the full degree"
        )  # pragma: no cover - guarded by construction

    # master self-test: for a genuine mass function the exact variance must
    # match the first inverse-cosine power sum at working accuracy
    if degree % 2 == 0 and all(c >= 0 for c in poly.coeffs):
        total = sum(poly.coeffs)
        dist = Distribution(tuple(c / total for c in poly.coeffs))
        var = dist.variance
        if var > 0:
            s1 = angle_power_sums(profile, 1)
            with mp.workprec(precision_bits + 32):
                var_mp = mp.mpf(var.numerator) / var.denominator
                tol = mp.mpf(2) ** (-(precision_bits // 2 - 16)) * max(
                    mp.mpf(1), var_mp
                )
                if abs(s1 - var_mp) > tol:
                    raise MismatchBeyondTolerance(
                        "angle power sum S_1 disagrees with the exact variance: "
                        f"{mp.nstr(s1, 25)} vs {mp.nstr(var_mp, 25)}"
                    )
    return profile


def _residual_bound(
    ints: Sequence[int], angles: Sequence[mp.mpf], precision_bits: int
) -> mp.mpf:
    """max_j |P(e^(i phi_j))| / sum |p_k| over the certified pair angles."""
    if not angles:
        return mp.mpf(0)
    prec_work = precision_bits + 32
    degree = len(ints) - 1
    abs_sum = sum(abs(v) for v in ints)
    worst = mp.mpf(0)
    if degree % 2 == 0:
        series = _CosSeries(_half_angle_coeffs(list(ints)), prec_work)
        for theta in angles:
            worst = max(worst, abs(series.value(theta)))
    else:
        with mp.workprec(prec_work):
            half = mp.mpf(degree) / 2
            for theta in angles:
                acc = mp.mpf(0)
                for k, v in enumerate(ints):
                    if v:
                        acc += v * mp.cos((k - half) * theta)
                worst = max(worst, abs(acc))
    with mp.workprec(prec_work):
        return worst / abs_sum


# ---------------------------------------------------------------------------
# angle-side quantities
# ---------------------------------------------------------------------------

def angle_power_sums(profile: AngleProfile, k: int) -> mp.mpf:
    """S_k = sum over conjugate pairs of (1 - cos phi)^(-k).

    Roots at z = -1 are grouped into pairs contributing exactly 2^(-k) each;
    an odd count there (odd total degree) leaves S_k undefined.
    """
    if k < 1:
        raise InvalidParams("power sum order must be a positive integer")
    if profile.pi_multiplicity % 2:
        raise OddDegree(
            "odd multiplicity at z = -1: inverse-cosine power sums need an "
            "even-degree polynomial"
        )
    with mp.workprec(profile.precision_bits + 32):
        total = mp.mpf(0)
        for theta, mult in zip(profile.angles, profile.multiplicities):
            total += mult / (1 - mp.cos(theta)) ** k
        total += (profile.pi_multiplicity // 2) * mp.mpf(2) ** (-k)
        return +total


def omega(profile: AngleProfile) -> mp.mpf:
    """The fourth-moment shape ratio S_2 / S_1^2 of the angle profile."""
    s1 = angle_power_sums(profile, 1)
    s2 = angle_power_sums(profile, 2)
    with mp.workprec(profile.precision_bits + 32):
        return s2 / s1**2


def angle_cumulants(profile: AngleProfile, max_order: int = 16) -> tuple:
    """Cumulants kappa_1..kappa_max_order recovered from the angle data.

    kappa_1 is half the degree, odd orders above 1 vanish, and even orders
    combine the inverse-cosine power sums with the expansion coefficients of
    even powers of 2*sinh(s/2).  Values are mpf at the profile's precision.
    """
    with mp.workprec(profile.precision_bits + 32):
        out = [mp.mpf(0)] * max_order
        if max_order >= 1:
            out[0] = mp.mpf(profile.degree) / 2
        svals = {}
        for order in range(2, max_order + 1, 2):
            m = order // 2
            acc = mp.mpf(0)
            for k in range(1, m + 1):
                if k not in svals:
                    svals[k] = angle_power_sums(profile, k)
                h_mk = sinh_power(m, k)
                term = (
                    mp.mpf(h_mk.numerator)
                    / h_mk.denominator
                    * svals[k]
                    / (k * mp.mpf(2) ** k)
                )
                acc += term if (k - 1) % 2 == 0 else -term
            fact = 1
            for i in range(2, order + 1):
                fact *= i
            out[order - 1] = fact * acc
        return tuple(out)


def jump_function(profile: AngleProfile, top_k: Optional[int] = None) -> JumpFunction:
    """Per-pair spectral masses 1/(sigma^2 (1 - cos phi)), largest first.

    sigma^2 is recovered from the profile itself (it equals S_1), so the
    masses always sum to 1 up to rounding.
    """
    s1 = angle_power_sums(profile, 1)
    entries: list[tuple] = []
    with mp.workprec(profile.precision_bits + 32):
        for theta, mult in zip(profile.angles, profile.multiplicities):
            mass = 1 / ((1 - mp.cos(theta)) * s1)
            entries.extend([(mass, +theta)] * mult)
        if profile.pi_multiplicity:
            mass = 1 / (2 * s1)
            entries.extend([(mass, +mp.pi)] * (profile.pi_multiplicity // 2))
        entries.sort(key=lambda e: -e[0])
        if top_k is not None:
            entries = entries[: max(0, top_k)]
        total = mp.fsum(e[0] for e in entries)
    return JumpFunction(
        masses=tuple(e[0] for e in entries),
        angles=tuple(e[1] for e in entries),
        sigma_sq=s1,
        total_mass=total,
    )


@dataclass(frozen=True)
class FourthIdentityReport:
    """Both routes to the fourth-moment quantities, with residuals."""

    m4_exact: Fraction
    m4_from_angles: object
    kappa4_exact: Fraction
    kappa4_from_angles: object
    m4_residual: object
    kappa4_residual: object
    tolerance: object


def fourth_identity_check(
    dist: Distribution,
    profile: AngleProfile,
    tolerance: Optional[float] = None,
) -> FourthIdentityReport:
    """Cross-validate moment arithmetic against root geometry.

    Checks m4 = 3 + 1/sigma^2 - 3*S_2/S_1^2 and kappa_4 = S_1 - 3*S_2, where
    the left sides are exact rationals from the mass function and the right
    sides come from the certified angles.  Raises MismatchBeyondTolerance
    when either residual exceeds the tolerance (default 2^-(bits/4)).
    """
    m4 = normalized_fourth(dist)
    mu2 = central_moment(dist, 2)
    mu4 = central_moment(dist, 4)
    kappa4 = mu4 - 3 * mu2**2
    s1 = angle_power_sums(profile, 1)
    s2 = angle_power_sums(profile, 2)
    with mp.workprec(profile.precision_bits + 32):
        if tolerance is None:
            tol = mp.mpf(2) ** (-(profile.precision_bits // 4))
        else:
            tol = mp.mpf(tolerance)
        m4_angle = 3 + 1 / s1 - 3 * s2 / s1**2
        k4_angle = s1 - 3 * s2
        m4_exact_mp = mp.mpf(m4.numerator) / m4.denominator
        k4_exact_mp = mp.mpf(kappa4.numerator) / kappa4.denominator
        res_m4 = abs(m4_exact_mp - m4_angle)
        res_k4 = abs(k4_exact_mp - k4_angle) / max(mp.mpf(1), abs(k4_exact_mp))
        report = FourthIdentityReport(
            m4_exact=m4,
            m4_from_angles=+m4_angle,
            kappa4_exact=kappa4,
            kappa4_from_angles=+k4_angle,
            m4_residual=+res_m4,
            kappa4_residual=+res_k4,
            tolerance=+tol,
        )
        if res_m4 > tol or res_k4 > tol:
            raise MismatchBeyondTolerance(
                f"fourth-moment identities failed: |m4 residual| = "
                f"{mp.nstr(res_m4, 10)}, |kappa4 residual| = "
                f"{mp.nstr(res_k4, 10)}, tolerance {mp.nstr(tol, 10)}"
            )
    return report
