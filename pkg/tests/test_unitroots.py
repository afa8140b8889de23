from fractions import Fraction

import mpmath as mp
import pytest

from unimoment.errors import (
    DegenerateAtOne,
    MismatchBeyondTolerance,
    OddDegree,
    RootsOffCircle,
)
from unimoment.exactpoly import FactoredSpec, from_coeffs, strip_shift
from unimoment.families import (
    gen_chung_feller,
    gen_euler_cosh,
    gen_gaussian,
    gen_inversions,
    gen_reimer,
    gen_turan_fejer,
)
from unimoment.moments import cumulants_factored, make_distribution
from unimoment.unitroots import (
    angle_cumulants,
    angle_power_sums,
    fourth_identity_check,
    jump_function,
    omega,
    self_inversive_check,
    unit_angles,
)

F = Fraction


def tol(bits):
    return mp.mpf(2) ** (-bits)


def close(a, b, bits):
    # mixing mpf with Fraction outside a workprec block silently rounds the
    # Fraction at the ambient 53-bit context; compare at high precision
    with mp.workprec(360):
        return abs(mp.mpmathify(a) - mp.mpmathify(b)) < tol(bits)


class TestSelfInversive:
    def test_palindromic_true(self):
        assert self_inversive_check([1, 2, 2, 1])

    def test_palindromic_false(self):
        assert not self_inversive_check([1, 2, 0, 1])

    @pytest.mark.parametrize(
        "out",
        [
            gen_inversions(5),
            gen_turan_fejer(7, 3),
            gen_reimer(5),
            gen_chung_feller(6),
            gen_euler_cosh(4),
            gen_gaussian(3, 4),
        ],
        ids=lambda o: o.family,
    )
    def test_family_outputs_are_palindromic(self, out):
        assert self_inversive_check(out.poly)


class TestUnitAngles:
    def test_one_plus_z(self):
        profile = unit_angles([1, 1])
        assert profile.angles == ()
        assert profile.pi_multiplicity == 1
        assert profile.degree == 1

    def test_primitive_cube_roots(self):
        profile = unit_angles([1, 1, 1])
        assert len(profile.angles) == 1
        with mp.workprec(280):
            assert abs(profile.angles[0] - 2 * mp.pi / 3) < tol(250)

    def test_inversions_n4_angles_and_residual(self):
        # roots of (1+z)(1+z+z^2)(1+z+z^2+z^3): angles pi/2, 2pi/3,
        # and z=-1 twice
        profile = unit_angles([1, 3, 5, 6, 5, 3, 1], 256)
        assert profile.pi_multiplicity == 2
        assert profile.multiplicities == (1, 1)
        with mp.workprec(300):
            assert abs(profile.angles[0] - mp.pi / 2) < tol(100)
            assert abs(profile.angles[1] - 2 * mp.pi / 3) < tol(100)
        assert profile.residual_bound < tol(100)

    def test_repeated_pair(self):
        profile = unit_angles([1, 0, 2, 0, 1])  # (1+z^2)^2
        assert profile.multiplicities == (2,)
        with mp.workprec(280):
            assert abs(profile.angles[0] - mp.pi / 2) < tol(200)

    def test_mixed_repeats_with_pi(self):
        # (1+z)^2 (1+z+z^2)
        p = from_coeffs([1, 1]) * from_coeffs([1, 1]) * from_coeffs([1, 1, 1])
        profile = unit_angles(p)
        assert profile.pi_multiplicity == 2
        assert profile.multiplicities == (1,)

    def test_degree_accounting(self):
        for coeffs in ([1, 3, 5, 6, 5, 3, 1], [1, 0, 2, 0, 1], [1, 1, 1, 1]):
            profile = unit_angles(coeffs)
            total = 2 * sum(profile.multiplicities) + profile.pi_multiplicity
            assert total == profile.degree

    def test_off_circle_rejected(self):
        with pytest.raises(RootsOffCircle) as info:
            unit_angles([1, 3, 1])
        assert "2.618" in str(info.value)

    def test_non_palindromic_rejected(self):
        with pytest.raises(RootsOffCircle):
            unit_angles([2, 1, 1])

    def test_vanishing_at_one_rejected(self):
        with pytest.raises(DegenerateAtOne):
            unit_angles([1, 0, -1])

    def test_shifted_polynomial_needs_stripping(self):
        with pytest.raises(RootsOffCircle):
            unit_angles([0, 1, 1])
        shift, core = strip_shift(from_coeffs([0, 1, 1]))
        assert shift == 1
        assert unit_angles(core).pi_multiplicity == 1


class TestAnglePowerSums:
    def test_quarter_turn(self):
        profile = unit_angles([1, 0, 1])
        assert abs(angle_power_sums(profile, 1) - 1) < tol(200)

    def test_uniform_three_points(self):
        profile = unit_angles([1, 1, 1])
        # sigma^2 of the uniform distribution on {0,1,2} is 2/3
        assert close(angle_power_sums(profile, 1), F(2, 3), 200)

    def test_inversions_n4(self):
        # variance of the n=4 inversion statistic is (3 + 8 + 15)/12
        profile = unit_angles([1, 3, 5, 6, 5, 3, 1], 256)
        s1 = angle_power_sums(profile, 1)
        assert close(s1, F(13, 6), 90)

    def test_odd_degree_rejected(self):
        with pytest.raises(OddDegree):
            angle_power_sums(unit_angles([1, 2, 2, 1]), 1)


class TestOmega:
    def test_single_pair(self):
        profile = unit_angles([1, 0, 1])
        assert abs(omega(profile) - 1) < tol(200)

    def test_inversions_trend(self):
        # even-degree members: C(12,2)=66, C(20,2)=190
        w12 = omega(unit_angles(gen_inversions(12).poly, 192))
        w20 = omega(unit_angles(gen_inversions(20).poly, 192))
        assert w20 < w12

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_two_point_dual_route(self, n):
        # angles of 1 + z^(2n) are the odd multiples (2k-1)pi/(2n); compare
        # the engine value against a direct sum over those exact angles
        coeffs = [1] + [0] * (2 * n - 1) + [1]
        profile = unit_angles(coeffs, 192)
        w = omega(profile)
        with mp.workprec(260):
            s1 = mp.fsum(
                1 / (1 - mp.cos((2 * k - 1) * mp.pi / (2 * n)))
                for k in range(1, n + 1)
            )
            s2 = mp.fsum(
                (1 - mp.cos((2 * k - 1) * mp.pi / (2 * n))) ** -2
                for k in range(1, n + 1)
            )
            assert abs(s1 - n * n) < tol(150)  # sigma^2 of the two-point law
            assert abs(w - s2 / s1**2) < tol(150)
        if n == 1:
            assert abs(w - 1) < tol(150)


class TestFourthIdentity:
    def test_uniform_three_points(self):
        d = make_distribution([1, 1, 1])
        profile = unit_angles([1, 1, 1])
        report = fourth_identity_check(d, profile)
        assert report.m4_exact == F(3, 2)
        assert report.m4_residual < report.tolerance
        assert report.kappa4_residual < report.tolerance

    def test_two_point_both_sides_one(self):
        d = make_distribution([1, 0, 0, 0, 1])
        profile = unit_angles([1, 0, 0, 0, 1])
        report = fourth_identity_check(d, profile)
        assert report.m4_exact == 1
        assert abs(report.m4_from_angles - 1) < tol(150)

    def test_gaussian_3_by_4(self):
        # 3x4 keeps the degree (nm = 12) even, as the check requires
        out = gen_gaussian(3, 4)
        d = make_distribution(out.poly)
        profile = unit_angles(out.poly, 256)
        report = fourth_identity_check(d, profile)
        assert report.m4_residual < tol(80)

    def test_mismatch_raises(self):
        d = make_distribution([1, 1, 1])
        profile = unit_angles([1, 0, 1])  # wrong polynomial on purpose
        with pytest.raises(MismatchBeyondTolerance):
            fourth_identity_check(d, profile)


class TestJumpFunction:
    def test_single_pair_all_mass(self):
        jumps = jump_function(unit_angles([1, 0, 1]))
        assert len(jumps.masses) == 1
        assert abs(jumps.masses[0] - 1) < tol(150)
        assert abs(jumps.total_mass - 1) < tol(150)

    def test_uniform_top_mass(self):
        # degree-200 uniform: largest jump approaches 6/pi^2
        jumps = jump_function(unit_angles([1] * 201, 128))
        target = 6 / mp.pi**2
        assert abs(jumps.masses[0] - target) / target < 0.01

    def test_two_point_masses_match_reciprocal_squares(self):
        n = 200
        coeffs = [1] + [0] * (2 * n - 1) + [1]
        jumps = jump_function(unit_angles(coeffs, 128), top_k=3)
        with mp.workprec(160):
            for k, mass in enumerate(jumps.masses, start=1):
                target = 8 / (mp.pi**2 * (2 * k - 1) ** 2)
                assert abs(mass - target) / target < 0.01

    def test_masses_sum_to_one(self):
        for coeffs in ([1, 2, 2, 2, 1], [1] * 7, [1, 3, 5, 6, 5, 3, 1]):
            jumps = jump_function(unit_angles(coeffs))
            assert abs(jumps.total_mass - 1) < tol(150)


class TestAngleCumulants:
    def test_uniform_kappa2(self):
        kappas = angle_cumulants(unit_angles([1, 1, 1]), 2)
        assert close(kappas[1], F(2, 3), 150)

    def test_kappa2_is_s1(self):
        profile = unit_angles([1, 2, 3, 2, 1])  # (1 + z + z^2)^2
        kappas = angle_cumulants(profile, 2)
        assert abs(kappas[1] - angle_power_sums(profile, 1)) == 0

    def test_inversions_n4_dual_route(self):
        out = gen_inversions(4)
        profile = unit_angles(out.poly, 256)
        kappas = angle_cumulants(profile, 8)
        exact = cumulants_factored(out.factored, 8)
        for order in (2, 4, 6, 8):
            assert close(kappas[order - 1], exact.kappa(order), 80)


class TestElementaryInequalities:
    @pytest.mark.parametrize(
        "coeffs",
        [
            [1, 1, 1],
            [1, 3, 5, 6, 5, 3, 1],
            [1, 2, 2, 2, 1],
            [1] * 21,
        ],
    )
    def test_angle_sandwich(self, coeffs):
        # 2 <= S_1 / sum(phi^-2) <= pi^2 / 2, pairing z=-1 roots at phi=pi
        profile = unit_angles(coeffs)
        with mp.workprec(260):
            s1 = angle_power_sums(profile, 1)
            inv_sq = mp.fsum(
                m / theta**2
                for theta, m in zip(profile.angles, profile.multiplicities)
            ) + (profile.pi_multiplicity // 2) / mp.pi**2
            ratio = s1 / inv_sq
            assert 2 <= ratio <= mp.pi**2 / 2

    @pytest.mark.parametrize(
        "coeffs", [[1, 1, 1], [1, 3, 5, 6, 5, 3, 1], [1] * 11]
    )
    def test_max_term_bound(self, coeffs):
        # max 1/(1-cos phi) <= sigma^2 sqrt(omega)
        profile = unit_angles(coeffs)
        with mp.workprec(260):
            terms = [
                1 / (1 - mp.cos(theta)) for theta in profile.angles
            ] + ([mp.mpf(1) / 2] if profile.pi_multiplicity else [])
            s1 = angle_power_sums(profile, 1)
            assert max(terms) <= s1 * mp.sqrt(omega(profile)) * (1 + tol(100))


class TestMasterSelfTest:
    @pytest.mark.parametrize(
        "out",
        [
            gen_inversions(4),
            gen_turan_fejer(9, 3),
            gen_chung_feller(6),
            gen_euler_cosh(4),
            gen_reimer(6),
        ],
        ids=lambda o: o.family,
    )
    def test_angle_s1_matches_exact_variance(self, out):
        d = make_distribution(out.poly)
        assert d.span % 2 == 0
        profile = unit_angles(out.poly, 256)
        s1 = angle_power_sums(profile, 1)
        assert close(s1, d.variance, 100)
