from fractions import Fraction
from math import comb

import pytest

from unimoment.errors import IndexOutOfRange
from unimoment.specfun import (
    bernoulli,
    cauchy,
    euler,
    sinh_power,
    stirling,
    stirling_first_signed,
)

F = Fraction


def test_bernoulli_small_table():
    assert bernoulli(4) == (F(1), F(-1, 2), F(1, 6), F(0), F(-1, 30))


def test_bernoulli_vanishing_odd_indices():
    table = bernoulli(31)
    assert table[3] == 0
    assert all(table[m] == 0 for m in range(3, 32, 2))


def test_bernoulli_defining_recurrence():
    # sum_{j<=m} C(m+1, j) B_j = 0 for every m >= 1
    table = bernoulli(30)
    for m in range(1, 31):
        assert sum(comb(m + 1, j) * table[j] for j in range(m + 1)) == 0


def test_stirling_second_by_partition_count():
    # partitions of {1,2,3} into 2 blocks: {1}{23}, {2}{13}, {3}{12}
    assert stirling("second", 3, 2) == 3


def test_stirling_first_by_cycle_count():
    # permutations of 3 symbols with a single cycle: (123), (132)
    assert stirling("first_signless", 3, 1) == 2


@pytest.mark.parametrize("m", range(9))
def test_stirling_diagonal(m):
    assert stirling("second", m, m) == 1
    assert stirling("first_signless", m, m) == 1


def test_stirling_out_of_range():
    with pytest.raises(IndexOutOfRange):
        stirling("second", 3, 4)


def test_stirling_triangles_mutually_inverse():
    # the second-kind and signed-first-kind matrices invert each other
    for m in range(21):
        for k in range(m + 1):
            total = sum(
                stirling("second", m, ell) * stirling_first_signed(ell, k)
                for ell in range(k, m + 1)
            )
            assert total == (1 if m == k else 0)


def test_cauchy_values():
    table = cauchy(3)
    assert table == (F(-1), F(1, 2), F(1, 12), F(1, 24))


def test_cauchy_positive_after_zero():
    table = cauchy(50)
    assert table[0] == -1
    assert all(a > 0 for a in table[1:])


def test_cauchy_recurrence():
    table = cauchy(20)
    for k in range(1, 21):
        assert table[k] == -sum(
            table[j] / (k + 1 - j) for j in range(k)
        )


def test_euler_even_values():
    assert euler(3) == (1, -1, 5, -61)


def test_euler_signs_alternate():
    table = euler(10)
    for j, value in enumerate(table):
        assert value != 0
        assert (value > 0) == (j % 2 == 0)


def test_sinh_power_examples():
    assert sinh_power(1, 1) == 1
    assert sinh_power(2, 1) == F(1, 12)
    assert sinh_power(3, 1) == F(1, 360)
    assert sinh_power(2, 2) == 1
    assert sinh_power(3, 2) == F(1, 6)


def test_sinh_power_diagonal_is_one():
    for k in range(1, 7):
        assert sinh_power(k, k) == 1


def test_sinh_power_out_of_range():
    with pytest.raises(IndexOutOfRange):
        sinh_power(1, 2)


def test_cumulant_weights_reduce_to_power_sum_combinations():
    """The weight (2m)! (-1)^(k-1)/(k 2^k) h_{m,k} attached to S_k must
    reproduce the classical low-order combinations: kappa_2 = S_1,
    kappa_4 = S_1 - 3 S_2, kappa_6 = S_1 - 15 S_2 + 30 S_3."""
    from math import factorial

    def weight(m, k):
        return (
            factorial(2 * m)
            * F((-1) ** (k - 1), k * 2**k)
            * sinh_power(m, k)
        )

    assert [weight(1, 1)] == [1]
    assert [weight(2, k) for k in (1, 2)] == [1, -3]
    assert [weight(3, k) for k in (1, 2, 3)] == [1, -15, 30]
