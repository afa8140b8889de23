"""Rational number tables: Bernoulli, Stirling, Cauchy, Euler, and the
even powers of 2*sinh(s/2) expanded around 0.

All tables are generated from their defining recurrences, exactly.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import IndexOutOfRange

NumberTable = tuple[Fraction, ...]


@lru_cache(maxsize=None)
def bernoulli(max_index: int) -> NumberTable:
    """B_0 .. B_max_index with the B_1 = -1/2 convention.

    Defined by sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1.
    """
    if max_index < 0:
        raise IndexOutOfRange("bernoulli table needs max_index >= 0")
    table = [Fraction(1)]
    for m in range(1, max_index + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return tuple(table)


@lru_cache(maxsize=None)
def _stirling_second_rows(rows: int) -> tuple[tuple[int, ...], ...]:
    tri: list[tuple[int, ...]] = [(1,)]
    for m in range(1, rows + 1):
        prev = tri[-1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = k * (prev[k] if k <= m - 1 else 0) + prev[k - 1]
        tri.append(tuple(row))
    return tuple(tri)


@lru_cache(maxsize=None)
def _stirling_first_signless_rows(rows: int) -> tuple[tuple[int, ...], ...]:
    tri: list[tuple[int, ...]] = [(1,)]
    for m in range(1, rows + 1):
        prev = tri[-1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = (m - 1) * (prev[k] if k <= m - 1 else 0) + prev[k - 1]
        tri.append(tuple(row))
    return tuple(tri)


def stirling(kind: str, m: int, k: int) -> int:
    """Stirling numbers: partition counts ("second") or unsigned cycle
    counts ("first_signless").  Indices outside 0 <= k <= m are rejected.
    """
    if m < 0 or k < 0 or k > m:
        raise IndexOutOfRange(f"no Stirling number at (m={m}, k={k})")
    if kind == "second":
        return _stirling_second_rows(m)[m][k]
    if kind == "first_signless":
        return _stirling_first_signless_rows(m)[m][k]
    raise IndexOutOfRange(f"unknown Stirling kind: {kind!r}")


def stirling_first_signed(m: int, k: int) -> int:
    """Signed first-kind value: (-1)^(m-k) times the signless one."""
    value = stirling("first_signless", m, k)
    return -value if (m - k) % 2 else value


@lru_cache(maxsize=None)
def cauchy(max_index: int) -> NumberTable:
    """A_0 .. A_max_index, the coefficients of z / log(1 - z).

    A_0 = -1 and A_k = -sum_{j<k} A_j / (k + 1 - j).  Every entry after
    A_0 is strictly positive.
    """
    if max_index < 0:
        raise IndexOutOfRange("cauchy table needs max_index >= 0")
    table = [Fraction(-1)]
    for k in range(1, max_index + 1):
        acc = Fraction(0)
        for j in range(k):
            acc += table[j] / (k + 1 - j)
        table.append(-acc)
        assert table[k] > 0, f"positivity of coefficient {k} failed"
    return tuple(table)


@lru_cache(maxsize=None)
def euler(half_count: int) -> tuple[int, ...]:
    """Even-index Euler numbers E_0, E_2, ..., E_{2*half_count}.

    E_j = j! [z^j] sech z; the odd-index values are identically zero and are
    not stored.  E_0, E_2, E_4, E_6 = 1, -1, 5, -61.
    """
    if half_count < 0:
        raise IndexOutOfRange("euler table needs half_count >= 0")
    table = [0] * (2 * half_count + 1)
    table[0] = 1
    for m in range(2, 2 * half_count + 1, 2):
        acc = 0
        for j in range(0, m, 2):
            acc += comb(m, j) * table[j]
        table[m] = -acc
    return tuple(table[::2])


@lru_cache(maxsize=None)
def _sinh_square_power(max_m: int, k: int) -> NumberTable:
    """Coefficients of t^1..t^max_m in v(t)^k where v(t) = 2*sum t^i/(2i)!.

    With t = s^2, v(t) = (2*sinh(s/2))^2, so v^k expands (2*sinh(s/2))^(2k).
    Index [m-1] of the result is the coefficient of t^m.
    """
    fact = 2
    base = [Fraction(2, fact)]
    for i in range(2, max_m + 1):
        fact *= (2 * i - 1) * (2 * i)
        base.append(Fraction(2, fact))
    # base[i-1] multiplies t^i; raise to the k-th power, truncating at t^max_m
    power = [Fraction(1)] + [Fraction(0)] * max_m  # coefficients of t^0..t^max_m
    for _ in range(k):
        nxt = [Fraction(0)] * (max_m + 1)
        for i, c in enumerate(power):
            if c == 0:
                continue
            for j in range(1, max_m - i + 1):
                nxt[i + j] += c * base[j - 1]
        power = nxt
    return tuple(power[1:])


def sinh_power(m: int, k: int) -> Fraction:
    """h_{m,k}: the s^(2m) coefficient of (2*sinh(s/2))^(2k), for 1<=k<=m."""
    if not 1 <= k <= m:
        raise IndexOutOfRange(f"sinh_power needs 1 <= k <= m, got m={m}, k={k}")
    return _sinh_square_power(m, k)[m - 1]
