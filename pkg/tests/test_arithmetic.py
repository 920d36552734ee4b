from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapbal.arithmetic import Rational, count_divisors, format_rational, is_perfect_square, isqrt, triangular
from gapbal.errors import DomainError
from oracles import divisors_brute


@pytest.mark.parametrize("n, root", [(729, 27), (0, 0), (170, 13), (1, 1), (10**40 + 1, 10**20)])
def test_isqrt_values(n, root):
    assert isqrt(n) == root


def test_isqrt_rejects_negative():
    with pytest.raises(DomainError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**60))
def test_isqrt_brackets(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) ** 2


def test_perfect_square():
    assert is_perfect_square(169) == (True, 13)
    assert is_perfect_square(161) == (False, None)
    assert is_perfect_square(-4) == (False, None)
    # balancing radicand for k = 9, B = 20
    assert is_perfect_square(8 * 20**2 + 8 * (1 - 9) * 20 + 17**2) == (True, 47)


@given(st.integers(min_value=-(10**30), max_value=10**30))
def test_perfect_square_agrees_with_isqrt(n):
    ok, root = is_perfect_square(n)
    assert ok == (n >= 0 and isqrt(n) ** 2 == n)
    if ok:
        assert root >= 0 and root * root == n


@pytest.mark.parametrize("n, expected", [(1, 1), (161, 4), (49, 3), (3871, 6)])
def test_count_divisors_values(n, expected):
    assert count_divisors(n) == expected
    assert len(divisors_brute(n)) == expected


def test_count_divisors_matches_brute_force_up_to_10_6():
    # sieve-style brute force: d(n) for every n <= 10^6
    N = 10**6
    counts = [0] * (N + 1)
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            counts[m] += 1
    assert all(count_divisors(n) == counts[n] for n in range(1, N + 1))


def test_count_divisors_domain():
    with pytest.raises(DomainError):
        count_divisors(0)


def test_triangular():
    assert triangular(0) == 0
    assert triangular(20) == 210
    assert triangular(11) + triangular(20) == triangular(23) == 276
    with pytest.raises(DomainError):
        triangular(-1)


@given(st.integers(), st.integers().filter(lambda d: d != 0))
def test_rational_normalized(p, q):
    x = Rational(p, q)
    assert x.denominator > 0
    from math import gcd

    assert gcd(abs(x.numerator), x.denominator) == 1
    if p == 0:
        assert (x.numerator, x.denominator) == (0, 1)


def test_format_rational():
    assert format_rational(Fraction(54, 46)) == "27/23"
    assert format_rational(Fraction(-16, 23)) == "-16/23"
    assert format_rational(Fraction(4, 2)) == "2"
