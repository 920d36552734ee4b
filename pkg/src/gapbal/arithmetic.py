"""Exact integer and rational helpers.

Everything here works on Python ints and :class:`fractions.Fraction`;
nothing is ever rounded.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

# Reduced on construction, positive denominator, 0 is 0/1.
Rational = Fraction


def isqrt(n: int) -> int:
    """Return floor(sqrt(n)) for n >= 0."""
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_perfect_square(n: int) -> tuple[bool, int | None]:
    """Return ``(True, root)`` if n is a perfect square, else ``(False, None)``."""
    if n < 0:
        return False, None
    r = math.isqrt(n)
    if r * r == n:
        return True, r
    return False, None


def count_divisors(n: int) -> int:
    """Number of positive divisors of n, by trial division."""
    if n < 1:
        raise DomainError(f"count_divisors needs n >= 1, got {n}")
    count = 1
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    count *= e + 1
    d = 3
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            count *= e + 1
        d += 2
    if n > 1:
        count *= 2
    return count


def triangular(i: int) -> int:
    if i < 0:
        raise DomainError(f"triangular index must be >= 0, got {i}")
    return i * (i + 1) // 2


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
