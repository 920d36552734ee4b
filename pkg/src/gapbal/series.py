"""Rational generating functions with integer coefficients.

Polynomials are tuples of ints, lowest degree first, with trailing zeros
stripped (the zero polynomial is ``()``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest

from .classes import BalancingClass, classes_for
from .core import _ctx
from .errors import UnsupportedInputError

Poly = tuple[int, ...]


def poly(*coeffs: int) -> Poly:
    return _trim(coeffs)


def _trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(p: Poly, q: Poly) -> Poly:
    return _trim(a + b for a, b in zip_longest(p, q, fillvalue=0))


def poly_sub(p: Poly, q: Poly) -> Poly:
    return _trim(a - b for a, b in zip_longest(p, q, fillvalue=0))


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_shift(p: Poly, n: int) -> Poly:
    """Multiply by s^n."""
    return _trim((0,) * n + p) if p else ()


def poly_inflate(p: Poly, n: int) -> Poly:
    """Substitute s -> s^n."""
    if not p:
        return ()
    out = [0] * ((len(p) - 1) * n + 1)
    for i, a in enumerate(p):
        out[i * n] = a
    return _trim(out)


def poly_str(p: Poly, var: str = "s") -> str:
    if not p:
        return "0"
    parts = []
    for deg in range(len(p) - 1, -1, -1):
        c = p[deg]
        if c == 0:
            continue
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        elif deg == 1:
            body = var if mag == 1 else f"{mag}{var}"
        else:
            body = f"{var}^{deg}" if mag == 1 else f"{mag}{var}^{deg}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


@dataclass(frozen=True)
class RationalFunction:
    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise UnsupportedInputError("denominator must have a nonzero constant term")

    def same_function(self, other: RationalFunction) -> bool:
        """Equality as functions: ``N1 * D2 == N2 * D1``."""
        return poly_mul(self.numerator, other.denominator) == poly_mul(other.numerator, self.denominator)

    def __str__(self):
        return f"({poly_str(self.numerator)}) / ({poly_str(self.denominator)})"


# (1 - s)(1 - 6s + s^2)
CLASS_DENOMINATOR: Poly = poly_mul((1, -1), (1, -6, 1))


def class_genfun(cls: BalancingClass) -> RationalFunction:
    """Generating function sum_i B_i s^i of one class."""
    B0, B1 = cls.term(0).B, cls.term(1).B
    k = cls.k
    num = poly(B0, B1 - 7 * B0, 2 - 2 * k - B1 + 6 * B0)
    return RationalFunction(num, CLASS_DENOMINATOR)


def interleaved_genfun(ctx) -> RationalFunction:
    """Generating function of all balancing numbers for k, in ascending order.

    Built as ``sum_{j=1}^{n} s^{j-1} G_j(s^n)`` over the classes sorted by
    initial term; all class functions share a denominator, so the sum keeps
    ``D(s^n)`` as its denominator.
    """
    classes = classes_for(_ctx(ctx))
    n = len(classes)
    num: Poly = ()
    for j, cls in enumerate(classes):
        g = class_genfun(cls)
        num = poly_add(num, poly_shift(poly_inflate(g.numerator, n), j))
    return RationalFunction(num, poly_inflate(CLASS_DENOMINATOR, n))


def expand(rf: RationalFunction, n: int) -> list[int]:
    """First n power-series coefficients of ``rf``, exactly."""
    d0 = rf.denominator[0]
    if d0 not in (1, -1):
        raise UnsupportedInputError(f"denominator constant term {d0} is not a unit")
    num, den = rf.numerator, rf.denominator
    out: list[int] = []
    for i in range(n):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc * d0)  # d0 is its own inverse
    return out
