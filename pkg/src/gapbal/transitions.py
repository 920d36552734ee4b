"""Affine maps carrying the i-th term of one class to the i-th term of another.

A transition acts on a pair ``(x, y)`` as::

    (x, y) -> (a*x + b*y + c,  8b*x + a*y + d)

with ``d = (4 - 4k) b`` for balancing pairs and ``d = 4k b`` for balancer
pairs.  The coefficients come from closed forms in the initial terms of the
two classes and are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .arithmetic import format_rational
from .classes import BalancerClass, BalancingClass, classes_for, conjugate_class, tandem_balancer_class
from .core import BalancerPair, BalancingPair, _ctx
from .errors import DomainError, InvariantError

Kind = Literal["balancing", "balancer"]


class _NonIntegral:
    """Marker for a transition image that is not an integer pair."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NON_INTEGRAL"

    def __str__(self):
        return "*"

    def __bool__(self):
        return False


NON_INTEGRAL = _NonIntegral()


@dataclass(frozen=True)
class TransitionMap:
    a: Fraction
    b: Fraction
    c: Fraction
    kind: Kind
    k: int
    source_index: int | None = None
    target_index: int | None = None
    target_shift: int = 0

    @property
    def offset(self) -> Fraction:
        """Constant term of the second component."""
        if self.kind == "balancing":
            return (4 - 4 * self.k) * self.b
        return 4 * self.k * self.b

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c

    def apply(self, x: int, y: int) -> tuple[Fraction, Fraction]:
        """Exact rational image of ``(x, y)``."""
        return (
            self.a * x + self.b * y + self.c,
            8 * self.b * x + self.a * y + self.offset,
        )

    def evaluate(self, point) -> tuple[int, int] | _NonIntegral:
        """Integer image of a pair, or :data:`NON_INTEGRAL`."""
        x, y = _xy(point)
        u, v = self.apply(x, y)
        if u.denominator != 1 or v.denominator != 1:
            return NON_INTEGRAL
        return int(u), int(v)

    def first(self, point) -> int | _NonIntegral:
        """Only the first component (the t / T rows of a table)."""
        x, y = _xy(point)
        u = self.a * x + self.b * y + self.c
        return int(u) if u.denominator == 1 else NON_INTEGRAL

    def formulas(self) -> tuple[str, str]:
        """Both components as ``(p x + q y + s)/den`` strings over a common denominator."""
        return (
            _affine_string(self.a, self.b, self.c),
            _affine_string(8 * self.b, self.a, self.offset),
        )


def _xy(point) -> tuple[int, int]:
    if isinstance(point, BalancingPair):
        return point.B, point.C
    if isinstance(point, BalancerPair):
        return point.r, point.r_hat
    x, y = point
    return x, y


def _affine_string(p: Fraction, q: Fraction, s: Fraction) -> str:
    den = math.lcm(p.denominator, q.denominator, s.denominator)
    terms = []
    for coef, sym in ((p * den, "x"), (q * den, "y"), (s * den, "")):
        n = int(coef)
        if n == 0:
            continue
        sign = "-" if n < 0 else "+"
        mag = abs(n)
        body = f"{mag}{sym}" if (mag != 1 or not sym) else sym
        terms.append((sign, body))
    if not terms:
        text = "0"
    else:
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f"{sign}{body}"
    if den == 1:
        return text
    return f"({text})/{den}"


def balancing_coefficients(k: int, B0: int, C0: int, B1: int, C1: int) -> tuple[Fraction, Fraction, Fraction]:
    """Closed-form (a, b, c) taking the class through (B0, C0) to the one through (B1, C1)."""
    N = 2 * k * k - 1
    a = Fraction(
        -(8 * B0 * B1 + 4 * (1 - k) * (B0 + B1) + (2 * k - 1) ** 2 - C0 * C1 - 2 * k * k + 1), N
    )
    b = Fraction(2 * (C0 * B1 - B0 * C1) + (1 - k) * (C0 - C1), 2 * N)
    c = Fraction(
        (1 - k) * (8 * B0 * (B0 - B1) + 4 * (1 - k) * (B0 - B1) - C0 * (C0 - C1)), 2 * N
    )
    return a, b, c


def balancer_coefficients(k: int, r0: int, h0: int, r1: int, h1: int) -> tuple[Fraction, Fraction, Fraction]:
    """Closed-form (a, b, c) for balancer classes through (r0, h0) and (r1, h1)."""
    N = 2 * k * k - 1
    a = Fraction(8 * r0 * r1 + 4 * k * (r0 + r1) + 2 * k * k - h0 * h1, N)
    b = Fraction(2 * (r0 * h1 - h0 * r1) + k * (h1 - h0), 2 * N)
    c = Fraction(k * (8 * r0 * (r1 - r0) + 4 * k * (r1 - r0) + h0 * (h0 - h1)), 2 * N)
    return a, b, c


_VERIFY_TERMS = 3


def derive_transition(src: BalancingClass, dst: BalancingClass, dst_shift: int = 0) -> TransitionMap:
    """Map taking ``src[i]`` to ``dst[i + dst_shift]`` for every i >= 0."""
    if src.context != dst.context:
        raise DomainError("transition between classes of different gap size")
    k = src.k
    if src is dst and dst_shift == 0:
        a, b, c = Fraction(1), Fraction(0), Fraction(0)
    else:
        p, q = src.term(0), dst.term(dst_shift)
        a, b, c = balancing_coefficients(k, p.B, p.C, q.B, q.C)
    t = TransitionMap(a, b, c, "balancing", k, src.class_index, dst.class_index, dst_shift)
    for i in range(_VERIFY_TERMS):
        if t.evaluate(src.term(i)) != dst.term(i + dst_shift).as_tuple():
            raise InvariantError(f"balancing transition fails at i={i}")
    return t


def derive_balancer_transition(src: BalancerClass, dst: BalancerClass, dst_shift: int = 0) -> TransitionMap:
    if src.context != dst.context:
        raise DomainError("transition between classes of different gap size")
    k = src.context.k
    if src.source is dst.source and dst_shift == 0:
        a, b, c = Fraction(1), Fraction(0), Fraction(0)
    else:
        p, q = src.term(0), dst.term(dst_shift)
        a, b, c = balancer_coefficients(k, p.r, p.r_hat, q.r, q.r_hat)
    t = TransitionMap(a, b, c, "balancer", k, src.class_index, dst.class_index, dst_shift)
    for i in range(_VERIFY_TERMS):
        if t.evaluate(src.term(i)) != dst.term(i + dst_shift).as_tuple():
            raise InvariantError(f"balancer transition fails at i={i}")
    return t


def evaluate(tmap: TransitionMap, point) -> tuple[int, int] | _NonIntegral:
    return tmap.evaluate(point)


def sorting_transitions(ctx) -> list[TransitionMap]:
    """The chain class_0 -> class_1 -> ... -> class_{n-1} -> class_0 (shifted by one).

    Applied in turn these walk the balancing numbers in ascending order.
    """
    classes = classes_for(_ctx(ctx))
    n = len(classes)
    out = []
    for j, cls in enumerate(classes):
        if j + 1 < n:
            out.append(derive_transition(cls, classes[j + 1]))
        else:
            out.append(derive_transition(cls, classes[0], dst_shift=1))
    return out


def sorting_balancer_transitions(ctx) -> list[TransitionMap]:
    classes = classes_for(_ctx(ctx))
    tandem = [tandem_balancer_class(c) for c in classes]
    n = len(tandem)
    out = []
    for j, cls in enumerate(tandem):
        if j + 1 < n:
            out.append(derive_balancer_transition(cls, tandem[j + 1]))
        else:
            out.append(derive_balancer_transition(cls, tandem[0], dst_shift=1))
    return out


@dataclass(frozen=True)
class SymmetryCheck:
    kind: Kind
    source: int
    target: int
    conjugate_source: int
    conjugate_target: int
    coefficients: tuple[Fraction, Fraction, Fraction]
    conjugate_coefficients: tuple[Fraction, Fraction, Fraction]

    @property
    def holds(self) -> bool:
        return self.coefficients == self.conjugate_coefficients


def check_conjugate_symmetry(ctx) -> list[SymmetryCheck]:
    """Compare P -> Q with conj(Q) -> conj(P) for every ordered class pair.

    Returns one record per comparison; callers inspect ``holds``.
    """
    classes = classes_for(_ctx(ctx))
    tandem = {c.class_index: tandem_balancer_class(c) for c in classes}
    out = []
    for P in classes:
        for Q in classes:
            cP, cQ = conjugate_class(P, classes), conjugate_class(Q, classes)
            t = derive_transition(P, Q)
            tc = derive_transition(cQ, cP)
            out.append(SymmetryCheck("balancing", P.class_index, Q.class_index,
                                     cQ.class_index, cP.class_index, t.coefficients, tc.coefficients))
            T = derive_balancer_transition(tandem[P.class_index], tandem[Q.class_index])
            Tc = derive_balancer_transition(tandem[cQ.class_index], tandem[cP.class_index])
            out.append(SymmetryCheck("balancer", P.class_index, Q.class_index,
                                     cQ.class_index, cP.class_index, T.coefficients, Tc.coefficients))
    return out


def describe(tmap: TransitionMap) -> dict:
    first, second = tmap.formulas()
    return {
        "kind": tmap.kind,
        "a": format_rational(tmap.a),
        "b": format_rational(tmap.b),
        "c": format_rational(tmap.c),
        "offset": format_rational(tmap.offset),
        "first": first,
        "second": second,
    }
