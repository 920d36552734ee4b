"""Gap contexts, balancing and balancer pairs, and conversions between them.

A balancing pair ``(B, C)`` solves ``C^2 = 8B^2 + 8(1-k)B + (2k-1)^2`` and a
balancer pair ``(r, rhat)`` solves ``rhat^2 = 8r^2 + 8kr + 1``.  Both types
check their defining equation on construction, so any instance in hand is a
genuine solution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arithmetic import is_perfect_square, triangular
from .errors import DomainError, InvariantError


@dataclass(frozen=True)
class GapContext:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise DomainError(f"gap size must be >= 0, got {self.k}")

    @property
    def odd_square(self) -> int:
        return (2 * self.k - 1) ** 2

    @property
    def pell_constant(self) -> int:
        """2k^2 - 1 (equal to -1 when k = 0)."""
        return 2 * self.k * self.k - 1

    def balancing_radicand(self, x: int) -> int:
        return 8 * x * x + 8 * (1 - self.k) * x + self.odd_square

    def balancer_radicand(self, x: int) -> int:
        return 8 * x * x + 8 * self.k * x + 1


def _ctx(k_or_ctx) -> GapContext:
    if isinstance(k_or_ctx, GapContext):
        return k_or_ctx
    return GapContext(int(k_or_ctx))


@dataclass(frozen=True)
class BalancingPair:
    """A nonnegative-C solution ``(B, C)`` of the balancing equation.

    ``B`` may fall below ``k`` for seeds and backward steps; use
    :attr:`is_balancing` to test for a genuine upper k-gap balancing number.
    """

    B: int
    C: int
    context: GapContext

    def __post_init__(self):
        if self.C < 0:
            raise InvariantError(f"negative Lucas-balancing value {self.C}")
        if self.C * self.C != self.context.balancing_radicand(self.B):
            raise InvariantError(
                f"({self.B}, {self.C}) does not solve the k={self.context.k} balancing equation"
            )

    @property
    def k(self) -> int:
        return self.context.k

    @property
    def is_balancing(self) -> bool:
        return self.B >= self.context.k

    def as_tuple(self) -> tuple[int, int]:
        return self.B, self.C


@dataclass(frozen=True)
class BalancerPair:
    r: int
    r_hat: int
    context: GapContext

    def __post_init__(self):
        if self.r_hat < 0:
            raise InvariantError(f"negative Lucas-balancer {self.r_hat}")
        if self.r_hat * self.r_hat != self.context.balancer_radicand(self.r):
            raise InvariantError(
                f"({self.r}, {self.r_hat}) does not solve the k={self.context.k} balancer equation"
            )

    @property
    def k(self) -> int:
        return self.context.k

    def as_tuple(self) -> tuple[int, int]:
        return self.r, self.r_hat


@dataclass(frozen=True)
class PellPoint:
    """A point on ``y^2 - 2z^2 = sign * (2k^2 - 1)``."""

    y: int
    z: int
    sign: int
    context: GapContext

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if self.y * self.y - 2 * self.z * self.z != self.sign * self.context.pell_constant:
            raise InvariantError(f"({self.y}, {self.z}) is not on the Pell curve")


def is_upper_gap_balancing(ctx, B: int) -> BalancingPair | None:
    """Return the pair ``(B, C)`` if B is an upper k-gap balancing number.

    Numbers below k are rejected outright: k is the smallest upper k-gap
    balancing number, so asking about B < k is a caller bug.
    """
    ctx = _ctx(ctx)
    if B < ctx.k:
        raise DomainError(f"B={B} is below the smallest balancing number k={ctx.k}")
    ok, root = is_perfect_square(ctx.balancing_radicand(B))
    if not ok:
        return None
    return BalancingPair(B, root, ctx)


def _half(n: int, what: str) -> int:
    if n % 2:
        raise InvariantError(f"{what} is odd ({n}); cannot halve exactly")
    return n // 2


def balancer_of(pair: BalancingPair) -> BalancerPair:
    B, C, k = pair.B, pair.C, pair.k
    r = _half(-2 * B + C - 1, "-2B + C - 1")
    r_hat = 4 * B - C + 2 - 2 * k
    if r_hat < 0:
        # Only happens below the seed, where the formulas leave the realized regime.
        raise DomainError(f"pair {pair.as_tuple()} has no realized balancer pair")
    if r_hat != 2 * B - 2 * r + 1 - 2 * k:
        raise InvariantError("balancer identities disagree")
    return BalancerPair(r, r_hat, pair.context)


def balancing_of(balancer: BalancerPair) -> BalancingPair:
    """Recover ``(B, C)`` from a balancer pair: ``B = ((2r + 2k - 1) + rhat) / 2``."""
    r, r_hat, k = balancer.r, balancer.r_hat, balancer.k
    B = _half(2 * r + 2 * k - 1 + r_hat, "2r + 2k - 1 + rhat")
    return BalancingPair(B, 2 * B + 2 * r + 1, balancer.context)


def counterbalancer_of(pair: BalancingPair) -> int:
    """m = (C - 1)/2, which equals B + r."""
    return _half(pair.C - 1, "C - 1")


def verify_triangular_identity(pair: BalancingPair) -> bool:
    """Check ``T(B - k) + T(B) = T(B + r)``."""
    r = balancer_of(pair).r
    return triangular(pair.B - pair.k) + triangular(pair.B) == triangular(pair.B + r)


def to_pell(point: BalancingPair | BalancerPair) -> PellPoint:
    """Map a pair onto its Pell form.

    Balancing pairs go to ``(C, 2B + 1 - k)`` on ``y^2 - 2z^2 = 2k^2 - 1``;
    balancer pairs go to ``(rhat, 2r + k)`` on ``y^2 - 2z^2 = -(2k^2 - 1)``.
    """
    if isinstance(point, BalancingPair):
        return PellPoint(point.C, 2 * point.B + 1 - point.k, 1, point.context)
    if isinstance(point, BalancerPair):
        return PellPoint(point.r_hat, 2 * point.r + point.k, -1, point.context)
    raise TypeError(f"cannot map {type(point).__name__} to a Pell point")


def from_pell(point: PellPoint) -> BalancingPair | BalancerPair:
    k = point.context.k
    if point.sign == 1:
        return BalancingPair(_half(point.z - 1 + k, "z - 1 + k"), point.y, point.context)
    return BalancerPair(_half(point.z - k, "z - k"), point.y, point.context)


# Nomenclature.  "upper" is (B, r); "lower" is (L, r) with L = B - k;
# "panda_rout" is (g, r_k), where g is the median of the deleted gap for odd
# k and the sum of the two numbers bordering the gap for even k.

NOMENCLATURES = ("upper", "lower", "panda_rout")


def _upper_to_panda_rout(k: int, B: int, r: int) -> tuple[int, int]:
    if k % 2:
        return B - (k - 1) // 2, r + (k - 1) // 2
    return 2 * B - k + 1, r + k // 2


def _panda_rout_to_upper(k: int, g: int, r_k: int) -> tuple[int, int]:
    if k % 2:
        return g + (k - 1) // 2, r_k - (k - 1) // 2
    if g % 2 == 0:
        raise DomainError(f"for even k the Panda-Rout number must be odd, got {g}")
    return (g - 1) // 2 + k // 2, r_k - k // 2


def convert_nomenclature(ctx, value: tuple[int, int], direction: str) -> tuple[int, int]:
    """Convert ``(number, balancer)`` between naming conventions.

    ``direction`` is ``"<from>-><to>"`` with both ends drawn from
    :data:`NOMENCLATURES`, e.g. ``"upper->panda_rout"``.
    """
    ctx = _ctx(ctx)
    k = ctx.k
    try:
        src, dst = (part.strip() for part in direction.split("->"))
    except ValueError:
        raise DomainError(f"bad direction {direction!r}") from None
    if src not in NOMENCLATURES or dst not in NOMENCLATURES:
        raise DomainError(f"unknown nomenclature in {direction!r}")

    a, b = value
    if src == "lower":
        B, r = a + k, b
    elif src == "panda_rout":
        B, r = _panda_rout_to_upper(k, a, b)
    else:
        B, r = a, b

    if dst == "lower":
        return B - k, r
    if dst == "panda_rout":
        return _upper_to_panda_rout(k, B, r)
    return B, r


def balancing_from_balancer_value(ctx, r: int) -> int | None:
    """B for a balancer r, or None when ``8r^2 + 8kr + 1`` is not a square."""
    ctx = _ctx(ctx)
    ok, root = is_perfect_square(ctx.balancer_radicand(r))
    if not ok:
        return None
    return (2 * r + 2 * ctx.k - 1 + root) // 2


__all__ = [
    "GapContext",
    "BalancingPair",
    "BalancerPair",
    "PellPoint",
    "is_upper_gap_balancing",
    "balancer_of",
    "balancing_of",
    "counterbalancer_of",
    "verify_triangular_identity",
    "to_pell",
    "from_pell",
    "convert_nomenclature",
    "balancing_from_balancer_value",
]
