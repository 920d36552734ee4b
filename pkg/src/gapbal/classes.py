"""Classes of upper k-gap balancing pairs.

Every balancing pair is reached from exactly one seed ``(x, y)`` with
``0 <= x < k`` by repeated application of the forward step
``(x, y) -> (3x + y + 1 - k, 8x + 3y + 4 - 4k)``.  Seeds come in conjugate
pairs ``x <-> k - 1 - x``; the self-conjugate (ambiguous) seed exists exactly
when ``2k^2 - 1`` is a perfect square.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import is_perfect_square
from .core import BalancerPair, BalancingPair, GapContext, _ctx, balancer_of, counterbalancer_of
from .errors import DomainError, InvariantError

# Above this the radicand no longer has an exactly representable float sqrt.
_FAST_SCAN_MAX_K = 2_000_000


def step_balancing(ctx, pair: BalancingPair) -> BalancingPair:
    ctx = _ctx(ctx)
    x, y, k = pair.B, pair.C, ctx.k
    return BalancingPair(3 * x + y + 1 - k, 8 * x + 3 * y + 4 - 4 * k, ctx)


def step_balancing_inverse(ctx, pair: BalancingPair) -> BalancingPair:
    ctx = _ctx(ctx)
    x, y, k = pair.B, pair.C, ctx.k
    return BalancingPair(3 * x - y + 1 - k, -8 * x + 3 * y + 4 * k - 4, ctx)


def step_balancer(ctx, balancer: BalancerPair) -> BalancerPair:
    ctx = _ctx(ctx)
    x, y, k = balancer.r, balancer.r_hat, ctx.k
    return BalancerPair(3 * x + y + k, 8 * x + 3 * y + 4 * k, ctx)


def step_balancer_inverse(ctx, balancer: BalancerPair) -> BalancerPair:
    ctx = _ctx(ctx)
    x, y, k = balancer.r, balancer.r_hat, ctx.k
    return BalancerPair(3 * x - y + k, -8 * x + 3 * y - 4 * k, ctx)


@dataclass(frozen=True)
class Seed:
    x: int
    y: int
    context: GapContext

    def __post_init__(self):
        k = self.context.k
        if not 0 <= self.x < k:
            raise DomainError(f"seed x={self.x} outside [0, {k})")
        if self.y <= 0:
            raise DomainError(f"seed y must be positive, got {self.y}")
        if self.y * self.y != self.context.balancing_radicand(self.x):
            raise InvariantError(f"seed ({self.x}, {self.y}) does not solve the balancing equation")

    @property
    def is_ambiguous(self) -> bool:
        return 2 * self.x == self.context.k - 1

    def as_pair(self) -> BalancingPair:
        return BalancingPair(self.x, self.y, self.context)

    def as_tuple(self) -> tuple[int, int]:
        return self.x, self.y


def _half_window_xs(k: int) -> list[int]:
    """x in [0, (k-1)//2] whose balancing radicand is a perfect square."""
    half = (k - 1) // 2
    if k <= _FAST_SCAN_MAX_K:
        x = np.arange(half + 1, dtype=np.int64)
        rad = 8 * x * x + 8 * (1 - k) * x + (2 * k - 1) ** 2
        root = np.rint(np.sqrt(rad.astype(np.float64))).astype(np.int64)
        hit = (root * root == rad) | ((root - 1) * (root - 1) == rad) | ((root + 1) * (root + 1) == rad)
        return [int(v) for v in np.flatnonzero(hit)]
    odd_square = (2 * k - 1) ** 2
    out = []
    for xv in range(half + 1):
        rad = 8 * xv * xv + 8 * (1 - k) * xv + odd_square
        r = math.isqrt(rad)
        if r * r == rad:
            out.append(xv)
    return out


def enumerate_seeds(ctx) -> list[Seed]:
    """All seeds for k > 0, ascending in x."""
    ctx = _ctx(ctx)
    k = ctx.k
    if k == 0:
        raise DomainError("k = 0 has no seeds; use classes_for(0)")
    xs = set()
    for x in _half_window_xs(k):
        xs.add(x)
        xs.add(k - 1 - x)
    seeds = []
    for x in sorted(xs):
        ok, y = is_perfect_square(ctx.balancing_radicand(x))
        if not ok:
            raise InvariantError(f"fast seed scan reported x={x} for k={k} but radicand is not square")
        seeds.append(Seed(x, y, ctx))
    return seeds


def conjugate_seed(ctx, seed: Seed) -> Seed:
    ctx = _ctx(ctx)
    return Seed(ctx.k - 1 - seed.x, seed.y, ctx)


@dataclass(eq=False)
class BalancingClass:
    """One class of balancing pairs, indexed from -1 (the seed) upward.

    Terms are generated lazily and cached.  Reading materialized terms is safe
    from any thread; extension takes an internal lock.
    """

    context: GapContext
    seed: Seed | None
    initial_pair: BalancingPair
    class_index: int = 0
    _terms: list[BalancingPair] = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        k = self.context.k
        if not k <= self.initial_pair.B < 4 * k + 2:
            raise InvariantError(f"initial B={self.initial_pair.B} outside [{k}, {4 * k + 2})")
        if not self._terms:
            self._terms.append(self.initial_pair)

    @property
    def k(self) -> int:
        return self.context.k

    def _extend(self, n: int) -> None:
        if len(self._terms) >= n:
            return
        with self._lock:
            while len(self._terms) < n:
                self._terms.append(step_balancing(self.context, self._terms[-1]))

    def term(self, i: int) -> BalancingPair:
        if i == -1:
            if self.seed is None:
                raise DomainError("the k = 0 class has no seed")
            return self.seed.as_pair()
        if i < -1:
            raise DomainError(f"indices below -1 are not supported, got {i}")
        self._extend(i + 1)
        return self._terms[i]

    __getitem__ = term

    def pairs(self, n: int) -> list[BalancingPair]:
        """The first n pairs, indices 0..n-1."""
        self._extend(n)
        return self._terms[:n]

    def B_values(self, n: int) -> list[int]:
        return [p.B for p in self.pairs(n)]

    def C_values(self, n: int) -> list[int]:
        return [p.C for p in self.pairs(n)]

    def m_values(self, n: int) -> list[int]:
        return [counterbalancer_of(p) for p in self.pairs(n)]

    def balancers(self, n: int) -> list[BalancerPair]:
        return [balancer_of(p) for p in self.pairs(n)]

    def label(self) -> str:
        return _class_label(self.class_index)

    def __repr__(self):
        return (
            f"BalancingClass(k={self.k}, index={self.class_index}, "
            f"seed={self.seed.as_tuple() if self.seed else None}, "
            f"initial={self.initial_pair.as_tuple()})"
        )


def _class_label(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    if i < len(letters):
        return letters[i]
    return f"c{i}"


def classes_for(ctx) -> list[BalancingClass]:
    """All classes for gap size k, ordered by ascending initial B."""
    ctx = _ctx(ctx)
    if ctx.k == 0:
        return [BalancingClass(ctx, None, BalancingPair(0, 1, ctx), 0)]
    seeds = enumerate_seeds(ctx)
    starts = sorted(((step_balancing(ctx, s.as_pair()), s) for s in seeds), key=lambda t: t[0].B)
    return [BalancingClass(ctx, s, p, i) for i, (p, s) in enumerate(starts)]


def conjugate_class(cls: BalancingClass, classes: list[BalancingClass]) -> BalancingClass:
    """The member of ``classes`` whose seed is conjugate to ``cls``'s seed."""
    if cls.seed is None:
        return cls
    target = conjugate_seed(cls.context, cls.seed)
    for other in classes:
        if other.seed is not None and other.seed.as_tuple() == target.as_tuple():
            return other
    raise InvariantError(f"no conjugate found for seed {cls.seed.as_tuple()}")


@dataclass(frozen=True)
class ClassCount:
    count: int
    ambiguous: bool


def class_count(ctx) -> ClassCount:
    """Number of classes, with a flag for the self-conjugate class."""
    ctx = _ctx(ctx)
    k = ctx.k
    if k == 0:
        return ClassCount(1, False)
    hits = _half_window_xs(k)
    ambiguous = k % 2 == 1 and bool(hits) and hits[-1] == (k - 1) // 2
    count = 2 * len(hits) - (1 if ambiguous else 0)
    return ClassCount(count, ambiguous)


@dataclass(eq=False)
class BalancerClass:
    """Balancer pairs running in tandem with a :class:`BalancingClass`."""

    source: BalancingClass
    _terms: list[BalancerPair] = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def context(self) -> GapContext:
        return self.source.context

    @property
    def class_index(self) -> int:
        return self.source.class_index

    def term(self, i: int) -> BalancerPair:
        if i < 0:
            raise DomainError(f"balancer classes are indexed from 0, got {i}")
        if len(self._terms) <= i:
            with self._lock:
                if not self._terms:
                    self._terms.append(balancer_of(self.source.term(0)))
                while len(self._terms) <= i:
                    self._terms.append(step_balancer(self.context, self._terms[-1]))
        return self._terms[i]

    __getitem__ = term

    def pairs(self, n: int) -> list[BalancerPair]:
        if n > 0:
            self.term(n - 1)
        return self._terms[:n]


def tandem_balancer_class(bclass: BalancingClass) -> BalancerClass:
    return BalancerClass(bclass)


def merged_values(classes: list[BalancingClass], n: int, getter) -> list[int]:
    """Round-robin interleave of ``getter(cls, n)`` over classes.

    For B values this is the ascending list of all balancing numbers, since
    every class's second term exceeds every class's first term.
    """
    per_class = [getter(c, n) for c in classes]
    return [per_class[j][i] for i in range(n) for j in range(len(classes))]
