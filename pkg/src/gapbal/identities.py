"""Executable checks of the recurrences, Cassini-like identities and limits.

Exact identities are verified in integers.  Limits are evaluated with
:mod:`decimal` at 50 or more significant digits and judged by two things:
the error sequence must be strictly decreasing once the class is past its
first term, and it must be under a tolerance once ``B_i`` is large.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from decimal import Decimal

from .classes import BalancingClass, tandem_balancer_class
from .core import counterbalancer_of

DEFAULT_PRECISION = 50
DEFAULT_TOLERANCE = Decimal("1e-8")
DEFAULT_LARGE_B = 10**8


@dataclass
class IdentityReport:
    name: str
    k: int
    class_index: int
    first_index: int
    last_index: int
    passed: bool = True
    failures: list[str] = field(default_factory=list)
    # Limit checks only: per-quantity error sequences starting at first_index.
    errors: dict[str, list[Decimal]] = field(default_factory=dict)
    monotone: dict[str, bool] = field(default_factory=dict)
    within_tolerance: dict[str, bool] = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.passed = False
        self.failures.append(message)


def _sequences(cls: BalancingClass, count: int) -> dict[str, list[int]]:
    pairs = cls.pairs(count)
    bal = tandem_balancer_class(cls).pairs(count)
    return {
        "B": [p.B for p in pairs],
        "C": [p.C for p in pairs],
        "r": [q.r for q in bal],
        "rhat": [q.r_hat for q in bal],
        "m": [counterbalancer_of(p) for p in pairs],
    }


def check_recurrences(cls: BalancingClass, n: int) -> IdentityReport:
    """Second-order recurrences with multiplier 6, for 1 <= i <= n."""
    k = cls.k
    seq = _sequences(cls, n + 2)
    constants = {"B": 2 - 2 * k, "C": 0, "r": 2 * k, "rhat": 0, "m": 2}
    report = IdentityReport("recurrences", k, cls.class_index, 1, n)
    for name, const in constants.items():
        s = seq[name]
        for i in range(1, n + 1):
            residual = s[i + 1] - (6 * s[i] - s[i - 1] + const)
            if residual:
                report.fail(f"{name} recurrence residual {residual} at i={i}")
                break
    return report


def check_cassini(cls: BalancingClass, n: int) -> IdentityReport:
    k = cls.k
    N = 2 * k * k - 1
    seq = _sequences(cls, n + 2)
    B, C, r, h, m = seq["B"], seq["C"], seq["r"], seq["rhat"], seq["m"]
    forms = {
        "B": (lambda i: (B[i] + k - 1) ** 2 - B[i - 1] * B[i + 1], (2 * k - 1) ** 2),
        "C": (lambda i: C[i] ** 2 - C[i - 1] * C[i + 1], -8 * N),
        "r": (lambda i: (r[i] - k) ** 2 - r[i - 1] * r[i + 1], 1),
        "rhat": (lambda i: h[i] ** 2 - h[i - 1] * h[i + 1], 8 * N),
        "m": (lambda i: (m[i] - 1) ** 2 - m[i - 1] * m[i + 1], -4 * (k * k - 1)),
    }
    report = IdentityReport("cassini", k, cls.class_index, 1, n)
    for name, (lhs, expected) in forms.items():
        for i in range(1, n + 1):
            got = lhs(i)
            if got != expected:
                report.fail(f"{name} Cassini value {got} != {expected} at i={i}")
                break
    return report


def check_pell_form(cls: BalancingClass, n: int) -> IdentityReport:
    """``(2C)^2 - 8(2B - (k - 1))^2 = 4(2k^2 - 1)`` for 0 <= i < n."""
    k = cls.k
    report = IdentityReport("pell_form", k, cls.class_index, 0, n - 1)
    for i, p in enumerate(cls.pairs(n)):
        lhs = (2 * p.C) ** 2 - 8 * (2 * p.B - (k - 1)) ** 2
        if lhs != 4 * (2 * k * k - 1):
            report.fail(f"Pell form residual at i={i}")
            break
    return report


def _first_large_index(B: list[int], k: int) -> int | None:
    for i, b in enumerate(B):
        if b > 4 * k + 2:
            return i
    return None


def _judge(
    report: IdentityReport,
    name: str,
    errs: list[Decimal],
    B: list[int],
    start: int,
    tolerance: Decimal,
    large_b: int,
) -> None:
    report.errors[name] = errs
    mono = all(e1 < e0 for e0, e1 in zip(errs, errs[1:]))
    report.monotone[name] = mono
    if not mono:
        i = next(j for j, (e0, e1) in enumerate(zip(errs, errs[1:])) if not e1 < e0)
        report.fail(f"{name}: error not strictly decreasing at i={start + i + 1}")
    large = [j for j in range(len(errs)) if B[start + j] > large_b]
    if not large:
        report.within_tolerance[name] = False
        report.fail(f"{name}: window never reaches B_i > {large_b}")
        return
    bad = [j for j in large if errs[j] >= tolerance]
    report.within_tolerance[name] = not bad
    if bad:
        j = bad[0]
        report.fail(f"{name}: error {errs[j]:.3E} >= {tolerance} at i={start + j} (B_i={B[start + j]})")


def _working_precision(values: list[int], precision: int) -> int:
    digits = max(len(str(abs(v))) for v in values)
    return max(precision, digits + 30)


def check_ratio_limits(
    cls: BalancingClass,
    n: int = 25,
    precision: int = DEFAULT_PRECISION,
    tolerance: Decimal = DEFAULT_TOLERANCE,
    large_b: int = DEFAULT_LARGE_B,
) -> IdentityReport:
    """Successive-term ratios of B, C, r, rhat and m against ``3 + sqrt(8)``."""
    k = cls.k
    seq = _sequences(cls, n + 2)
    B = seq["B"]
    start = _first_large_index(B, k)
    report = IdentityReport("ratio_limits", k, cls.class_index, start if start is not None else 0, n)
    if start is None or n - start + 1 < 5:
        report.fail("window too short for at least 5 error values")
        return report
    with decimal.localcontext() as dc:
        dc.prec = _working_precision(B + seq["C"], precision)
        target = 3 + Decimal(8).sqrt()
        for name, s in seq.items():
            errs = [abs(Decimal(s[i + 1]) / Decimal(s[i]) - target) for i in range(start, n + 1)]
            _judge(report, name, errs, B, start, tolerance, large_b)
    return report


def check_mixed_limits(
    cls: BalancingClass,
    n: int = 25,
    precision: int = DEFAULT_PRECISION,
    tolerance: Decimal = DEFAULT_TOLERANCE,
    large_b: int = DEFAULT_LARGE_B,
) -> IdentityReport:
    """``C - sqrt(8) B``, ``rhat - sqrt(8) r``, ``C/B`` and ``rhat/r`` against their limits."""
    k = cls.k
    seq = _sequences(cls, n + 1)
    B, C, r, h = seq["B"], seq["C"], seq["r"], seq["rhat"]
    start = _first_large_index(B, k)
    report = IdentityReport("mixed_limits", k, cls.class_index, start if start is not None else 0, n)
    pell = check_pell_form(cls, n + 1)
    if not pell.passed:
        for msg in pell.failures:
            report.fail(msg)
    if start is None or n - start + 1 < 5:
        report.fail("window too short for at least 5 error values")
        return report
    with decimal.localcontext() as dc:
        dc.prec = _working_precision(B + C, precision)
        rt8 = Decimal(8).sqrt()
        rt2 = Decimal(2).sqrt()
        idx = range(start, n + 1)
        quantities = {
            "C-sqrt8*B": [abs(C[i] - rt8 * B[i] - rt2 * (1 - k)) for i in idx],
            "rhat-sqrt8*r": [abs(h[i] - rt8 * r[i] - rt2 * k) for i in idx],
            "C/B": [abs(Decimal(C[i]) / Decimal(B[i]) - rt8) for i in idx],
            "rhat/r": [abs(Decimal(h[i]) / Decimal(r[i]) - rt8) for i in idx],
        }
        for name, errs in quantities.items():
            _judge(report, name, errs, B, start, tolerance, large_b)
    return report


def exact_suite(cls: BalancingClass, n: int) -> list[IdentityReport]:
    return [check_recurrences(cls, n), check_cassini(cls, n), check_pell_form(cls, n + 2)]


def limit_suite(cls: BalancingClass, n: int = 25, **kwargs) -> list[IdentityReport]:
    return [check_ratio_limits(cls, n, **kwargs), check_mixed_limits(cls, n, **kwargs)]
