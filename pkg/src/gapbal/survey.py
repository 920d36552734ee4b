"""Sweeps over gap sizes: class counts, divisor counts, ambiguous classes."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .arithmetic import count_divisors
from .classes import Seed, class_count, enumerate_seeds
from .core import GapContext
from .errors import DomainError


@dataclass(frozen=True)
class SurveyRecord:
    k: int
    class_count: int
    divisor_count: int
    ambiguous: bool
    seeds: tuple[Seed, ...] = ()

    @property
    def conjecture_holds(self) -> bool:
        return self.class_count == self.divisor_count

    def as_row(self) -> dict:
        return {
            "k": self.k,
            "class_count": self.class_count,
            "divisor_count": self.divisor_count,
            "ambiguous": self.ambiguous,
        }


def survey_k(k: int, with_seeds: bool = False, with_divisors: bool = True) -> SurveyRecord:
    ctx = GapContext(k)
    cc = class_count(ctx)
    divisors = count_divisors(abs(ctx.pell_constant)) if with_divisors else 0
    seeds = tuple(enumerate_seeds(ctx)) if with_seeds and k > 0 else ()
    return SurveyRecord(k, cc.count, divisors, cc.ambiguous, seeds)


def _survey_chunk(args) -> list[SurveyRecord]:
    lo, hi, with_seeds, with_divisors = args
    return [survey_k(k, with_seeds, with_divisors) for k in range(lo, hi + 1)]


def sweep(
    k_min: int,
    k_max: int,
    jobs: int = 1,
    with_seeds: bool = False,
    with_divisors: bool = True,
    chunk: int = 250,
) -> list[SurveyRecord]:
    """One record per k in ``[k_min, k_max]``, ordered by k.

    With ``jobs > 1`` contiguous chunks of k run in worker processes; the
    output does not depend on the number of workers.
    """
    if k_min < 0 or k_max < k_min:
        raise DomainError(f"need 0 <= k_min <= k_max, got [{k_min}, {k_max}]")
    tasks = [
        (lo, min(lo + chunk - 1, k_max), with_seeds, with_divisors)
        for lo in range(k_min, k_max + 1, chunk)
    ]
    if jobs <= 1 or len(tasks) == 1:
        parts = map(_survey_chunk, tasks)
        return [rec for part in parts for rec in part]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return [rec for part in pool.map(_survey_chunk, tasks) for rec in part]


def check_conjecture(k_min: int, k_max: int, jobs: int = 1) -> list[SurveyRecord]:
    """Records where the class count differs from d(|2k^2 - 1|)."""
    return [rec for rec in sweep(k_min, k_max, jobs) if not rec.conjecture_holds]


def table1(k_max: int, jobs: int = 1) -> dict[int, int]:
    """Smallest k in ``[0, k_max]`` for every class count that occurs."""
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max}")
    smallest: dict[int, int] = {}
    for rec in sweep(0, k_max, jobs, with_divisors=False):
        smallest.setdefault(rec.class_count, rec.k)
    return dict(sorted(smallest.items()))


def ambiguous_k_values(k_max: int) -> list[int]:
    """All k <= k_max with 2k^2 - 1 a perfect square."""
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    out = []
    for k in range(1, k_max + 1):
        n = 2 * k * k - 1
        r = math.isqrt(n)
        if r * r == n:
            out.append(k)
    return out


CSV_FIELDS = ("k", "class_count", "divisor_count", "ambiguous")


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = rec.as_row()
        row["ambiguous"] = "true" if rec.ambiguous else "false"
        writer.writerow(row)
    return buf.getvalue()


def records_to_json(records) -> str:
    return json.dumps([rec.as_row() for rec in records], indent=2)
