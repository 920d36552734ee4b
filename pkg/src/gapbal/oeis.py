"""OEIS b-file parsing and cross-checking of generated sequences.

Checks run against fixture files on disk.  Fetching from the network only
happens through :func:`refresh`, and a failed fetch falls back to the
fixture already present.
"""

from __future__ import annotations

import json
import logging
import os
import re
import threading
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from .classes import classes_for, tandem_balancer_class
from .core import counterbalancer_of
from .errors import BFileParseError, DomainError

log = logging.getLogger(__name__)

FIXTURES_ENV = "GAPBAL_FIXTURES"
URL_ENV = "GAPBAL_OEIS_URL"
TIMEOUT_ENV = "GAPBAL_OEIS_TIMEOUT"
DEFAULT_URL = "https://oeis.org/{id}/b{number}.txt"
DEFAULT_TIMEOUT = 10.0
DEFAULT_WINDOW = 5
DEFAULT_MIN_TERMS = 15

_ID_RE = re.compile(r"^A\d{6}$")


@dataclass(frozen=True)
class BFile:
    sequence_id: str
    entries: tuple[tuple[int, int], ...]
    comments: tuple[str, ...] = ()

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]

    @property
    def first_index(self) -> int | None:
        return self.entries[0][0] if self.entries else None


def check_id(sequence_id: str) -> str:
    if not _ID_RE.match(sequence_id):
        raise DomainError(f"bad OEIS id {sequence_id!r}; expected 'A' followed by 6 digits")
    return sequence_id


def parse_bfile(text: str, sequence_id: str = "A000000") -> BFile:
    entries: list[tuple[int, int]] = []
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(raw.rstrip("\n"))
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise BFileParseError(f"expected 'index value', got {line!r}", lineno)
        try:
            idx, val = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise BFileParseError(f"non-integer token in {line!r}", lineno) from None
        if entries and idx <= entries[-1][0]:
            raise BFileParseError(f"index {idx} does not increase (previous {entries[-1][0]})", lineno)
        entries.append((idx, val))
    return BFile(sequence_id, tuple(entries), tuple(comments))


def serialize_bfile(bfile: BFile, with_comments: bool = True) -> str:
    lines = list(bfile.comments) if with_comments else []
    lines += [f"{i} {v}" for i, v in bfile.entries]
    return "\n".join(lines) + "\n"


# What each cited sequence is, in terms of the classes for one gap size.
# "merged" sequences are the sorted union over all classes for that k.


@dataclass(frozen=True)
class SequenceSource:
    sequence_id: str
    k: int
    field: str
    merged: bool
    description: str


SOURCES: dict[str, SequenceSource] = {
    s.sequence_id: s
    for s in (
        SequenceSource("A001109", 1, "B", False, "balancing numbers (k = 1)"),
        SequenceSource("A053141", 0, "B", False, "cobalancing numbers (k = 0)"),
        SequenceSource("A077443", 2, "C", True, "upper 2-gap Lucas-balancing numbers"),
        SequenceSource("A124124", 2, "m", True, "2-gap counterbalancers"),
        SequenceSource("A077446", 2, "rhat", True, "upper 2-gap Lucas-balancers"),
        SequenceSource("A275797", 5, "C", True, "upper 5-gap Lucas-balancing numbers"),
        SequenceSource("A076293", 5, "rhat", True, "upper 5-gap Lucas-balancers"),
    )
}


def _field_values(cls, field: str, n: int) -> list[int]:
    if field == "B":
        return cls.B_values(n)
    if field == "C":
        return cls.C_values(n)
    if field == "m":
        return [counterbalancer_of(p) for p in cls.pairs(n)]
    bal = tandem_balancer_class(cls).pairs(n)
    if field == "r":
        return [q.r for q in bal]
    if field == "rhat":
        return [q.r_hat for q in bal]
    raise DomainError(f"unknown field {field!r}")


def generate(source: SequenceSource, n: int) -> list[int]:
    """First n values of the generated counterpart of a cited sequence."""
    classes = classes_for(source.k)
    if not source.merged:
        return _field_values(classes[0], source.field, n)
    per_class = -(-n // len(classes))
    values = sorted({v for c in classes for v in _field_values(c, source.field, per_class + 1)})
    return values[:n]


@dataclass(frozen=True)
class CrossCheckReport:
    sequence_id: str
    matched: bool
    position: int | None  # fixture entry matched against generated[0]; negative: generated runs ahead
    offset: int | None  # fixture index corresponding to generated[0]
    compared: int
    first_mismatch: tuple[int, int, int] | None = None  # (generated position, expected, got)


def cross_check(
    generated: list[int],
    fixture: BFile,
    window: int = DEFAULT_WINDOW,
    min_terms: int = DEFAULT_MIN_TERMS,
) -> CrossCheckReport:
    """Find where ``generated`` sits inside the fixture, trying shifts within +-window."""
    if not generated:
        raise DomainError("nothing to cross-check")
    values = fixture.values
    best_fail = None
    for p in sorted(range(-window, window + 1), key=lambda v: (abs(v), v)):
        g0, f0 = (0, p) if p >= 0 else (-p, 0)
        overlap = min(len(generated) - g0, len(values) - f0)
        if overlap < min(min_terms, len(generated)):
            continue
        mismatch = next(
            (j for j in range(overlap) if generated[g0 + j] != values[f0 + j]), None
        )
        if mismatch is None:
            offset = fixture.first_index + p if fixture.first_index is not None else None
            return CrossCheckReport(fixture.sequence_id, True, p, offset, overlap)
        if best_fail is None or mismatch > best_fail[1]:
            best_fail = (p, mismatch, g0, f0)
    if best_fail is None:
        return CrossCheckReport(fixture.sequence_id, False, None, None, 0)
    p, j, g0, f0 = best_fail
    return CrossCheckReport(
        fixture.sequence_id, False, None, None, j, (g0 + j, values[f0 + j], generated[g0 + j])
    )


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURES_ENV)
    if env:
        return Path(env)
    return Path(__file__).with_name("fixtures")


def fixture_path(sequence_id: str, directory: Path | None = None) -> Path:
    check_id(sequence_id)
    return (directory or fixture_dir()) / f"b{sequence_id[1:]}.txt"


def load_fixture(sequence_id: str, directory: Path | None = None) -> BFile:
    path = fixture_path(sequence_id, directory)
    return parse_bfile(path.read_text(encoding="utf-8"), sequence_id)


def load_alignments(directory: Path | None = None) -> dict[str, dict]:
    path = (directory or fixture_dir()) / "alignments.json"
    if not path.exists():
        return {}
    return json.loads(path.read_text(encoding="utf-8"))


def check_sequence(
    sequence_id: str,
    n: int = 20,
    directory: Path | None = None,
    window: int = DEFAULT_WINDOW,
    min_terms: int = DEFAULT_MIN_TERMS,
) -> CrossCheckReport:
    check_id(sequence_id)
    source = SOURCES.get(sequence_id)
    if source is None:
        raise DomainError(f"{sequence_id} is not one of the supported sequences: {', '.join(SOURCES)}")
    fixture = load_fixture(sequence_id, directory)
    return cross_check(generate(source, n), fixture, window, min_terms)


_refresh_locks: dict[str, threading.Lock] = {}
_refresh_guard = threading.Lock()


def _lock_for(sequence_id: str) -> threading.Lock:
    with _refresh_guard:
        return _refresh_locks.setdefault(sequence_id, threading.Lock())


def bfile_url(sequence_id: str) -> str:
    template = os.environ.get(URL_ENV, DEFAULT_URL)
    return template.format(id=sequence_id, number=sequence_id[1:])


def refresh(sequence_id: str, directory: Path | None = None, timeout: float | None = None) -> tuple[BFile, bool]:
    """Download a b-file over the existing fixture.

    Returns ``(bfile, fetched)``; on any network or parse failure the current
    fixture is returned with ``fetched=False``.
    """
    check_id(sequence_id)
    if timeout is None:
        timeout = float(os.environ.get(TIMEOUT_ENV, DEFAULT_TIMEOUT))
    path = fixture_path(sequence_id, directory)
    with _lock_for(sequence_id):
        url = bfile_url(sequence_id)
        try:
            with urllib.request.urlopen(url, timeout=timeout) as resp:
                text = resp.read().decode("utf-8")
            bfile = parse_bfile(text, sequence_id)
            if not bfile.entries:
                raise BFileParseError("downloaded b-file has no entries")
        except (OSError, ValueError) as exc:
            log.warning("refresh of %s from %s failed (%s); keeping fixture", sequence_id, url, exc)
            return load_fixture(sequence_id, directory), False
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        tmp.replace(path)
        return bfile, True
