import shutil

import pytest

from gapbal import oeis
from gapbal.errors import BFileParseError, DomainError
from gapbal.oeis import (
    SOURCES,
    BFile,
    check_id,
    check_sequence,
    cross_check,
    generate,
    load_alignments,
    load_fixture,
    parse_bfile,
    refresh,
    serialize_bfile,
)


def test_parse_basic():
    b = parse_bfile("# header\n0 1\n1 6\n\n2 35\n", "A001109")
    assert b.entries == ((0, 1), (1, 6), (2, 35))
    assert b.comments == ("# header",)
    assert b.first_index == 0


@pytest.mark.parametrize("text, line", [("0 1\n1\n", 2), ("0 1\n1 x\n", 2), ("# c\n3 1\n3 2\n", 3), ("1 2 3\n", 1)])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(BFileParseError) as exc:
        parse_bfile(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_serialize_round_trip():
    for sid in SOURCES:
        b = load_fixture(sid)
        assert parse_bfile(serialize_bfile(b), sid) == b


def test_check_id():
    assert check_id("A000045") == "A000045"
    for bad in ("A45", "a000045", "B000045", "A0000450"):
        with pytest.raises(DomainError):
            check_id(bad)


def test_fixtures_label_themselves():
    for sid in SOURCES:
        assert any("local stand-in" in c for c in load_fixture(sid).comments)


def test_pinned_alignments():
    pins = load_alignments()
    assert set(pins) == set(SOURCES)
    for sid, pin in pins.items():
        rep = check_sequence(sid, 20)
        assert rep.matched, rep
        assert (rep.position, rep.offset) == (pin["position"], pin["offset"])
        assert rep.compared >= 15


def test_generated_heads():
    assert generate(SOURCES["A001109"], 5) == [1, 6, 35, 204, 1189]
    assert generate(SOURCES["A053141"], 5) == [0, 2, 14, 84, 492]


def test_cross_check_shift_and_mismatch():
    fixture = BFile("A000001", tuple((i, v) for i, v in enumerate([7, 8, 1, 2, 3, 4, 5])))
    rep = cross_check([1, 2, 3, 4, 5], fixture, window=3, min_terms=5)
    assert (rep.matched, rep.position, rep.offset) == (True, 2, 2)
    bad = cross_check([1, 2, 3, 9, 5], fixture, window=3, min_terms=5)
    assert not bad.matched
    assert bad.first_mismatch == (3, 4, 9)
    with pytest.raises(DomainError):
        cross_check([], fixture)


def test_unknown_sequence():
    with pytest.raises(DomainError):
        check_sequence("A000045")


def test_refresh_falls_back(tmp_path, monkeypatch):
    src = oeis.fixture_path("A001109")
    shutil.copy(src, tmp_path / src.name)
    monkeypatch.setenv(oeis.URL_ENV, "http://127.0.0.1:9/{id}/b{number}.txt")
    b, fetched = refresh("A001109", tmp_path, timeout=2)
    assert not fetched
    assert b == load_fixture("A001109")
    assert (tmp_path / src.name).read_bytes() == src.read_bytes()


def test_refresh_writes_download(tmp_path, monkeypatch):
    served = tmp_path / "served.txt"
    served.write_text("# downloaded\n0 0\n1 1\n2 6\n", encoding="utf-8")
    monkeypatch.setenv(oeis.URL_ENV, served.as_uri())
    target = tmp_path / "fx"
    b, fetched = refresh("A001109", target)
    assert fetched
    assert b.values == [0, 1, 6]
    assert load_fixture("A001109", target) == b


def test_refresh_rejects_garbage(tmp_path, monkeypatch):
    src = oeis.fixture_path("A053141")
    shutil.copy(src, tmp_path / src.name)
    served = tmp_path / "bad.txt"
    served.write_text("<html>not found</html>\n", encoding="utf-8")
    monkeypatch.setenv(oeis.URL_ENV, served.as_uri())
    b, fetched = refresh("A053141", tmp_path)
    assert not fetched
    assert b == load_fixture("A053141")
