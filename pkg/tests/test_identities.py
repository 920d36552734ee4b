from decimal import Decimal

import pytest

from gapbal.classes import classes_for
from gapbal.identities import (
    check_cassini,
    check_mixed_limits,
    check_pell_form,
    check_ratio_limits,
    check_recurrences,
    exact_suite,
)


@pytest.mark.parametrize("k", [0, 1, 2, 5, 9, 44, 200, 985])
def test_exact_suite(k):
    for cls in classes_for(k):
        for report in exact_suite(cls, 30):
            assert report.passed, report.failures


def test_cassini_constants_by_hand():
    # class a for k = 9: B = 9, 38, 203 and (38 + 8)^2 - 9 * 203 = 289
    assert (38 + 8) ** 2 - 9 * 203 == 17**2
    assert 97**2 - 19 * 563 == -8 * 161
    assert check_cassini(classes_for(9)[0], 5).passed


def test_recurrence_by_hand():
    assert 203 == 6 * 38 - 9 + 2 - 18
    assert check_recurrences(classes_for(9)[0], 10).passed
    assert check_pell_form(classes_for(9)[0], 10).passed


def test_limits_relaxed_pass():
    # a loose tolerance separates "converges" from the strict acceptance bound
    cls = classes_for(9)[0]
    r = check_ratio_limits(cls, 25, tolerance=Decimal("1e-6"))
    assert r.passed, r.failures
    assert r.first_index == 2  # B_1 = 38 is not above 4k + 2 = 38
    assert all(len(v) == 24 for v in r.errors.values())


def test_limits_report_shape():
    cls = classes_for(1)[0]
    m = check_mixed_limits(cls, 25, tolerance=Decimal("1e-5"))
    assert set(m.errors) == {"C-sqrt8*B", "rhat-sqrt8*r", "C/B", "rhat/r"}
    assert all(m.monotone.values())


def test_window_too_short():
    r = check_ratio_limits(classes_for(9)[0], 3)
    assert not r.passed
    assert "window too short" in r.failures[0]


def test_tolerance_failure_is_reported():
    r = check_ratio_limits(classes_for(9)[0], 25, tolerance=Decimal("1e-30"))
    assert not r.passed
    assert not any(r.within_tolerance.values())
