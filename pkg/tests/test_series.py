from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapbal.classes import classes_for, merged_values
from gapbal.errors import UnsupportedInputError
from gapbal.series import (
    CLASS_DENOMINATOR,
    RationalFunction,
    class_genfun,
    expand,
    interleaved_genfun,
    poly,
    poly_inflate,
    poly_mul,
    poly_str,
)
from oracles import series_by_long_division

# reference k = 9 class numerators, lowest degree first
G_NUMERATORS = [(9, -25), (14, -33, 3), (20, -41, 5), (33, -57, 8)]
# reference global function: N(s) / ((s - 1)(s^8 - 6s^4 + 1))
G_NUM = (-9, -5, -6, -13, 49, 3, 2, 3, -8)
G_DEN = poly_mul((-1, 1), (1, 0, 0, 0, -6, 0, 0, 0, 1))


def test_class_genfuns_k9():
    got = [class_genfun(c) for c in classes_for(9)]
    assert [g.numerator for g in got] == [poly(*n) for n in G_NUMERATORS]
    assert all(g.denominator == CLASS_DENOMINATOR for g in got)
    assert CLASS_DENOMINATOR == (1, -7, 7, -1)


def test_interleaved_k9():
    G = interleaved_genfun(9)
    assert G.same_function(RationalFunction(G_NUM, G_DEN))
    assert expand(G, 10) == [9, 14, 20, 33, 38, 65, 99, 174, 203, 360]


@pytest.mark.parametrize("k", [0, 1, 2, 5, 9, 44, 152])
def test_expansion_is_merge(k):
    classes = classes_for(k)
    G = interleaved_genfun(k)
    n = 30
    per = -(-n // len(classes))
    assert expand(G, n) == merged_values(classes, per, lambda c, m: c.B_values(m))[:n]
    for c in classes:
        assert expand(class_genfun(c), 20) == c.B_values(20)


@pytest.mark.parametrize("k", [2, 9, 37])
def test_expand_matches_long_division(k):
    G = interleaved_genfun(k)
    ref = series_by_long_division(list(G.numerator), list(G.denominator), 40)
    assert [Fraction(v) for v in expand(G, 40)] == ref


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6),
       st.lists(st.integers(-9, 9), min_size=0, max_size=4),
       st.sampled_from([1, -1]))
def test_expand_random(num, tail, d0):
    rf = RationalFunction(tuple(num), (d0, *tail))
    assert [Fraction(v) for v in expand(rf, 15)] == series_by_long_division(num, [d0, *tail], 15)


def test_non_unit_denominator_rejected():
    with pytest.raises(UnsupportedInputError):
        expand(RationalFunction((1,), (2, 1)), 5)
    with pytest.raises(UnsupportedInputError):
        RationalFunction((1,), (0, 1))


def test_poly_helpers():
    assert poly_inflate((1, -6, 1), 2) == (1, 0, -6, 0, 1)
    assert poly_str((9, -25)) == "-25s + 9"
