from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from selrules.thresholds import meets, min_count, parse_fraction, unit_fraction


@pytest.mark.parametrize(
    "value, expected",
    [("0.9", Fraction(9, 10)), (0.9, Fraction(9, 10)), ("3/8", Fraction(3, 8)), (1, Fraction(1)), (Fraction(1, 3), Fraction(1, 3))],
)
def test_parse_fraction_is_exact(value, expected):
    assert parse_fraction(value) == expected


@pytest.mark.parametrize("value", ["abc", "1/0", ""])
def test_parse_fraction_rejects_garbage(value):
    with pytest.raises(ValueError):
        parse_fraction(value)


def test_parse_fraction_rejects_bool():
    with pytest.raises(TypeError):
        parse_fraction(True)


def test_unit_fraction_bounds():
    assert unit_fraction("0", "x") == 0
    with pytest.raises(ValueError):
        unit_fraction("0", "x", allow_zero=False)
    with pytest.raises(ValueError):
        unit_fraction("1.5", "x")
    with pytest.raises(ValueError):
        unit_fraction("-0.1", "x")


def test_min_count_boundaries():
    assert min_count(Fraction(1, 5), 8124) == 1625  # 1624.8 rounds up
    assert min_count(Fraction(3, 8), 8) == 3
    assert min_count(Fraction(1), 8) == 8


@given(st.fractions(min_value=0, max_value=1), st.integers(0, 10_000))
def test_min_count_is_smallest_meeting_count(minsup, m):
    c = min_count(minsup, m)
    assert meets(c, m, minsup)
    assert c == 0 or not meets(c - 1, m, minsup)


def test_meets_is_inclusive():
    assert meets(9, 10, Fraction(9, 10))
    assert not meets(8, 10, Fraction(9, 10))
