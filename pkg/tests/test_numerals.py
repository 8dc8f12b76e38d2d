from decimal import Decimal
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from cnsalign.numerals import (
    DateValue, NumberKind, NumericValue, approx_equal, make_date, parse_date, parse_number_en,
    parse_number_zh,
)
from oracles import zh_numeral

PAIRS = [
    line.rstrip("\n").split("\t")
    for line in (Path(__file__).parent / "data" / "numeral_pairs.tsv").read_text("utf-8").splitlines()
    if line and not line.startswith("#")
]


def n(x) -> NumericValue:
    return NumericValue(Decimal(x))


@pytest.mark.parametrize("zh,en,expected", PAIRS, ids=[p[0] for p in PAIRS])
def test_fixture_pairs_agree(zh, en, expected):
    a, b = parse_number_zh(zh), parse_number_en(en)
    assert a is not None and b is not None
    assert a.value == b.value
    if "/" in expected:
        assert abs(Fraction(a.value) - Fraction(expected)) < Fraction(1, 10**50)
    else:
        assert a.value == Decimal(expected)


class TestChinese:
    def test_unit_chain(self):
        assert parse_number_zh("1976.6亿").value == Decimal("197660000000")

    def test_percent(self):
        v = parse_number_zh("百分之十")
        assert v.value == Decimal("0.1") and v.kind is NumberKind.PERCENT

    def test_fraction_kind(self):
        assert parse_number_zh("四分之三").kind is NumberKind.FRACTION

    def test_ordinal(self):
        v = parse_number_zh("第三")
        assert v.value == 3 and v.kind is NumberKind.ORDINAL

    def test_hedges_are_consumed(self):
        assert parse_number_zh("近200").value == 200
        assert parse_number_zh("二百多").value == 200

    def test_fullwidth_digits(self):
        assert parse_number_zh("１２３").value == 123

    @pytest.mark.parametrize("bad", ["十十", "千万", "万一", "", "亿", "第", "分之三", "abc"])
    def test_malformed(self, bad):
        assert parse_number_zh(bad) is None


class TestEnglish:
    def test_scale(self):
        v = parse_number_en("197.66 billion")
        assert v.value == Decimal("197660000000")

    def test_exactness(self):
        assert parse_number_en("197.66 billion") == parse_number_en("197.66 billion")
        assert parse_number_en("0.1 billion").value == Decimal("100000000")

    def test_per_cent(self):
        v = parse_number_en("75 per cent")
        assert v.value == Decimal("0.75") and v.kind is NumberKind.PERCENT

    def test_fraction(self):
        assert parse_number_en("three-fourths").value == Decimal("0.75")
        assert parse_number_en("two thirds").kind is NumberKind.FRACTION

    def test_hedge(self):
        assert parse_number_en("nearly 200").value == 200
        assert parse_number_en("more than 30").value == 30

    def test_ordinal(self):
        assert parse_number_en("third").kind is NumberKind.ORDINAL
        assert parse_number_en("21st").value == 21

    @pytest.mark.parametrize("bad", ["", "five five", "million million", "per cent", "nearly", "one thirds", "apple", "5 five"])
    def test_malformed(self, bad):
        assert parse_number_en(bad) is None


class TestDates:
    def test_english(self):
        assert parse_date("October 1", "en") == DateValue(month=10, day=1)
        assert parse_date("1 October 1995", "en") == DateValue(10, 1, 1995)

    def test_chinese(self):
        assert parse_date("十月一日", "zh") == DateValue(month=10, day=1)
        assert parse_date("1995年10月", "zh") == DateValue(month=10, year=1995)

    def test_absent_components_stay_absent(self):
        d = parse_date("June 1995", "en")
        assert d.day is None and d.month == 6 and d.year == 1995

    @pytest.mark.parametrize("bad", ["October 45", "Smarch 3", "February 30"])
    def test_invalid(self, bad):
        assert parse_date(bad, "en") is None

    def test_leap_day(self):
        assert make_date(2, 29, 1996) is not None
        assert make_date(2, 29, 1995) is None


class TestApprox:
    def test_examples(self):
        assert approx_equal(n(196), n(200))
        assert approx_equal(n(196), n(196))
        assert not approx_equal(n(196), n(300))

    def test_rounding_rule(self):
        # 1.44 million vs "1.4 million": 2.8% apart, and the rounded form
        assert approx_equal(n(1440000), n(1400000), tolerance=0.001)
        assert not approx_equal(n(1460000), n(1400000), tolerance=0.001)

    def test_zero(self):
        assert approx_equal(n(0), n(0))


_decimals = st.decimals(min_value=-10**9, max_value=10**9, allow_nan=False, allow_infinity=False, places=3)


@given(_decimals, _decimals)
def test_approx_symmetric(a, b):
    assert approx_equal(n(a), n(b)) == approx_equal(n(b), n(a))


@given(_decimals)
def test_approx_reflexive(a):
    assert approx_equal(n(a), n(a))


@given(st.integers(min_value=0, max_value=99_999_999))
def test_round_trip(k):
    assert parse_number_zh(zh_numeral(k)).value == k


@given(st.integers(min_value=0, max_value=10**15))
def test_digit_strings_shared(k):
    s = str(k)
    assert parse_number_zh(s).value == parse_number_en(s).value == k
