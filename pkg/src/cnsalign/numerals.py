"""Chinese and English numeral / date normalization to exact decimal values.

Values are :class:`decimal.Decimal` so that ``1976.6亿`` and
``197.66 billion`` compare equal without binary-float drift.
"""

from __future__ import annotations

import calendar
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Context, Decimal, InvalidOperation
from enum import Enum
from typing import Sequence

_CTX = Context(prec=60)


class NumberKind(str, Enum):
    CARDINAL = "cardinal"
    PERCENT = "percent"
    FRACTION = "fraction"
    ORDINAL = "ordinal"


@dataclass(frozen=True)
class NumericValue:
    """An exact number.  Percents and fractions hold their cardinal value (10% -> 0.10)."""

    value: Decimal
    kind: NumberKind = NumberKind.CARDINAL

    def __str__(self) -> str:
        return format(self.value.normalize(_CTX), "f")


@dataclass(frozen=True)
class DateValue:
    month: int | None = None
    day: int | None = None
    year: int | None = None


# ---------------------------------------------------------------------------
# Chinese

ZH_DIGITS = {"零": 0, "〇": 0, "○": 0, "一": 1, "二": 2, "两": 2, "三": 3, "四": 4,
             "五": 5, "六": 6, "七": 7, "八": 8, "九": 9}
ZH_SMALL_UNITS = {"十": 10, "百": 100, "千": 1000}
ZH_BIG_UNITS = {"万": 10**4, "亿": 10**8}
ZH_UNITS = {**ZH_SMALL_UNITS, **ZH_BIG_UNITS}
ZH_PREFIX_HEDGES = ("大约", "将近", "超过", "近", "约", "逾")
ZH_SUFFIX_HEDGES = ("多", "余")

_FULLWIDTH = str.maketrans("０１２３４５６７８９．％，", "0123456789.%,")
_ARABIC = re.compile(r"\d{1,3}(?:,\d{3})+|\d+")


def _zh_tokens(s: str) -> list[tuple[str, object]] | None:
    out: list[tuple[str, object]] = []
    k = 0
    while k < len(s):
        m = _ARABIC.match(s, k)
        if m:
            out.append(("num", Decimal(m.group().replace(",", ""))))
            k = m.end()
            continue
        ch = s[k]
        if ch in ZH_DIGITS:
            out.append(("zero", 0) if ZH_DIGITS[ch] == 0 else ("dig", ZH_DIGITS[ch]))
        elif ch in ZH_UNITS:
            out.append(("unit", ZH_UNITS[ch]))
        else:
            return None
        k += 1
    return out


def _zh_integer(s: str) -> Decimal | None:
    tokens = _zh_tokens(s)
    if not tokens:
        return None
    kinds = {t for t, _ in tokens}
    if kinds <= {"dig", "zero"}:
        # digit string such as 一九九五 / 二〇〇〇
        return Decimal("".join(str(v) for _, v in tokens))
    if len(tokens) == 1 and tokens[0][0] == "num":
        return tokens[0][1]

    result = section = small = Decimal(0)
    pending: Decimal | None = None
    pending_single_zh = False
    last_small: int | None = None
    last_unit: int | None = None
    zero_before = False
    wan_seen = False
    for kind, v in tokens:
        if kind in ("num", "dig"):
            if pending is not None:
                return None
            pending = Decimal(v)
            pending_single_zh = kind == "dig"
        elif kind == "zero":
            if pending is not None:
                return None
            zero_before = True
        elif v in ZH_SMALL_UNITS.values():
            if pending is None:
                if v != 10:
                    return None
                pending = Decimal(1)
            if last_small is not None and v >= last_small:
                return None
            small += pending * v
            pending, last_small, last_unit, zero_before = None, v, v, False
        else:
            val = small + (pending or 0)
            if v == 10**4:
                if val == 0 or wan_seen:
                    return None
                section += val * v
                wan_seen = True
            else:
                val += section
                if val == 0:
                    return None
                result = (result + val) * v
                section, wan_seen = Decimal(0), False
            small, pending, last_small, last_unit, zero_before = Decimal(0), None, None, v, False
    if pending is not None and pending_single_zh and not zero_before and last_unit and last_unit >= 100:
        # 三千五 = 3500, 一万五 = 15000
        pending *= last_unit // 10
    return result + section + small + (pending or 0)


def _zh_decimal(s: str) -> Decimal | None:
    """Integer or decimal with optional trailing unit chain (1976.6亿, 三点五万)."""
    point = next((k for k, ch in enumerate(s) if ch in ".点"), -1)
    if point < 0:
        return _zh_integer(s)
    head, rest = s[:point], s[point + 1 :]
    k = 0
    while k < len(rest) and (rest[k].isdigit() or rest[k] in ZH_DIGITS):
        k += 1
    digits, tail = rest[:k], rest[k:]
    if not head or not digits or any(ch not in ZH_UNITS for ch in tail):
        return None
    whole = _zh_integer(head)
    if whole is None:
        return None
    frac = Decimal("0." + "".join(ch if ch.isdigit() else str(ZH_DIGITS[ch]) for ch in digits))
    value = whole + frac
    for ch in tail:
        value *= ZH_UNITS[ch]
    return value


def _zh_denominator(s: str) -> Decimal | None:
    if s and s[0] in ZH_UNITS:
        s = "一" + s
    return _zh_integer(s)


def _strip_hedges(s: str, prefixes: Sequence[str], suffixes: Sequence[str]) -> str:
    for h in prefixes:
        if s.startswith(h) and len(s) > len(h):
            s = s[len(h):]
            break
    for h in suffixes:
        if s.endswith(h) and len(s) > len(h):
            s = s[: -len(h)]
            break
    return s


def parse_number_zh(s: str) -> NumericValue | None:
    """Parse a Chinese numeral expression into an exact value.

    >>> parse_number_zh("1976.6亿").value == Decimal("197660000000")
    True
    >>> parse_number_zh("百分之十")
    NumericValue(value=Decimal('0.1'), kind=<NumberKind.PERCENT: 'percent'>)
    """
    try:
        return _parse_number_zh(s)
    except (InvalidOperation, ValueError, KeyError):
        return None


def _parse_number_zh(s: str) -> NumericValue | None:
    s = _strip_hedges(s.strip().translate(_FULLWIDTH), ZH_PREFIX_HEDGES, ZH_SUFFIX_HEDGES)
    if not s:
        return None
    if s.startswith("第"):
        v = _zh_integer(s[1:])
        return None if v is None else NumericValue(v, NumberKind.ORDINAL)
    if s.startswith("百分之"):
        v = _zh_decimal(s[3:])
        return None if v is None else NumericValue(_CTX.divide(v, 100), NumberKind.PERCENT)
    if s.endswith("%"):
        v = _zh_decimal(s[:-1])
        return None if v is None else NumericValue(_CTX.divide(v, 100), NumberKind.PERCENT)
    if "分之" in s:
        den_s, num_s = s.split("分之", 1)
        den, num = _zh_denominator(den_s), _zh_decimal(num_s)
        if den is None or num is None or den == 0:
            return None
        return NumericValue(_CTX.divide(num, den), NumberKind.FRACTION)
    v = _zh_decimal(s)
    return None if v is None else NumericValue(v)


# ---------------------------------------------------------------------------
# English

EN_UNITS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
    "thirteen": 13, "fourteen": 14, "fifteen": 15, "sixteen": 16,
    "seventeen": 17, "eighteen": 18, "nineteen": 19,
}
EN_TENS = {"twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60,
           "seventy": 70, "eighty": 80, "ninety": 90}
EN_SCALES = {"thousand": 10**3, "million": 10**6, "billion": 10**9, "trillion": 10**12}
EN_ORDINALS = {
    "first": 1, "second": 2, "third": 3, "fourth": 4, "fifth": 5, "sixth": 6,
    "seventh": 7, "eighth": 8, "ninth": 9, "tenth": 10, "eleventh": 11,
    "twelfth": 12, "thirteenth": 13, "fourteenth": 14, "fifteenth": 15,
    "sixteenth": 16, "seventeenth": 17, "eighteenth": 18, "nineteenth": 19,
    "twentieth": 20, "thirtieth": 30, "fortieth": 40, "fiftieth": 50,
    "sixtieth": 60, "seventieth": 70, "eightieth": 80, "ninetieth": 90,
    "hundredth": 100, "thousandth": 1000,
}
# denominators usable in "three-fourths", "two thirds", "a half"
EN_DENOMINATORS = {
    "half": 2, "halves": 2, "quarter": 4, "quarters": 4,
    **{w + "s": v for w, v in EN_ORDINALS.items() if v > 2},
    **{w: v for w, v in EN_ORDINALS.items() if v > 2},
}
EN_HEDGES = {"nearly", "about", "around", "approximately", "almost", "some", "roughly",
             "over", "more than", "less than", "up to", "close to"}
EN_PERCENT = ("per cent", "percent", "%")

_EN_DIGITS = re.compile(r"(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?")
_EN_DIGIT_ORDINAL = re.compile(r"(\d+)(st|nd|rd|th)")
EN_TOKEN = re.compile(
    r"(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?(?:st|nd|rd|th)?%?(?!\w)"
    r"|\d\w*|[A-Za-z]+(?:['-][A-Za-z]+)*|%|\S"
)


def tokenize_en(text: str) -> list[str]:
    return EN_TOKEN.findall(text)


def _en_word_value(word: str) -> int | None:
    """Value of a cardinal word below 100 (``seven``, ``twenty-three``)."""
    if word in EN_UNITS:
        return EN_UNITS[word]
    if word in EN_TENS:
        return EN_TENS[word]
    if "-" in word:
        tens, _, unit = word.partition("-")
        if tens in EN_TENS and unit in EN_UNITS and 0 < EN_UNITS[unit] < 10:
            return EN_TENS[tens] + EN_UNITS[unit]
    return None


def _en_ordinal_value(word: str) -> int | None:
    if word in EN_ORDINALS:
        return EN_ORDINALS[word]
    m = _EN_DIGIT_ORDINAL.fullmatch(word)
    if m:
        return int(m.group(1))
    tens, _, unit = word.partition("-")
    if unit and tens in EN_TENS and unit in EN_ORDINALS and EN_ORDINALS[unit] < 10:
        return EN_TENS[tens] + EN_ORDINALS[unit]
    return None


def _en_words(words: list[str]) -> Decimal | None:
    """Cardinal value of a run of number words, or None if ill-formed."""
    if not words:
        return None
    if words[0] in ("a", "an"):
        if len(words) < 2 or (words[1] != "hundred" and words[1] not in EN_SCALES):
            return None
        words = ["one"] + words[1:]
    total = current = 0
    prev = None  # "small", "hundred", "scale", "and"
    for w in words:
        v = _en_word_value(w)
        if v is not None:
            if prev == "small":
                # "twenty three" is fine, "three four" is not
                if not (current % 100 in EN_TENS.values() and current % 10 == 0 and 0 < v < 10):
                    return None
            current += v
            prev = "small"
        elif w == "hundred":
            if prev not in ("small", None) or current >= 100:
                return None
            current = (current or 1) * 100
            prev = "hundred"
        elif w in EN_SCALES:
            if prev in ("and", None):
                return None
            total += (current or 1) * EN_SCALES[w]
            current = 0
            prev = "scale"
        elif w == "and":
            if prev not in ("hundred", "scale"):
                return None
            prev = "and"
        else:
            return None
    if prev == "and":
        return None
    return Decimal(total + current)


def _en_fraction(words: list[str]) -> Decimal | None:
    if len(words) == 1 and "-" in words[0]:
        num_w, _, den_w = words[0].rpartition("-")
        words = [num_w, den_w]
    if len(words) != 2 or words[1] not in EN_DENOMINATORS:
        return None
    num = 1 if words[0] in ("a", "an") else _en_word_value(words[0])
    if not num:
        return None
    den_w = words[1]
    singular = den_w in ("half", "quarter") or den_w in EN_ORDINALS
    # "one third", "two thirds"; not "two third" or "one thirds"
    if singular != (num == 1):
        return None
    return _CTX.divide(Decimal(num), Decimal(EN_DENOMINATORS[den_w]))


def parse_number_en(tokens: Sequence[str] | str) -> NumericValue | None:
    """Parse a maximal English numeric phrase.

    >>> str(parse_number_en("197.66 billion"))
    '197660000000'
    >>> parse_number_en("three-fourths").value
    Decimal('0.75')
    """
    if isinstance(tokens, str):
        tokens = tokenize_en(tokens)
    words = [t.lower() for t in tokens]
    if not words:
        return None
    # hedges do not change the value
    for n in (2, 1):
        if len(words) > n and " ".join(words[:n]) in EN_HEDGES:
            words = words[n:]
            break

    kind = NumberKind.CARDINAL
    if words[-1].endswith("%") and words[-1] != "%":
        words[-1] = words[-1][:-1]
        kind = NumberKind.PERCENT
    elif words[-1] in ("%", "percent"):
        words, kind = words[:-1], NumberKind.PERCENT
    elif words[-2:] == ["per", "cent"]:
        words, kind = words[:-2], NumberKind.PERCENT
    if not words:
        return None

    value: Decimal | None
    if _EN_DIGITS.fullmatch(words[0]):
        value = Decimal(words[0].replace(",", ""))
        for w in words[1:]:
            if w == "hundred":
                value *= 100
            elif w in EN_SCALES:
                value *= EN_SCALES[w]
            else:
                return None
    elif len(words) == 1 and _en_ordinal_value(words[0]) is not None and kind is NumberKind.CARDINAL:
        return NumericValue(Decimal(_en_ordinal_value(words[0])), NumberKind.ORDINAL)
    else:
        value = _en_words(words)
        if value is None:
            frac = _en_fraction(words)
            if frac is None:
                return None
            if kind is NumberKind.PERCENT:
                return None
            return NumericValue(frac, NumberKind.FRACTION)
    if kind is NumberKind.PERCENT:
        value = _CTX.divide(value, 100)
    return NumericValue(value, kind)


# ---------------------------------------------------------------------------
# Dates

MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11,
    "december": 12, "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7,
    "aug": 8, "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}

_EN_DATE_MDY = re.compile(
    r"(?P<month>[A-Za-z]+)\.?(?:\s+(?P<day>\d{1,2})(?:st|nd|rd|th)?)?(?:,?\s+(?P<year>\d{4}))?"
)
_EN_DATE_DMY = re.compile(
    r"(?P<day>\d{1,2})(?:st|nd|rd|th)?\s+(?P<month>[A-Za-z]+)\.?(?:,?\s+(?P<year>\d{4}))?"
)
_ZH_NUM = r"[0-9０-９零〇一二两三四五六七八九十]+"
ZH_DATE = re.compile(
    rf"(?:(?P<year>[0-9０-９零〇○一二三四五六七八九]{{2,4}})年)?"
    rf"(?:(?P<month>{_ZH_NUM})月)?(?:(?P<day>{_ZH_NUM})[日号])?"
)


def make_date(month: int | None, day: int | None, year: int | None) -> DateValue | None:
    """Validated DateValue, or None if a present component is out of range."""
    if month is None and day is None and year is None:
        return None
    if month is not None and not 1 <= month <= 12:
        return None
    if day is not None:
        if month is None:
            limit = 31
        elif year is not None:
            limit = calendar.monthrange(year, month)[1]
        else:
            limit = 29 if month == 2 else calendar.monthrange(2001, month)[1]
        if not 1 <= day <= limit:
            return None
    return DateValue(month, day, year)


def _zh_int(s: str | None) -> int | None:
    if s is None:
        return None
    v = parse_number_zh(s)
    if v is None or v.kind is not NumberKind.CARDINAL or v.value != v.value.to_integral_value():
        raise ValueError(s)
    return int(v.value)


def parse_date(s: str, language: str) -> DateValue | None:
    """Parse ``October 1`` / ``1 October 1995`` / ``十月一日`` style dates."""
    s = s.strip()
    if str(getattr(language, "value", language)) == "zh":
        m = ZH_DATE.fullmatch(s.translate(_FULLWIDTH))
        if not m or (m.group("month") is None and m.group("day") is None):
            return None
        try:
            return make_date(_zh_int(m.group("month")), _zh_int(m.group("day")), _zh_int(m.group("year")))
        except ValueError:
            return None
    m = _EN_DATE_MDY.fullmatch(s) or _EN_DATE_DMY.fullmatch(s)
    if not m or m.group("month").lower() not in MONTHS:
        return None
    day, year = m.group("day"), m.group("year")
    return make_date(MONTHS[m.group("month").lower()], int(day) if day else None,
                     int(year) if year else None)


# ---------------------------------------------------------------------------
# Approximate comparison


def round_significant(x: Decimal, digits: int) -> Decimal:
    return Context(prec=digits, rounding=ROUND_HALF_UP).plus(x)


def approx_equal(a: NumericValue, b: NumericValue, tolerance: float | Decimal = Decimal("0.05")) -> bool:
    """Relative closeness, or one value being the other rounded to 1-2 significant digits."""
    x, y = a.value, b.value
    if x == y:
        return True
    tol = Decimal(str(tolerance))
    if abs(x - y) <= tol * max(abs(x), abs(y)):
        return True
    for n in (1, 2):
        if round_significant(x, n) == y or round_significant(y, n) == x:
            return True
    return False
