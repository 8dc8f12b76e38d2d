"""Anchor extraction, cross-language anchor matching and anchor valuation.

Anchors are numbers, dates and gazetteer place names.  Each document gets an
:class:`AnchorTable`; anchors sharing a canonical key form a chain, and
chains (not single occurrences) are what get matched across languages.
"""

from __future__ import annotations

import bisect
import calendar
import re
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Union

from .config import AlignConfig
from .numerals import (
    EN_DENOMINATORS, EN_HEDGES, EN_SCALES, EN_TOKEN, MONTHS, ZH_DATE, ZH_DIGITS,
    ZH_PREFIX_HEDGES, ZH_SUFFIX_HEDGES, DateValue, NumberKind, NumericValue,
    _en_ordinal_value, _en_word_value, approx_equal, make_date, parse_date,
    parse_number_en, parse_number_zh,
)
from .segmentation import Document, Language


class GazetteerError(ValueError):
    pass


class AnchorKind(str, Enum):
    NUMBER = "number"
    DATE = "date"
    PLACE = "place"


# ---------------------------------------------------------------------------
# Gazetteer


@dataclass(frozen=True)
class GazetteerEntry:
    canonical_id: str
    english: tuple[str, ...]
    chinese: tuple[str, ...]


def _norm_en(name: str) -> str:
    return " ".join(name.split()).casefold()


class Gazetteer:
    """Bilingual place-name table with two sorted indexes searched by bisection."""

    def __init__(self, entries: Iterable[GazetteerEntry] = ()):
        self.entries: tuple[GazetteerEntry, ...] = tuple(entries)
        en: dict[str, str] = {}
        zh: dict[str, str] = {}
        for e in self.entries:
            for index, names, norm in ((en, e.english, _norm_en), (zh, e.chinese, str.strip)):
                for name in names:
                    key = norm(name)
                    if key in index and index[key] != e.canonical_id:
                        raise GazetteerError(f"name {name!r} used by both {index[key]} and {e.canonical_id}")
                    index[key] = e.canonical_id
        self._en_keys, self._en_ids = _sorted_index(en)
        self._zh_keys, self._zh_ids = _sorted_index(zh)
        self._en_max = max(map(len, self._en_keys), default=0)
        self._zh_max = max(map(len, self._zh_keys), default=0)

    def __len__(self) -> int:
        return len(self.entries)

    @staticmethod
    def _find(keys: list[str], ids: list[str], key: str) -> str | None:
        k = bisect.bisect_left(keys, key)
        return ids[k] if k < len(keys) and keys[k] == key else None

    def lookup_english(self, name: str) -> str | None:
        return self._find(self._en_keys, self._en_ids, _norm_en(name))

    def lookup_chinese(self, name: str) -> str | None:
        return self._find(self._zh_keys, self._zh_ids, name.strip())

    def match_english_at(self, text: str, pos: int) -> tuple[int, str] | None:
        """Longest place name starting at word boundary ``pos``: (end, id)."""
        if pos > 0 and text[pos - 1].isalnum():
            return None
        limit = min(len(text), pos + self._en_max + 8)
        for end in range(limit, pos, -1):
            last = text[end - 1]
            if not (last.isalnum() or last == "."):
                continue
            if end < len(text) and text[end].isalnum():
                continue
            hit = self.lookup_english(text[pos:end])
            if hit is not None:
                return end, hit
        return None

    def match_chinese_at(self, text: str, pos: int) -> tuple[int, str] | None:
        for end in range(min(len(text), pos + self._zh_max), pos, -1):
            hit = self._find(self._zh_keys, self._zh_ids, text[pos:end])
            if hit is not None:
                return end, hit
        return None


def _sorted_index(index: dict[str, str]) -> tuple[list[str], list[str]]:
    pairs = sorted(index.items())
    return [k for k, _ in pairs], [v for _, v in pairs]


def parse_gazetteer(lines: Iterable[str]) -> Gazetteer:
    entries = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3 or not all(c.strip() for c in cols):
            raise GazetteerError(f"line {lineno}: expected 3 tab-separated columns")
        cid = cols[0].strip()
        if cid in seen:
            raise GazetteerError(f"line {lineno}: duplicate id {cid!r} (first on line {seen[cid]})")
        seen[cid] = lineno
        en = tuple(n.strip() for n in cols[1].split("|") if n.strip())
        zh = tuple(n.strip() for n in cols[2].split("|") if n.strip())
        entries.append(GazetteerEntry(cid, en, zh))
    try:
        return Gazetteer(entries)
    except GazetteerError as exc:
        raise GazetteerError(str(exc)) from None


def load_gazetteer(path: str | Path | None = None) -> Gazetteer:
    """Load a TSV gazetteer; ``None`` loads the bundled seed list."""
    if path is None:
        text = resources.files("cnsalign.data").joinpath("gazetteer.tsv").read_text("utf-8")
        return parse_gazetteer(text.splitlines())
    with open(path, encoding="utf-8") as fh:
        return parse_gazetteer(fh)


# ---------------------------------------------------------------------------
# Anchors

AnchorValue = Union[NumericValue, DateValue, str]


@dataclass(frozen=True)
class Anchor:
    kind: AnchorKind
    value: AnchorValue
    surface: str
    paragraph_index: int
    clause_no: int
    char_span: tuple[int, int]  # offsets inside the clause text
    word_form_small: bool = False

    @property
    def key(self) -> tuple:
        if self.kind is AnchorKind.NUMBER:
            return (self.kind.value, self.value.value.normalize())
        if self.kind is AnchorKind.DATE:
            return (self.kind.value, self.value.year, self.value.month, self.value.day)
        return (self.kind.value, self.value)

    @property
    def position(self) -> tuple[int, int, int]:
        return (self.paragraph_index, self.clause_no, self.char_span[0])


@dataclass(frozen=True)
class AnchorTable:
    anchors: tuple[Anchor, ...]
    chains: dict = field(hash=False)  # key -> tuple of anchor indices, document order

    @classmethod
    def build(cls, anchors: Iterable[Anchor]) -> "AnchorTable":
        anchors = tuple(anchors)
        chains: dict[tuple, list[int]] = {}
        for n, a in enumerate(anchors):
            chains.setdefault(a.key, []).append(n)
        return cls(anchors, {k: tuple(v) for k, v in chains.items()})

    def chain(self, key: tuple) -> tuple[Anchor, ...]:
        return tuple(self.anchors[n] for n in self.chains[key])


_MONTH_NAMES = "|".join(sorted((m.capitalize() for m in MONTHS), key=len, reverse=True))
_EN_DATE_SCAN = re.compile(
    rf"(?P<month>{_MONTH_NAMES})\b(?P<dot>\.)?"
    r"(?:\s+(?P<day>\d{1,2})(?:st|nd|rd|th)?\b)?(?:,?\s+(?P<year>\d{4})\b)?"
)
_EN_DATE_DMY_SCAN = re.compile(
    rf"(?P<day>\d{{1,2}})(?:st|nd|rd|th)?\s+(?P<month>{_MONTH_NAMES})\b\.?(?:,?\s+(?P<year>\d{{4}})\b)?"
)
# month names that are also ordinary words need a day or year to count
_AMBIGUOUS_MONTHS = {"May", "March"}
_FULL_MONTHS = set(calendar.month_name[1:])

_EN_NUMERIC_TOKEN = re.compile(r"(?:\d{1,3}(?:,\d{3})+|\d+)(?:\.\d+)?(?:st|nd|rd|th)?%?")
_EN_HEDGE_FIRST = {h.split()[0] for h in EN_HEDGES}

_ZH_CORE = (
    r"[0-9０-９零〇○一二两三四五六七八九十百千万亿]+(?:,\d{3})*"
    r"(?:[.．点][0-9０-９零〇一二三四五六七八九]+)?[十百千万亿]*"
)
_ZH_NUMBER = re.compile(
    rf"(?:{'|'.join(ZH_PREFIX_HEDGES)})?"
    rf"(?:百分之{_ZH_CORE}|{_ZH_CORE}分之{_ZH_CORE}|第{_ZH_CORE}|{_ZH_CORE}[%％]?)"
    rf"(?:{'|'.join(ZH_SUFFIX_HEDGES)})?"
)
# words containing numerals that are not numbers
_ZH_IDIOMS = ("十分", "万分", "千万", "万一")


def _en_numberish(tokens: list[str], k: int, first: bool) -> bool:
    t = tokens[k].lower()
    nxt = tokens[k + 1].lower() if k + 1 < len(tokens) else ""
    if _EN_NUMERIC_TOKEN.fullmatch(t) or t == "%":
        return True
    if _en_word_value(t) is not None or _en_ordinal_value(t) is not None:
        return True
    if t == "hundred" or t in EN_SCALES or t == "percent":
        return True
    if "-" in t and t.rpartition("-")[2] in EN_DENOMINATORS:
        return True
    if first:
        if t in ("a", "an"):
            return nxt == "hundred" or nxt in EN_SCALES or nxt in ("half", "quarter")
        return t in _EN_HEDGE_FIRST
    return t in ("and", "per", "cent", "than", "to") or t in EN_DENOMINATORS


def _en_small(tokens: list[str], value: NumericValue) -> bool:
    if value.kind is NumberKind.PERCENT or not 0 <= value.value <= 2:
        return False
    return not any(ch.isdigit() for tok in tokens for ch in tok)


def _en_date_at(text: str, pos: int) -> tuple[int, DateValue] | None:
    m = _EN_DATE_SCAN.match(text, pos) or _EN_DATE_DMY_SCAN.match(text, pos)
    if not m:
        return None
    name = m.group("month")
    month = MONTHS[name.lower()]
    day = int(m.group("day")) if m.group("day") else None
    year = int(m.group("year")) if m.group("year") else None
    if day is not None or year is not None:
        d = make_date(month, day, year)
        if d is not None:
            return m.end(), d
        if m.re is _EN_DATE_DMY_SCAN:
            return None
    # bare month ("October 45" falls back to this too)
    if name not in _FULL_MONTHS or name in _AMBIGUOUS_MONTHS:
        return None
    return m.end("month"), DateValue(month)


def _scan_english(text: str, gaz: Gazetteer) -> list[tuple[int, int, AnchorKind, AnchorValue, bool]]:
    matches = list(EN_TOKEN.finditer(text))
    words = [m.group() for m in matches]
    found = []
    k = 0
    while k < len(matches):
        start = matches[k].start()

        date = _en_date_at(text, start)
        if date is not None:
            end, value = date
            found.append((start, end, AnchorKind.DATE, value, False))
            while k < len(matches) and matches[k].start() < end:
                k += 1
            continue

        j = k
        while j < len(words) and _en_numberish(words, j, j == k):
            j += 1
        number = None
        for stop in range(j, k, -1):
            v = parse_number_en(words[k:stop])
            if v is not None:
                number = (stop, v)
                break
        if number is not None:
            stop, v = number
            if v.kind is not NumberKind.ORDINAL:
                found.append((start, matches[stop - 1].end(), AnchorKind.NUMBER, v,
                              _en_small(words[k:stop], v)))
            k = stop
            continue

        place = gaz.match_english_at(text, start)
        if place is not None:
            end, pid = place
            found.append((start, end, AnchorKind.PLACE, pid, False))
            while k < len(matches) and matches[k].start() < end:
                k += 1
            continue
        k += 1
    return found


def _zh_small(surface: str, value: NumericValue) -> bool:
    core = surface
    for h in ZH_PREFIX_HEDGES:
        if core.startswith(h):
            core = core[len(h):]
            break
    return len(core) == 1 and core in ZH_DIGITS and value.value <= 2


def _scan_chinese(text: str, gaz: Gazetteer) -> list[tuple[int, int, AnchorKind, AnchorValue, bool]]:
    found = []
    pos = 0
    while pos < len(text):
        m = ZH_DATE.match(text, pos)
        if m and m.group("month"):
            d = parse_date(m.group(), "zh")
            if d is not None:
                found.append((pos, m.end(), AnchorKind.DATE, d, False))
                pos = m.end()
                continue

        if text.startswith(_ZH_IDIOMS, pos) and not text.startswith("分之", pos + 1):
            pos += 2
            continue
        m = _ZH_NUMBER.match(text, pos)
        if m:
            for end in range(m.end(), pos, -1):
                v = parse_number_zh(text[pos:end])
                if v is not None:
                    break
            if v is not None:
                surface = text[pos:end]
                if v.kind is not NumberKind.ORDINAL:
                    found.append((pos, end, AnchorKind.NUMBER, v, _zh_small(surface, v)))
                pos = end
                continue

        place = gaz.match_chinese_at(text, pos)
        if place is not None:
            end, pid = place
            found.append((pos, end, AnchorKind.PLACE, pid, False))
            pos = end
            continue
        pos += 1
    return found


def extract_anchors(doc: Document, gaz: Gazetteer) -> AnchorTable:
    scan = _scan_chinese if doc.language is Language.CHINESE else _scan_english
    anchors = []
    for para in doc.paragraphs:
        for clause in para.clauses:
            for start, end, kind, value, small in scan(clause.text, gaz):
                anchors.append(Anchor(kind, value, clause.text[start:end], para.index,
                                      clause.clause_no, (start, end), small))
    return AnchorTable.build(anchors)


# ---------------------------------------------------------------------------
# Matching


@dataclass(frozen=True)
class MatchedAnchor:
    english: tuple[Anchor, ...]
    chinese: tuple[Anchor, ...]
    kind: AnchorKind
    is_repeated: bool = False
    is_approximate: bool = False
    is_small_word: bool = False

    def paragraph_range(self, side: str) -> tuple[int, int]:
        anchors = self.english if side == "e" else self.chinese
        idx = [a.paragraph_index for a in anchors]
        return min(idx), max(idx)


def _make_match(e: tuple[Anchor, ...], c: tuple[Anchor, ...], approximate: bool) -> MatchedAnchor:
    return MatchedAnchor(
        english=e,
        chinese=c,
        kind=e[0].kind,
        is_repeated=len(e) > 1 or len(c) > 1,
        is_approximate=approximate,
        is_small_word=any(a.word_form_small for a in e + c),
    )


def _relative_gap(x: Decimal, y: Decimal) -> Decimal:
    top = max(abs(x), abs(y))
    return abs(x - y) / top if top else Decimal(0)


def match_anchors(table_e: AnchorTable, table_c: AnchorTable,
                  cfg: AlignConfig | None = None) -> list[MatchedAnchor]:
    """Pair English and Chinese chains: exact keys first, then approximate numbers."""
    cfg = cfg or AlignConfig()
    out = []
    done_e, done_c = set(), set()
    for key in table_e.chains:
        if key in table_c.chains:
            out.append(_make_match(table_e.chain(key), table_c.chain(key), False))
            done_e.add(key)
            done_c.add(key)

    candidates = []
    rest_c = [k for k in table_c.chains if k not in done_c and k[0] == AnchorKind.NUMBER.value]
    for ke in table_e.chains:
        if ke in done_e or ke[0] != AnchorKind.NUMBER.value:
            continue
        ve = table_e.anchors[table_e.chains[ke][0]].value
        for kc in rest_c:
            vc = table_c.anchors[table_c.chains[kc][0]].value
            if approx_equal(ve, vc, cfg.approx_tolerance):
                pe = table_e.anchors[table_e.chains[ke][0]].position
                pc = table_c.anchors[table_c.chains[kc][0]].position
                # order-independent tie-break keeps matching symmetric in the two tables
                candidates.append((_relative_gap(ve.value, vc.value), tuple(sorted((pe, pc))),
                                   tuple(sorted((ke[1], kc[1]))), ke, kc))
    candidates.sort(key=lambda c: c[:3])
    for _, _, _, ke, kc in candidates:
        if ke in done_e or kc in done_c:
            continue
        out.append(_make_match(table_e.chain(ke), table_c.chain(kc), True))
        done_e.add(ke)
        done_c.add(kc)
    out.sort(key=lambda ma: ma.english[0].position)
    return out


def anchor_weight(kind: AnchorKind, cfg: AlignConfig) -> float:
    return {AnchorKind.NUMBER: cfg.w_number, AnchorKind.PLACE: cfg.w_place,
            AnchorKind.DATE: cfg.w_date}[kind]


def anchor_value(ma: MatchedAnchor, cfg: AlignConfig | None = None) -> float:
    """V = W(kind) * F_R * F_A * F_small."""
    cfg = cfg or AlignConfig()
    v = anchor_weight(ma.kind, cfg)
    if ma.is_repeated:
        v *= cfg.factor_repetition
    if ma.is_approximate:
        v *= cfg.factor_approx
    if ma.is_small_word:
        v *= cfg.factor_small_word
    return v
