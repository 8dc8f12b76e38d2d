"""Synthetic bilingual news-like corpus with known gold alignment.

Chinese clauses get random lengths; each translation unit (1<->1, 1<->n or
n<->1 clauses) gets an English length drawn from Normal(r*l_c, l_c*sigma2),
counted the same way the aligner counts (non-whitespace, punctuation
included).  Shared anchors are planted at matching positions.  Paragraph
groups are then merged, split or dropped to give 1<->n, n<->1 and 0<->1
paragraph pairs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from decimal import Decimal
from pathlib import Path

from .anchors import Gazetteer, load_gazetteer
from .config import AlignConfig
from .segmentation import default_abbreviations
from .evaluation import GoldAlignment, GoldParagraph, format_gold
from .numerals import (
    EN_DENOMINATORS, EN_HEDGES, EN_ORDINALS, EN_SCALES, EN_TENS, EN_UNITS, MONTHS, approx_equal,
    NumericValue, NumberKind,
)

_ZH_DIGIT_CHARS = "零一二三四五六七八九"

# Filler pool; anything that could read as a numeral, date, hedge or place is removed below.
_ZH_POOL = (
    "的是在不了有和人这个为上我以要他时来用们生到作地于出就对成会可主发动同工也能下过子说产"
    "种面而方后定行学法所民得经进着等部度家电力里如水化高自理起小物现实加都体制机当使从业本去"
    "把性好应开它合还因由其些然前外天政那社义事平形相全表间样与关各重新线内数正心反你明看原又"
    "么利比或但质气向道命此变条只没结解问意建公无系军很情者最立代想已通并提直题党程展果料象员"
    "革位入常文总次品式活设及管特件长求老头基资边流路级少图山统接知较组见计别她手角期根论运农"
    "指几区强放决西被干做必战先回则任取据处府研增往"
)
_ZH_EXCLUDED = set("零〇○一二两三四五六七八九十百千万亿年月日号分之第点约近逾多余超过将大")

_EN_EXTRA = {"and", "per", "cent", "percent", "than", "to", "a", "an", "hundred", "st", "nd", "rd", "th"}
_CONSONANTS = "bcdfghjklmnprstvwz"
_VOWELS = "aeiou"


class SynthError(ValueError):
    pass


@dataclass(frozen=True)
class SynthParams:
    paragraphs: int = 8            # mean number of paragraph groups
    merge: float = 0.2             # P(one English paragraph covers 2-3 Chinese ones)
    split: float = 0.1             # P(one Chinese paragraph is split over 2-3 English ones)
    drop: float = 0.1              # P(an untranslated Chinese paragraph)
    anchors: float = 0.5           # anchors per Chinese clause
    clause_length: float = 18.0    # mean Chinese characters per clause, before punctuation
    clauses_per_paragraph: tuple[int, int] = (2, 9)
    noise: bool = True
    r: float = AlignConfig.r
    sigma2: float = AlignConfig.sigma2

    def validate(self) -> "SynthParams":
        probs = {"merge": self.merge, "split": self.split, "drop": self.drop}
        for name, p in probs.items():
            if not 0.0 <= p <= 1.0 or math.isnan(p):
                raise SynthError(f"{name} probability must be in [0, 1], got {p}")
        if sum(probs.values()) > 1.0:
            raise SynthError("merge + split + drop probabilities exceed 1")
        if self.anchors < 0 or self.paragraphs < 1 or self.clause_length <= 0:
            raise SynthError("anchors must be >= 0, paragraphs >= 1, clause_length > 0")
        lo, hi = self.clauses_per_paragraph
        if not 1 <= lo <= hi:
            raise SynthError("clauses_per_paragraph must satisfy 1 <= lo <= hi")
        return self


@dataclass(frozen=True)
class SyntheticPair:
    pair_id: str
    text_e: str
    text_c: str
    gold: GoldAlignment
    # (l_e, l_c) of every translation unit, as planted
    units: tuple[tuple[int, int], ...] = field(default=(), repr=False)


# ---------------------------------------------------------------------------
# Numeral rendering for the Chinese side


def render_zh_integer(n: int) -> str:
    """Canonical Chinese numerals for 0 <= n < 10**12."""
    if n == 0:
        return "零"

    def below_10k(k: int) -> str:
        out, zero = "", False
        for unit_value, unit in ((1000, "千"), (100, "百"), (10, "十"), (1, "")):
            d = k // unit_value % 10
            if d == 0:
                zero = bool(out)
                continue
            if zero:
                out += "零"
                zero = False
            out += _ZH_DIGIT_CHARS[d] + unit
        return out

    groups = [(n // 10**8) % 10**4, (n // 10**4) % 10**4, n % 10**4]
    out = ""
    for g, unit in zip(groups, ("亿", "万", "")):
        if g == 0:
            continue
        if out and g < 1000:
            out += "零"
        out += below_10k(g) + unit
    if out.startswith("一十"):
        out = out[1:]
    return out


# ---------------------------------------------------------------------------
# Anchors


@dataclass(frozen=True)
class _AnchorPair:
    key: object
    zh: str
    en: str


def _fmt_decimal(d: Decimal) -> str:
    return format(d.normalize(), "f")


class _AnchorMaker:
    def __init__(self, rng: random.Random, gaz: Gazetteer):
        self.rng = rng
        self.places = [e for e in gaz.entries if e.english and e.chinese]
        self.used: set = set()

    def make(self) -> _AnchorPair:
        for _ in range(100):
            pair = self._one()
            if pair.key not in self.used:
                self.used.add(pair.key)
                return pair
        raise SynthError("could not find an unused anchor value")

    def _one(self) -> _AnchorPair:
        rng = self.rng
        kind = rng.choices(("money", "percent", "count", "place", "date", "approx", "year"),
                           weights=(3, 3, 3, 3, 1, 1, 1))[0]
        if kind == "money":
            cents = rng.randint(100, 99999)  # hundredths of a billion
            value = Decimal(cents) / 100
            return _AnchorPair(("n", value * 10**9), f"{_fmt_decimal(value * 10)}亿",
                               f"{_fmt_decimal(value)} billion")
        if kind == "percent":
            tenths = rng.randint(1, 999)
            p = Decimal(tenths) / 10
            if tenths % 10 == 0 and rng.random() < 0.5:
                zh = "百分之" + render_zh_integer(tenths // 10)
            else:
                zh = f"{_fmt_decimal(p)}%"
            en = f"{_fmt_decimal(p)} percent" if rng.random() < 0.5 else f"{_fmt_decimal(p)}%"
            return _AnchorPair(("n", p / 100), zh, en)
        if kind == "count":
            n = rng.randint(11, 99999)
            zh = render_zh_integer(n) if n < 10000 and rng.random() < 0.3 else str(n)
            en = f"{n:,}" if rng.random() < 0.5 else str(n)
            return _AnchorPair(("n", Decimal(n)), zh, en)
        if kind == "place":
            e = rng.choice(self.places)
            return _AnchorPair(("p", e.canonical_id), e.chinese[0], e.english[0])
        if kind == "date":
            month, day = rng.randint(1, 12), rng.randint(1, 28)
            name = [k for k, v in MONTHS.items() if v == month][0].capitalize()
            zh = f"{month}月{day}日" if rng.random() < 0.5 else f"{render_zh_integer(month)}月{render_zh_integer(day)}日"
            return _AnchorPair(("d", month, day), zh, f"{name} {day}")
        if kind == "approx":
            lead = rng.randint(2, 9) * 10**rng.randint(1, 3)  # e.g. 200
            for _ in range(20):
                exact = lead - rng.randint(1, max(1, lead // 50))
                if exact > 0 and approx_equal(NumericValue(Decimal(exact), NumberKind.CARDINAL),
                                              NumericValue(Decimal(lead), NumberKind.CARDINAL)):
                    break
            hedge = rng.choice(("nearly", "about", "almost"))
            return _AnchorPair(("n", Decimal(exact)), str(exact), f"{hedge} {lead}")
        year = rng.randint(1950, 2030)
        return _AnchorPair(("n", Decimal(year)), f"{year}年", str(year))


# ---------------------------------------------------------------------------
# Filler text


def _non_ws(text: str) -> int:
    return sum(1 for ch in text if not ch.isspace())


class _Filler:
    def __init__(self, rng: random.Random, gaz: Gazetteer):
        self.rng = rng
        banned = set(_ZH_EXCLUDED)
        for e in gaz.entries:
            for name in e.chinese:
                banned.update(name)
        self.zh_pool = sorted(set(_ZH_POOL) - banned)
        words = set(EN_UNITS) | set(EN_TENS) | set(EN_SCALES) | set(EN_ORDINALS) | set(EN_DENOMINATORS)
        words |= {h.split()[0] for h in EN_HEDGES} | set(MONTHS) | _EN_EXTRA
        for e in gaz.entries:
            for name in e.english:
                words.update(w.strip(".").casefold() for w in name.split())
        words |= {a.rstrip(".").casefold() for a in default_abbreviations().entries}
        self.en_banned = words

    def zh(self, n: int) -> str:
        return "".join(self.rng.choice(self.zh_pool) for _ in range(n))

    def word(self, n: int) -> str:
        while True:
            letters = [self.rng.choice(_CONSONANTS if k % 2 == 0 else _VOWELS) for k in range(n)]
            w = "".join(letters)
            if w not in self.en_banned:
                return w

    def words(self, total: int) -> list[str]:
        """Pseudo-words whose letters add up to exactly ``total``."""
        out = []
        while total > 0:
            n = total if total <= 9 else self.rng.randint(2, min(9, total - 2))
            out.append(self.word(n))
            total -= n
        return out


def _insert(rng: random.Random, parts: list[str], items: list[str]) -> list[str]:
    """Put ``items`` into distinct gaps of ``parts`` so no two items touch."""
    slots = sorted(rng.sample(range(len(parts) + 1), len(items)))
    for offset, (slot, item) in enumerate(zip(slots, items)):
        parts.insert(slot + offset, item)
    return parts


# ---------------------------------------------------------------------------
# Units and paragraphs


@dataclass
class _Unit:
    zh: list[str]          # clause bodies without punctuation
    en: list[str]
    l_c: int = 0
    l_e: int = 0


@dataclass
class _Para:
    units: list[_Unit]
    zh_end: list[bool]     # sentence ends after unit k (Chinese side)
    en_end: list[bool]


class _Builder:
    SHAPES = ((1, 1), (2, 1), (1, 2), (3, 1), (1, 3))
    SHAPE_WEIGHTS = (70, 10, 10, 5, 5)

    def __init__(self, rng: random.Random, params: SynthParams, gaz: Gazetteer):
        self.rng, self.p = rng, params
        self.filler = _Filler(rng, gaz)
        self.anchors = _AnchorMaker(rng, gaz)

    def _anchor_count(self) -> int:
        whole = int(self.p.anchors)
        return whole + (self.rng.random() < self.p.anchors - whole)

    def unit(self) -> _Unit:
        rng = self.rng
        n_c, n_e = rng.choices(self.SHAPES, weights=self.SHAPE_WEIGHTS)[0]
        zh_clauses: list[str] = []
        planted: list[tuple[float, str]] = []  # (position within unit, English surface)
        for k in range(n_c):
            pairs = [self.anchors.make() for _ in range(self._anchor_count())]
            size = max(3, round(rng.gauss(self.p.clause_length, self.p.clause_length / 3)))
            fixed = sum(len(a.zh) for a in pairs)
            parts = list(self.filler.zh(max(2, len(pairs) - 1, size - fixed)))
            zh_clauses.append("".join(_insert(rng, parts, [a.zh for a in pairs])))
            planted += [((k + rng.random()) / n_c, a.en) for a in pairs]
        # one punctuation mark per clause on both sides
        l_c = sum(len(c) for c in zh_clauses) + n_c
        target = max(1, round(rng.gauss(self.p.r * l_c, math.sqrt(l_c * self.p.sigma2))))

        en_anchor_lists: list[list[str]] = [[] for _ in range(n_e)]
        for pos, surface in sorted(planted):
            en_anchor_lists[min(n_e - 1, int(pos * n_e))].append(surface)
        fixed = [sum(_non_ws(s) for s in lst) + 1 for lst in en_anchor_lists]
        free = max(0, target - sum(fixed))
        weights = [rng.random() + 0.5 for _ in range(n_e)]
        shares = [int(free * w / sum(weights)) for w in weights]
        shares[-1] += free - sum(shares)
        en_clauses = []
        for lst, share in zip(en_anchor_lists, shares):
            # enough filler words to keep anchors apart
            share = max(share, 2 * len(lst) - 2, 0 if lst else 2)
            words = self.filler.words(share)
            en_clauses.append(" ".join(_insert(rng, words, lst)))
        l_e = sum(_non_ws(c) for c in en_clauses) + n_e
        return _Unit(zh_clauses, en_clauses, l_c, l_e)

    def paragraph(self, min_boundaries: int = 0) -> _Para:
        rng = self.rng
        target = rng.randint(*self.p.clauses_per_paragraph)
        units: list[_Unit] = []
        zh_end: list[bool] = []
        en_end: list[bool] = []
        while sum(len(u.zh) for u in units) < target or len(units) < min_boundaries + 1:
            units.append(self.unit())
            kind = rng.choices(("both", "comma", "zh", "en"), weights=(45, 45, 5, 5))[0]
            zh_end.append(kind in ("both", "zh"))
            en_end.append(kind in ("both", "en"))
        zh_end[-1] = en_end[-1] = True
        return _Para(units, zh_end, en_end)


def _render(units: list[_Unit], ends: list[bool], side: str) -> str:
    comma, period, joiner = (",", ".", " ") if side == "en" else ("，", "。", "")
    out: list[str] = []
    new_sentence = True
    for unit, end in zip(units, ends):
        clauses = unit.en if side == "en" else unit.zh
        for k, body in enumerate(clauses):
            if side == "en" and new_sentence:
                body = body[:1].upper() + body[1:]
            last = k == len(clauses) - 1
            mark = period if last and end else comma
            out.append(body + mark)
            new_sentence = last and end
    return joiner.join(out)


def _clause_spans(units: list[_Unit]) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    pairs = []
    e = c = 1
    for u in units:
        pairs.append(((e, e + len(u.en) - 1), (c, c + len(u.zh) - 1)))
        e += len(u.en)
        c += len(u.zh)
    return tuple(pairs)


def generate_synthetic_pair(seed: int | str, params: SynthParams | None = None,
                            gazetteer: Gazetteer | None = None, pair_id: str = "") -> SyntheticPair:
    params = (params or SynthParams()).validate()
    gaz = gazetteer if gazetteer is not None else load_gazetteer()
    rng = random.Random(seed)
    b = _Builder(rng, params, gaz)
    n_groups = max(1, rng.randint(params.paragraphs - 3, params.paragraphs + 3))

    en_paras: list[str] = []
    zh_paras: list[str] = []
    gold: list[GoldParagraph] = []
    units: list[tuple[int, int]] = []
    for _ in range(n_groups):
        roll = rng.random()
        e0, c0 = len(en_paras) + 1, len(zh_paras) + 1
        if roll < params.drop:
            para = b.paragraph()
            zh_paras.append(_render(para.units, para.zh_end, "zh"))
            prev = gold[-1] if gold else None
            if prev is not None and prev.e is None:
                gold[-1] = GoldParagraph(None, (prev.c[0], c0))
            else:
                gold.append(GoldParagraph(None, (c0, c0)))
            continue
        if roll < params.drop + params.merge:
            k = rng.randint(2, 3)
            paras = [b.paragraph() for _ in range(k)]
            zh_paras += [_render(p.units, p.zh_end, "zh") for p in paras]
            en_paras.append(" ".join(_render(p.units, p.en_end, "en") for p in paras))
            gold.append(GoldParagraph((e0, e0), (c0, c0 + k - 1)))
        elif roll < params.drop + params.merge + params.split:
            k = rng.randint(2, 3)
            para = b.paragraph(min_boundaries=k - 1)
            cuts = sorted(rng.sample(range(1, len(para.units)), k - 1))
            for cut in cuts:
                para.zh_end[cut - 1] = para.en_end[cut - 1] = True
            zh_paras.append(_render(para.units, para.zh_end, "zh"))
            bounds = [0, *cuts, len(para.units)]
            for lo, hi in zip(bounds, bounds[1:]):
                en_paras.append(_render(para.units[lo:hi], para.en_end[lo:hi], "en"))
            gold.append(GoldParagraph((e0, e0 + k - 1), (c0, c0)))
            paras = [para]
        else:
            para = b.paragraph()
            zh_paras.append(_render(para.units, para.zh_end, "zh"))
            en_paras.append(_render(para.units, para.en_end, "en"))
            gold.append(GoldParagraph((e0, e0), (c0, c0), _clause_spans(para.units)))
            paras = [para]
        units += [(u.l_e, u.l_c) for p in paras for u in p.units]

    text_e = "\n\n".join(en_paras) + "\n"
    text_c = "\n\n".join(zh_paras) + "\n"
    if params.noise:
        text_e = "==============================\nSource: synthetic wire\n\n" + text_e + "\n(End)\n"
        text_c = "==============================\n来源：合成稿件\n\n" + text_c + "\n（完）\n"
    return SyntheticPair(pair_id, text_e, text_c, GoldAlignment(tuple(gold)), tuple(units))


def generate_corpus(seed: int, pairs: int, params: SynthParams | None = None,
                    gazetteer: Gazetteer | None = None) -> list[SyntheticPair]:
    gaz = gazetteer if gazetteer is not None else load_gazetteer()
    return [generate_synthetic_pair(f"{seed}:{k}", params, gaz, pair_id=f"pair{k + 1:04d}")
            for k in range(pairs)]


def write_corpus(out_dir: str | Path, corpus: list[SyntheticPair]) -> list[tuple[str, Path, Path, Path]]:
    """Write ``<id>.en.txt``, ``<id>.zh.txt`` and ``<id>.gold`` files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for sp in corpus:
        pe, pc, pg = out / f"{sp.pair_id}.en.txt", out / f"{sp.pair_id}.zh.txt", out / f"{sp.pair_id}.gold"
        pe.write_text(sp.text_e, encoding="utf-8")
        pc.write_text(sp.text_c, encoding="utf-8")
        pg.write_text(format_gold(sp.gold), encoding="utf-8")
        written.append((sp.pair_id, pe, pc, pg))
    return written
