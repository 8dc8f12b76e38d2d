"""Noise stripping and paragraph / sentence / clause segmentation.

A cleaned document is cut into paragraphs at blank lines, paragraphs into
sentences at period-class marks, and sentences into clauses at comma-class
marks.  Marks flanked by digits (``197.66``, ``141,949``) and the dots of
known abbreviations (``Mr.``, ``U.S.``) are not boundaries.

Every clause records the whitespace that follows it, so the cleaned text can
be rebuilt exactly from the segmentation (see :meth:`Document.text`).
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Pattern


class Language(str, Enum):
    ENGLISH = "en"
    CHINESE = "zh"


PERIODS = {Language.ENGLISH: ".!?", Language.CHINESE: "。！？"}
COMMAS = {Language.ENGLISH: ",;:", Language.CHINESE: "，；："}

# Closing quotes/brackets directly after a delimiter stay with the clause.
_CLOSERS = "\"'”’)）」』】》]"
_OPENERS = "\"'“‘([（「『【《"

_PARAGRAPH = re.compile(r"\S(?:[\s\S]*?\S)?(?=[^\S\n]*\n[^\S\n]*\n|\s*\Z)")


def char_length(text: str) -> int:
    """Number of non-whitespace code points in ``text``."""
    return sum(1 for ch in text if not ch.isspace())


# ---------------------------------------------------------------------------
# Abbreviations


class AbbreviationTable:
    """Sorted, case-sensitive list of abbreviations looked up by bisection."""

    def __init__(self, entries: Iterable[str] = ()):
        self.entries: tuple[str, ...] = tuple(sorted(set(entries)))

    def __contains__(self, item: str) -> bool:
        k = bisect.bisect_left(self.entries, item)
        return k < len(self.entries) and self.entries[k] == item

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "AbbreviationTable":
        stripped = (line.strip() for line in lines)
        return cls(s for s in stripped if s and not s.startswith("#"))

    @classmethod
    def load(cls, path: str | Path) -> "AbbreviationTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @classmethod
    def default(cls) -> "AbbreviationTable":
        text = resources.files("cnsalign.data").joinpath("abbreviations.txt").read_text("utf-8")
        return cls.from_lines(text.splitlines())

    def covers(self, text: str, index: int) -> bool:
        """True if the dot at ``text[index]`` belongs to a listed abbreviation."""
        start = index
        while start > 0 and not text[start - 1].isspace() and text[start - 1] not in _OPENERS:
            start -= 1
        end = index
        while end < len(text) and not text[end].isspace():
            end += 1
        for q in range(index, end):
            if text[q] == "." and text[start : q + 1] in self:
                return True
        return False


_DEFAULT_ABBREVS: AbbreviationTable | None = None


def default_abbreviations() -> AbbreviationTable:
    global _DEFAULT_ABBREVS
    if _DEFAULT_ABBREVS is None:
        _DEFAULT_ABBREVS = AbbreviationTable.default()
    return _DEFAULT_ABBREVS


# ---------------------------------------------------------------------------
# Noise stripping

_BANNER = r"[=\-_*~#·—]{3,}"

DEFAULT_HEADER_PATTERNS = (
    r"",
    _BANNER,
    r"\d{4}[-/.]\d{1,2}[-/.]\d{1,2}",
    r"\d{4}年\d{1,2}月\d{1,2}日",
    r"(?i:source|editor|title|dateline)\s*[:：].*",
    r"(来源|编辑|责任编辑|标题|日期)\s*[:：].*",
)

DEFAULT_FOOTER_PATTERNS = (
    r"",
    _BANNER,
    r"[(（]\s*(?i:end|完)\s*[)）]",
    r"-+\s*(?i:end|完)\s*-+",
    r"(?i:source|editor|reporter)\s*[:：].*",
    r"(来源|编辑|责任编辑|记者)\s*[:：].*",
)


@dataclass(frozen=True)
class NoiseRules:
    header: tuple[Pattern[str], ...]
    footer: tuple[Pattern[str], ...]

    @classmethod
    def from_patterns(cls, header: Iterable[str], footer: Iterable[str]) -> "NoiseRules":
        return cls(tuple(re.compile(p) for p in header), tuple(re.compile(p) for p in footer))


DEFAULT_NOISE = NoiseRules.from_patterns(DEFAULT_HEADER_PATTERNS, DEFAULT_FOOTER_PATTERNS)


def _is_noise(line: str, patterns: tuple[Pattern[str], ...]) -> bool:
    body = line.strip()
    return any(p.fullmatch(body) for p in patterns)


def strip_noise(raw_text: str, language: Language | str = Language.ENGLISH,
                rules: NoiseRules | None = None) -> str:
    """Drop header lines from the top and footer lines from the bottom.

    Only whole lines are removed, and only while they match a rule, so the
    result is idempotent and body text is returned untouched.
    """
    rules = rules or DEFAULT_NOISE
    lines = raw_text.splitlines(keepends=True)
    lo, hi = 0, len(lines)
    while lo < hi and _is_noise(lines[lo], rules.header):
        lo += 1
    while hi > lo and _is_noise(lines[hi - 1], rules.footer):
        hi -= 1
    return "".join(lines[lo:hi])


# ---------------------------------------------------------------------------
# Delimiter disambiguation


def _digit_flanked(text: str, index: int) -> bool:
    return 0 < index < len(text) - 1 and text[index - 1].isdigit() and text[index + 1].isdigit()


def is_sentence_terminal(text: str, index: int, language: Language | str,
                         abbrevs: AbbreviationTable | None = None) -> bool:
    if not 0 <= index < len(text):
        raise IndexError(f"index {index} out of range for text of length {len(text)}")
    language = Language(language)
    ch = text[index]
    if ch not in PERIODS[language]:
        raise ValueError(f"{ch!r} is not a {language.value} period mark")
    if ch == ".":
        if _digit_flanked(text, index):
            return False
        # ellipsis "..." is not a delimiter
        if (index > 0 and text[index - 1] == ".") or (index + 1 < len(text) and text[index + 1] == "."):
            return False
        if abbrevs is not None and abbrevs.covers(text, index):
            return False
    return True


def is_clause_terminal(text: str, index: int, language: Language | str) -> bool:
    if not 0 <= index < len(text):
        raise IndexError(f"index {index} out of range for text of length {len(text)}")
    language = Language(language)
    if text[index] not in COMMAS[language]:
        raise ValueError(f"{text[index]!r} is not a {language.value} comma mark")
    return not _digit_flanked(text, index)


# ---------------------------------------------------------------------------
# Document model


@dataclass(frozen=True)
class Clause:
    clause_no: int
    sentence_index: int
    text: str
    char_length: int
    starts_sentence: bool
    ends_sentence: bool
    start: int = 0  # code-point offset in the cleaned text
    sep: str = ""  # whitespace up to the next clause


@dataclass(frozen=True)
class Sentence:
    index: int
    clauses: tuple[Clause, ...]
    terminal: str | None  # None: sentence closed by end of paragraph


@dataclass(frozen=True)
class Paragraph:
    index: int
    sentences: tuple[Sentence, ...]
    char_length: int

    @property
    def clauses(self) -> tuple[Clause, ...]:
        return tuple(c for s in self.sentences for c in s.clauses)

    @property
    def text(self) -> str:
        cl = self.clauses
        return "".join(c.text + c.sep for c in cl[:-1]) + (cl[-1].text if cl else "")


@dataclass(frozen=True)
class Document:
    language: Language
    source_id: str
    paragraphs: tuple[Paragraph, ...]
    prefix: str = field(default="", repr=False)

    def __len__(self) -> int:
        return len(self.paragraphs)

    def paragraph(self, index: int) -> Paragraph:
        """1-based paragraph access."""
        return self.paragraphs[index - 1]

    def text(self) -> str:
        return self.prefix + "".join(
            c.text + c.sep for p in self.paragraphs for c in p.clauses
        )


def _absorb(text: str, k: int, end: int, marks: str) -> int:
    while k < end and (text[k] in marks or text[k] in _CLOSERS):
        k += 1
    return k


def _cut_clauses(text: str, ps: int, pe: int, language: Language,
                 abbrevs: AbbreviationTable | None) -> list[tuple[int, int, str | None, bool]]:
    """Return (start, end, period_mark, is_delimited) spans inside ``text[ps:pe]``."""
    periods, commas = PERIODS[language], COMMAS[language]
    marks = periods + commas
    spans = []
    start = k = ps
    while k < pe:
        ch = text[k]
        hit = (ch in periods and is_sentence_terminal(text, k, language, abbrevs)) or (
            ch in commas and is_clause_terminal(text, k, language)
        )
        if not hit:
            k += 1
            continue
        end = _absorb(text, k + 1, pe, marks)
        period = next((c for c in text[k:end] if c in periods), None)
        spans.append((start, end, period, True))
        k = end
        while k < pe and text[k].isspace():
            k += 1
        start = k
    if start < pe:
        spans.append((start, pe, None, False))
    return spans


def segment_document(clean_text: str, language: Language | str,
                     abbrevs: AbbreviationTable | None = None,
                     source_id: str = "") -> Document:
    language = Language(language)
    if abbrevs is None:
        abbrevs = default_abbreviations()
    blocks = [(m.start(), m.end()) for m in _PARAGRAPH.finditer(clean_text)]
    if not blocks:
        return Document(language, source_id, (), clean_text)

    prefix = clean_text[: blocks[0][0]]
    paragraphs = []
    for pno, (ps, pe) in enumerate(blocks, start=1):
        next_start = blocks[pno][0] if pno < len(blocks) else len(clean_text)
        spans = _cut_clauses(clean_text, ps, pe, language, abbrevs)
        sentences: list[Sentence] = []
        pending: list[Clause] = []
        clause_no = 0
        for n, (cs, ce, period, _) in enumerate(spans):
            clause_no += 1
            cut = spans[n + 1][0] if n + 1 < len(spans) else next_start
            body = clean_text[cs:ce]
            pending.append(Clause(
                clause_no=clause_no,
                sentence_index=len(sentences) + 1,
                text=body,
                char_length=char_length(body),
                starts_sentence=not pending,
                ends_sentence=period is not None,
                start=cs,
                sep=clean_text[ce:cut],
            ))
            if period is not None or n + 1 == len(spans):
                sentences.append(Sentence(len(sentences) + 1, tuple(pending), period))
                pending = []
        total = sum(c.char_length for s in sentences for c in s.clauses)
        paragraphs.append(Paragraph(pno, tuple(sentences), total))
    return Document(language, source_id, tuple(paragraphs), prefix)


def read_document(path: str | Path, language: Language | str,
                  abbrevs: AbbreviationTable | None = None,
                  rules: NoiseRules | None = None) -> Document:
    raw = Path(path).read_text(encoding="utf-8")
    return segment_document(strip_noise(raw, language, rules), language, abbrevs,
                            source_id=Path(path).name)
