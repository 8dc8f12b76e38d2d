"""Gold alignments and accuracy scoring.

Gold files are line oriented::

    # comment
    P E:1 C:1-2        paragraph pair
    C E:1-2 C:1        clause pair inside the preceding P line (1<->1 paragraphs)
    D C:3              untranslated Chinese paragraph(s)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from typing import Iterable

from .pipeline import AlignmentReport

Span = tuple[int, int]


class GoldFormatError(ValueError):
    pass


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class GoldParagraph:
    e: Span | None
    c: Span
    clauses: tuple[tuple[Span, Span], ...] = ()


@dataclass(frozen=True)
class GoldAlignment:
    paragraphs: tuple[GoldParagraph, ...]

    @classmethod
    def from_report(cls, report: AlignmentReport) -> "GoldAlignment":
        return cls(tuple(
            GoldParagraph(p.e, p.c, tuple((c.e, c.c) for c in p.clauses)) for p in report.paragraphs
        ))


_SPAN = r"(\d+)(?:-(\d+))?"
_P_LINE = re.compile(rf"P\s+E:{_SPAN}\s+C:{_SPAN}")
_C_LINE = re.compile(rf"C\s+E:{_SPAN}\s+C:{_SPAN}")
_D_LINE = re.compile(rf"D\s+C:{_SPAN}")


def _span(lo: str, hi: str | None) -> Span:
    a, b = int(lo), int(hi if hi is not None else lo)
    if not 1 <= a <= b:
        raise GoldFormatError(f"bad span {lo}-{hi}")
    return (a, b)


def _check_partition(spans: Iterable[Span], what: str) -> None:
    expected = 1
    for lo, hi in spans:
        if lo != expected:
            raise GoldFormatError(f"{what} spans are not contiguous at {lo} (expected {expected})")
        expected = hi + 1


def parse_gold(text: str) -> GoldAlignment:
    paragraphs: list[GoldParagraph] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if m := _P_LINE.fullmatch(line):
                paragraphs.append(GoldParagraph(_span(*m.group(1, 2)), _span(*m.group(3, 4))))
            elif m := _C_LINE.fullmatch(line):
                if not paragraphs or paragraphs[-1].e is None:
                    raise GoldFormatError("clause line without a preceding paragraph line")
                last = paragraphs[-1]
                pair = (_span(*m.group(1, 2)), _span(*m.group(3, 4)))
                paragraphs[-1] = GoldParagraph(last.e, last.c, last.clauses + (pair,))
            elif m := _D_LINE.fullmatch(line):
                c = _span(*m.group(1, 2))
                prev = paragraphs[-1] if paragraphs else None
                if prev is not None and prev.e is None and prev.c[1] + 1 == c[0]:
                    paragraphs[-1] = GoldParagraph(None, (prev.c[0], c[1]))
                else:
                    paragraphs.append(GoldParagraph(None, c))
            else:
                raise GoldFormatError(f"unrecognized line {raw.strip()!r}")
        except GoldFormatError as exc:
            raise GoldFormatError(f"line {lineno}: {exc}") from None
    gold = GoldAlignment(tuple(paragraphs))
    _check_partition((p.e for p in gold.paragraphs if p.e is not None), "English paragraph")
    _check_partition((p.c for p in gold.paragraphs), "Chinese paragraph")
    for p in gold.paragraphs:
        _check_partition((e for e, _ in p.clauses), "English clause")
        _check_partition((c for _, c in p.clauses), "Chinese clause")
    return gold


def _fmt(span: Span) -> str:
    return str(span[0]) if span[0] == span[1] else f"{span[0]}-{span[1]}"


def format_gold(gold: GoldAlignment) -> str:
    lines = []
    for p in gold.paragraphs:
        if p.e is None:
            lines.append(f"D C:{_fmt(p.c)}")
            continue
        lines.append(f"P E:{_fmt(p.e)} C:{_fmt(p.c)}")
        lines += [f"C E:{_fmt(e)} C:{_fmt(c)}" for e, c in p.clauses]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EvaluationReport:
    correct_paragraph_pairs: int = 0
    total_paragraph_pairs: int = 0
    correct_clause_pairs: int = 0
    total_clause_pairs: int = 0
    correct_clause_pairs_in_correct_paragraphs: int = 0
    total_clause_pairs_in_correct_paragraphs: int = 0

    @staticmethod
    def _ratio(a: int, b: int) -> float:
        return a / b if b else 0.0

    @property
    def paragraph_accuracy(self) -> float:
        return self._ratio(self.correct_paragraph_pairs, self.total_paragraph_pairs)

    @property
    def clause_accuracy(self) -> float:
        return self._ratio(self.correct_clause_pairs, self.total_clause_pairs)

    @property
    def conditional_clause_accuracy(self) -> float:
        return self._ratio(self.correct_clause_pairs_in_correct_paragraphs,
                           self.total_clause_pairs_in_correct_paragraphs)

    def __add__(self, other: "EvaluationReport") -> "EvaluationReport":
        return EvaluationReport(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def as_dict(self) -> dict[str, float | int]:
        return {
            "correct_paragraph_pairs": self.correct_paragraph_pairs,
            "total_paragraph_pairs": self.total_paragraph_pairs,
            "paragraph_accuracy": self.paragraph_accuracy,
            "correct_clause_pairs": self.correct_clause_pairs,
            "total_clause_pairs": self.total_clause_pairs,
            "clause_accuracy": self.clause_accuracy,
            "correct_clause_pairs_in_correct_paragraphs": self.correct_clause_pairs_in_correct_paragraphs,
            "total_clause_pairs_in_correct_paragraphs": self.total_clause_pairs_in_correct_paragraphs,
            "conditional_clause_accuracy": self.conditional_clause_accuracy,
        }


def aggregate(reports: Iterable[EvaluationReport]) -> EvaluationReport:
    total = EvaluationReport()
    for r in reports:
        total = total + r
    return total


def _extent(gold: GoldAlignment) -> tuple[int, int]:
    e = max((p.e[1] for p in gold.paragraphs if p.e is not None), default=0)
    c = max((p.c[1] for p in gold.paragraphs), default=0)
    return e, c


def evaluate(predicted: AlignmentReport | GoldAlignment, gold: GoldAlignment) -> EvaluationReport:
    """Exact-span scoring; clause pairs count only inside correct paragraph pairs."""
    if isinstance(predicted, AlignmentReport):
        predicted = GoldAlignment.from_report(predicted)
    if _extent(predicted) != _extent(gold):
        raise EvaluationError(
            f"documents differ in length: predicted covers {_extent(predicted)}, gold covers {_extent(gold)}")
    gold_pairs = {(p.e, p.c): p for p in gold.paragraphs}
    correct_p = correct_c = cond_total = 0
    total_c = 0
    for p in predicted.paragraphs:
        total_c += len(p.clauses)
        ref = gold_pairs.get((p.e, p.c))
        if ref is None:
            continue
        correct_p += 1
        cond_total += len(p.clauses)
        ref_clauses = set(ref.clauses)
        correct_c += sum(1 for pair in p.clauses if pair in ref_clauses)
    return EvaluationReport(
        correct_paragraph_pairs=correct_p,
        total_paragraph_pairs=len(predicted.paragraphs),
        correct_clause_pairs=correct_c,
        total_clause_pairs=total_c,
        correct_clause_pairs_in_correct_paragraphs=correct_c,
        total_clause_pairs_in_correct_paragraphs=cond_total,
    )
