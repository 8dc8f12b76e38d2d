"""Report rendering: side-by-side text and JSON, plus JSON parsing."""

from __future__ import annotations

import json
import unicodedata
from typing import Any

from .config import AlignConfig
from .pipeline import AlignmentReport, ClauseRecord, Mode, ParagraphRecord
from .segmentation import Document, Language

COLUMN = 48  # display cells per column
RULE_FRAME = "=" * (2 * COLUMN + 3)
RULE_CLAUSE = "-" * (2 * COLUMN + 3)


# ---------------------------------------------------------------------------
# JSON


def _span_json(span):
    return None if span is None else [span[0], span[1]]


def report_to_dict(report: AlignmentReport) -> dict[str, Any]:
    return {
        "pair_id": report.pair_id,
        "mode": report.mode.value,
        "config": report.config.as_dict(),
        "paragraphs": [
            {
                "e": _span_json(p.e),
                "c": _span_json(p.c),
                "cost": p.cost,
                "clauses": [{"e": _span_json(c.e), "c": _span_json(c.c), "cost": c.cost} for c in p.clauses],
            }
            for p in report.paragraphs
        ],
        "total_cost": report.total_cost,
    }


def render_json(report: AlignmentReport) -> bytes:
    return (json.dumps(report_to_dict(report), ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _span_from(value) -> tuple[int, int] | None:
    if value is None:
        return None
    lo, hi = value
    return (int(lo), int(hi))


def report_from_dict(data: dict[str, Any]) -> AlignmentReport:
    paragraphs = tuple(
        ParagraphRecord(
            _span_from(p["e"]),
            _span_from(p["c"]),
            float(p["cost"]),
            tuple(ClauseRecord(_span_from(c["e"]), _span_from(c["c"]), float(c["cost"]))
                  for c in p.get("clauses", ())),
        )
        for p in data["paragraphs"]
    )
    return AlignmentReport(
        pair_id=data["pair_id"],
        mode=Mode(data["mode"]),
        config=AlignConfig.from_mapping(data["config"]),
        paragraphs=paragraphs,
        total_cost=float(data["total_cost"]),
    )


def parse_report(raw: bytes | str) -> AlignmentReport:
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    return report_from_dict(json.loads(raw))


# ---------------------------------------------------------------------------
# Text


def _cell_width(ch: str) -> int:
    return 2 if unicodedata.east_asian_width(ch) in "WF" else 1


def display_width(text: str) -> int:
    return sum(_cell_width(ch) for ch in text)


def wrap_display(text: str, width: int = COLUMN) -> list[str]:
    """Greedy wrap by display width, breaking at spaces when a line has one."""
    lines: list[str] = []
    line, used = "", 0
    for ch in " ".join(text.split()):
        w = _cell_width(ch)
        if used + w > width:
            cut = line.rfind(" ")
            if cut > 0:
                lines.append(line[:cut])
                line = line[cut + 1:]
            else:
                lines.append(line)
                line = ""
            used = display_width(line)
            if ch == " " and not line:
                continue
        line += ch
        used += w
    if line:
        lines.append(line)
    return lines


def _pad(text: str, width: int) -> str:
    return text + " " * (width - display_width(text))


def _side_by_side(left: str, right: str) -> list[str]:
    a, b = wrap_display(left), wrap_display(right)
    rows = max(len(a), len(b), 1)
    a += [""] * (rows - len(a))
    b += [""] * (rows - len(b))
    return [(_pad(x, COLUMN) + " | " + y).rstrip() for x, y in zip(a, b)]


def _joiner(doc: Document) -> str:
    return "" if doc.language is Language.CHINESE else " "


def _paragraph_text(doc: Document | None, span) -> str:
    if doc is None or span is None:
        return "" if span is None else f"[{span[0]}-{span[1]}]"
    return _joiner(doc).join(doc.paragraph(k).text for k in range(span[0], span[1] + 1))


def _clause_text(doc: Document | None, para: int, span) -> str:
    if doc is None:
        return f"[{span[0]}-{span[1]}]"
    clauses = doc.paragraph(para).clauses
    return _joiner(doc).join(clauses[k - 1].text for k in range(span[0], span[1] + 1))


def render_text(report: AlignmentReport) -> bytes:
    """English left, Chinese right; '=' frames each group, '-' separates clause pairs."""
    out = [RULE_FRAME]
    for p in report.paragraphs:
        if p.clauses:
            for n, c in enumerate(p.clauses):
                if n:
                    out.append(RULE_CLAUSE)
                out += _side_by_side(_clause_text(report.doc_e, p.e[0], c.e),
                                     _clause_text(report.doc_c, p.c[0], c.c))
        else:
            out += _side_by_side(_paragraph_text(report.doc_e, p.e), _paragraph_text(report.doc_c, p.c))
        out.append(RULE_FRAME)
    if len(out) == 1:
        out.append(RULE_FRAME)
    return ("\n".join(out) + "\n").encode("utf-8")


def render_report(report: AlignmentReport, style: str = "text") -> bytes:
    if style in ("json", "structured"):
        return render_json(report)
    if style == "text":
        return render_text(report)
    raise ValueError(f"unknown render style {style!r}")
