"""End-to-end alignment of one document pair, and batches of pairs."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .anchors import Gazetteer, MatchedAnchor, extract_anchors, load_gazetteer, match_anchors
from .clauses import align_clauses
from .config import AlignConfig
from .paragraphs import NoValidAlignment, align_paragraphs
from .segmentation import (
    AbbreviationTable, Document, Language, NoiseRules, segment_document, strip_noise,
)

Span = tuple[int, int]


class Mode(str, Enum):
    BOTH = "both"
    LENGTH = "length"
    ANCHORS = "anchors"


def mode_config(cfg: AlignConfig, mode: Mode | str) -> AlignConfig:
    """The effective config of an ablation mode."""
    mode = Mode(mode)
    if mode is Mode.LENGTH:
        return cfg.replace(f_a=0.0, f_a_clause=0.0, f_mp=0.0)
    if mode is Mode.ANCHORS:
        return cfg.replace(f_l=0.0, f_l_clause=0.0)
    return cfg


@dataclass(frozen=True)
class ClauseRecord:
    e: Span
    c: Span
    cost: float


@dataclass(frozen=True)
class ParagraphRecord:
    e: Span | None  # None: untranslated Chinese paragraphs
    c: Span
    cost: float
    clauses: tuple[ClauseRecord, ...] = ()


@dataclass(frozen=True)
class AlignmentReport:
    pair_id: str
    mode: Mode
    config: AlignConfig
    paragraphs: tuple[ParagraphRecord, ...]
    total_cost: float
    # source documents, kept for text rendering only
    doc_e: Document | None = field(default=None, compare=False, repr=False)
    doc_c: Document | None = field(default=None, compare=False, repr=False)

    @property
    def paragraph_count(self) -> int:
        return len(self.paragraphs)

    @property
    def clause_count(self) -> int:
        return sum(len(p.clauses) for p in self.paragraphs)


def _span(start: int, length: int) -> Span:
    return (start, start + length - 1)


def align_documents(doc_e: Document, doc_c: Document, gazetteer: Gazetteer,
                    cfg: AlignConfig | None = None, mode: Mode | str = Mode.BOTH,
                    pair_id: str = "") -> AlignmentReport:
    cfg = cfg or AlignConfig()
    mode = Mode(mode)
    eff = mode_config(cfg, mode)
    matched: list[MatchedAnchor] = []
    if mode is not Mode.LENGTH:
        matched = match_anchors(extract_anchors(doc_e, gazetteer), extract_anchors(doc_c, gazetteer), eff)
    try:
        para = align_paragraphs(doc_e, doc_c, matched, eff)
    except NoValidAlignment as exc:
        raise NoValidAlignment(f"{pair_id or 'pair'}: {exc}") from None

    records = []
    for sp in para.pairs:
        if sp.is_drop:
            records.append(ParagraphRecord(None, _span(sp.v, sp.j), sp.cost))
            continue
        clauses: tuple[ClauseRecord, ...] = ()
        if sp.i == 1 and sp.j == 1:
            ca = align_clauses(doc_e.paragraph(sp.u), doc_c.paragraph(sp.v), matched, eff)
            clauses = tuple(ClauseRecord(_span(c.u, c.i), _span(c.v, c.j), c.cost) for c in ca.pairs)
        records.append(ParagraphRecord(_span(sp.u, sp.i), _span(sp.v, sp.j), sp.cost, clauses))
    return AlignmentReport(pair_id, mode, cfg, tuple(records), para.total_cost, doc_e, doc_c)


def align_texts(text_e: str, text_c: str, gazetteer: Gazetteer | None = None,
                cfg: AlignConfig | None = None, mode: Mode | str = Mode.BOTH, pair_id: str = "",
                abbrevs: AbbreviationTable | None = None, rules: NoiseRules | None = None) -> AlignmentReport:
    """Strip noise, segment and align two raw texts."""
    gazetteer = gazetteer if gazetteer is not None else load_gazetteer()
    doc_e = segment_document(strip_noise(text_e, Language.ENGLISH, rules), Language.ENGLISH, abbrevs, pair_id)
    doc_c = segment_document(strip_noise(text_c, Language.CHINESE, rules), Language.CHINESE, abbrevs, pair_id)
    return align_documents(doc_e, doc_c, gazetteer, cfg, mode, pair_id)


def pair_id_for(path: str | Path) -> str:
    """``pair0007.en.txt`` -> ``pair0007``."""
    return Path(path).name.split(".")[0]


def run_pipeline(path_e: str | Path, path_c: str | Path, gazetteer: Gazetteer | str | Path | None = None,
                 cfg: AlignConfig | None = None, mode: Mode | str = Mode.BOTH,
                 pair_id: str | None = None) -> AlignmentReport:
    if not isinstance(gazetteer, Gazetteer):
        gazetteer = load_gazetteer(gazetteer)
    text_e = Path(path_e).read_text(encoding="utf-8")
    text_c = Path(path_c).read_text(encoding="utf-8")
    return align_texts(text_e, text_c, gazetteer, cfg, mode,
                       pair_id if pair_id is not None else pair_id_for(path_e))


def run_batch(pairs: Iterable[tuple[str, str | Path, str | Path]], gazetteer: Gazetteer,
              cfg: AlignConfig | None = None, mode: Mode | str = Mode.BOTH,
              workers: int = 1) -> list[AlignmentReport]:
    """Align (pair_id, english_path, chinese_path) triples; results sorted by pair id."""
    jobs: Sequence = list(pairs)

    def one(job):
        pid, pe, pc = job
        return run_pipeline(pe, pc, gazetteer, cfg, mode, pid)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, jobs))
    else:
        reports = [one(j) for j in jobs]
    return sorted(reports, key=lambda r: r.pair_id)
