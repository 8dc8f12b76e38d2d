"""Paragraph-level alignment.

match(u, v) = min(M(u, v), match(u, v+1) + c_skip) where M tries every
1<->j and i<->1 block starting at (u, v).  The table is filled bottom-up in
reverse (u, v) order, which visits states in the same dependency order as the
memoized recursion without Python's recursion limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .anchors import MatchedAnchor, anchor_value
from .config import AlignConfig
from .segmentation import Document

INVALID = math.inf


class NoValidAlignment(RuntimeError):
    pass


def signed_length_residual(l_e: float, l_c: float, cfg: AlignConfig) -> float:
    """Standardized deviation of l_e from r*l_c under the length model."""
    if l_c == 0:
        return l_e / math.sqrt(cfg.sigma2)
    return (l_e - cfg.r * l_c) / math.sqrt(l_c * cfg.sigma2)


def length_distance(l_e: float, l_c: float, cfg: AlignConfig | None = None) -> float:
    return abs(signed_length_residual(l_e, l_c, cfg or AlignConfig()))


@dataclass(frozen=True)
class SpanPair:
    u: int
    i: int
    v: int
    j: int
    l_e: int = 0
    l_c: int = 0
    cost: float = 0.0

    @property
    def is_drop(self) -> bool:
        return self.i == 0

    @property
    def english(self) -> range:
        return range(self.u, self.u + self.i)

    @property
    def chinese(self) -> range:
        return range(self.v, self.v + self.j)


@dataclass(frozen=True)
class ParagraphAlignment:
    pairs: tuple[SpanPair, ...]
    total_cost: float


def _anchor_box(ma: MatchedAnchor) -> tuple[int, int, int, int]:
    e_lo, e_hi = ma.paragraph_range("e")
    c_lo, c_hi = ma.paragraph_range("c")
    return e_lo, e_hi, c_lo, c_hi


def anchor_sum(span: SpanPair, matched: Sequence[MatchedAnchor], cfg: AlignConfig | None = None) -> float:
    """AV: total value of matched anchors lying entirely inside the span."""
    cfg = cfg or AlignConfig()
    total = 0.0
    for ma in matched:
        e_lo, e_hi, c_lo, c_hi = _anchor_box(ma)
        if span.u <= e_lo and e_hi < span.u + span.i and span.v <= c_lo and c_hi < span.v + span.j:
            total += anchor_value(ma, cfg)
    return total


def multi_paragraph_penalty(i: int, j: int, av: float) -> float:
    return av * (i + j - 2)


def paragraph_cost(l_e: float, l_c: float, i: int, j: int, av: float, cfg: AlignConfig) -> float:
    return cfg.f_l * length_distance(l_e, l_c, cfg) - cfg.f_a * av + cfg.f_mp * multi_paragraph_penalty(i, j, av)


def dist_paragraph(span: SpanPair, matched: Sequence[MatchedAnchor], cfg: AlignConfig | None = None) -> float:
    cfg = cfg or AlignConfig()
    return paragraph_cost(span.l_e, span.l_c, span.i, span.j, anchor_sum(span, matched, cfg), cfg)


class ParagraphCosts:
    """dist(u, i, v, j) for one document pair, with prefix sums for speed."""

    def __init__(self, len_e: Sequence[int], len_c: Sequence[int],
                 matched: Sequence[MatchedAnchor], cfg: AlignConfig):
        self.cfg = cfg
        self.n_e, self.n_c = len(len_e), len(len_c)
        self._pe = [0, *accumulate(len_e)]
        self._pc = [0, *accumulate(len_c)]
        self._boxes = [(*_anchor_box(ma), anchor_value(ma, cfg)) for ma in matched]

    def lengths(self, u: int, i: int, v: int, j: int) -> tuple[int, int]:
        return self._pe[u + i - 1] - self._pe[u - 1], self._pc[v + j - 1] - self._pc[v - 1]

    def anchor_sum(self, u: int, i: int, v: int, j: int) -> float:
        total = 0.0
        for e_lo, e_hi, c_lo, c_hi, val in self._boxes:
            if u <= e_lo and e_hi < u + i and v <= c_lo and c_hi < v + j:
                total += val
        return total

    def __call__(self, u: int, i: int, v: int, j: int) -> float:
        l_e, l_c = self.lengths(u, i, v, j)
        return paragraph_cost(l_e, l_c, i, j, self.anchor_sum(u, i, v, j), self.cfg)

    @classmethod
    def for_documents(cls, doc_e: Document, doc_c: Document,
                      matched: Sequence[MatchedAnchor], cfg: AlignConfig) -> "ParagraphCosts":
        return cls([p.char_length for p in doc_e.paragraphs],
                   [p.char_length for p in doc_c.paragraphs], matched, cfg)


@dataclass(frozen=True)
class Choice:
    i: int  # 0 marks the skip branch
    j: int


class ParagraphTable:
    """match(u, v) values and back-pointers, 1-based, Invalid stored as inf."""

    def __init__(self, costs: ParagraphCosts):
        self.costs = costs
        n_e, n_c = costs.n_e, costs.n_c
        self.n_e, self.n_c = n_e, n_c
        self._cost = [[0.0] * (n_c + 2) for _ in range(n_e + 2)]
        self._choice: list[list[Choice | None]] = [[None] * (n_c + 2) for _ in range(n_e + 2)]
        skip = costs.cfg.c_skip
        for u in range(n_e, 0, -1):
            row, below = self._cost[u], self._cost
            row[n_c + 1] = INVALID
            for v in range(n_c, 0, -1):
                best, best_key, best_choice = INVALID, None, None
                # 1 <-> j blocks, then i <-> 1 blocks (i > 1)
                for i, j in [(1, j) for j in range(1, n_c - v + 2)] + [(i, 1) for i in range(2, n_e - u + 2)]:
                    c = below[u + i][v + j] + costs(u, i, v, j)
                    key = (c, 0, i + j, j)
                    if best_key is None or key < best_key:
                        best, best_key, best_choice = c, key, Choice(i, j)
                c = row[v + 1] + skip
                if best_key is None or (c, 1) < best_key[:2]:
                    best, best_choice = c, Choice(0, 1)
                row[v] = best
                self._choice[u][v] = best_choice

    def cost(self, u: int, v: int) -> float:
        return self._cost[u][v]

    def is_invalid(self, u: int, v: int) -> bool:
        return math.isinf(self._cost[u][v])

    def choice(self, u: int, v: int) -> Choice | None:
        return self._choice[u][v]

    def path(self) -> list[tuple[int, int, int, int, float]]:
        """Steps (u, i, v, j, step_cost) from (1, 1); i == 0 is a drop."""
        if self.is_invalid(1, 1):
            raise NoValidAlignment(
                f"no valid alignment for {self.n_e} English and {self.n_c} Chinese paragraphs")
        steps = []
        u = v = 1
        while u <= self.n_e:
            ch = self._choice[u][v]
            if ch.i == 0:
                steps.append((u, 0, v, 1, self.costs.cfg.c_skip))
                v += 1
            else:
                steps.append((u, ch.i, v, ch.j, self.costs(u, ch.i, v, ch.j)))
                u, v = u + ch.i, v + ch.j
        # English exhausted: trailing Chinese paragraphs are free drops
        steps.extend((u, 0, w, 1, 0.0) for w in range(v, self.n_c + 1))
        return steps


def build_paragraph_table(doc_e: Document, doc_c: Document, matched: Sequence[MatchedAnchor],
                          cfg: AlignConfig | None = None) -> ParagraphTable:
    return ParagraphTable(ParagraphCosts.for_documents(doc_e, doc_c, matched, cfg or AlignConfig()))


def steps_to_pairs(steps, costs: ParagraphCosts) -> tuple[SpanPair, ...]:
    """Turn DP steps into span pairs, merging runs of single drops into 0<->n."""
    pairs: list[SpanPair] = []
    for u, i, v, j, c in steps:
        l_e, l_c = costs.lengths(u, i, v, j)
        prev = pairs[-1] if pairs else None
        if i == 0 and prev is not None and prev.is_drop and prev.v + prev.j == v:
            pairs[-1] = SpanPair(prev.u, 0, prev.v, prev.j + j, 0, prev.l_c + l_c, prev.cost + c)
        else:
            pairs.append(SpanPair(u, i, v, j, l_e, l_c, c))
    return tuple(pairs)


def align_paragraphs(doc_e: Document, doc_c: Document, matched: Sequence[MatchedAnchor],
                     cfg: AlignConfig | None = None) -> ParagraphAlignment:
    table = build_paragraph_table(doc_e, doc_c, matched, cfg)
    if table.n_e == 0 and table.n_c == 0:
        return ParagraphAlignment((), 0.0)
    steps = table.path()
    return ParagraphAlignment(steps_to_pairs(steps, table.costs), table.cost(1, 1))
