"""Clause-level m<->n alignment inside one aligned 1<->1 paragraph pair."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import accumulate
from typing import Sequence

from .anchors import MatchedAnchor, anchor_value
from .config import AlignConfig
from .paragraphs import INVALID, length_distance
from .segmentation import Paragraph


@dataclass(frozen=True)
class ClauseSpanPair:
    u: int
    i: int
    v: int
    j: int
    l_e: int = 0
    l_c: int = 0
    english_whole_sentences: bool = False
    chinese_whole_sentences: bool = False
    internal_periods_e: int = 0
    internal_periods_c: int = 0
    # whether the last clause of each side ends on a sentence terminal
    ends_e: bool = True
    ends_c: bool = True
    cost: float = 0.0

    @property
    def english(self) -> range:
        return range(self.u, self.u + self.i)

    @property
    def chinese(self) -> range:
        return range(self.v, self.v + self.j)


@dataclass(frozen=True)
class ClauseAlignment:
    pairs: tuple[ClauseSpanPair, ...]
    total_cost: float


@dataclass(frozen=True)
class ScatterAnchor:
    """A matched anchor seen from one paragraph pair: its two clause numbers and value."""
    clause_e: int
    clause_c: int
    value: float
    order: tuple = ()


def scatter_anchors(para_e: Paragraph, para_c: Paragraph, matched: Sequence[MatchedAnchor],
                    cfg: AlignConfig | None = None) -> list[ScatterAnchor]:
    """Matched anchors occurring exactly once in each of the two paragraphs, by English clause."""
    cfg = cfg or AlignConfig()
    out = []
    for ma in matched:
        e = [a for a in ma.english if a.paragraph_index == para_e.index]
        c = [a for a in ma.chinese if a.paragraph_index == para_c.index]
        if len(e) == 1 and len(c) == 1:
            out.append(ScatterAnchor(e[0].clause_no, c[0].clause_no, anchor_value(ma, cfg),
                                     (e[0].char_span[0], c[0].clause_no, c[0].char_span[0])))
    out.sort(key=lambda s: (s.clause_e, s.order))
    return out


def _in_span(span: ClauseSpanPair, anchors: Sequence[ScatterAnchor]) -> list[ScatterAnchor]:
    return [a for a in anchors
            if span.u <= a.clause_e < span.u + span.i and span.v <= a.clause_c < span.v + span.j]


def scattering_sums(span: ClauseSpanPair, anchors: Sequence[ScatterAnchor]) -> tuple[int, int]:
    inside = sorted(_in_span(span, anchors), key=lambda s: (s.clause_e, s.order))
    s_e = sum(b.clause_e - a.clause_e for a, b in zip(inside, inside[1:]))
    s_c = sum(b.clause_c - a.clause_c for a, b in zip(inside, inside[1:]))
    return s_e, s_c


def scattering(s_e: int, s_c: int) -> float:
    return (s_e - s_c) / (s_e + s_c + 0.1)


def anchor_scatter_value(span: ClauseSpanPair, anchors: Sequence[ScatterAnchor],
                         cfg: AlignConfig | None = None) -> float:
    cfg = cfg or AlignConfig()
    inside = _in_span(span, anchors)
    if not inside:
        return 0.0
    s = scattering(*scattering_sums(span, anchors))
    if cfg.abs_scattering:
        s = abs(s)
    return s * sum(a.value for a in inside)


def multi_sentence_penalty(span: ClauseSpanPair) -> int:
    ms = span.internal_periods_e + span.internal_periods_c
    ms += span.internal_periods_e > 0 and not span.ends_e
    ms += span.internal_periods_c > 0 and not span.ends_c
    return ms


def whole_sentence_bonus(span: ClauseSpanPair) -> int:
    return int(span.english_whole_sentences and span.chinese_whole_sentences)


def dist_clause(span: ClauseSpanPair, anchors: Sequence[ScatterAnchor], cfg: AlignConfig | None = None) -> float:
    cfg = cfg or AlignConfig()
    return (cfg.f_l_clause * length_distance(span.l_e, span.l_c, cfg)
            + cfg.f_ms * multi_sentence_penalty(span)
            - cfg.f_a_clause * anchor_scatter_value(span, anchors, cfg)
            - cfg.f_ws * whole_sentence_bonus(span))


class _Side:
    """Prefix tables over one paragraph's clauses."""

    def __init__(self, para: Paragraph):
        clauses = para.clauses
        n = len(clauses)
        # the paragraph end closes its last sentence even without a period
        self.ends = [c.ends_sentence or k == n - 1 for k, c in enumerate(clauses)]
        self.starts = [c.starts_sentence for c in clauses]
        self.length = [0, *accumulate(c.char_length for c in clauses)]
        self.periods = [0, *accumulate(int(e) for e in self.ends)]
        self.n = n

    def describe(self, u: int, i: int) -> tuple[int, bool, int, bool]:
        """(length, whole sentences, internal periods, ends on terminal) of clauses u..u+i-1."""
        last = u + i - 2  # 0-based index of the span's last clause
        length = self.length[last + 1] - self.length[u - 1]
        internal = self.periods[last] - self.periods[u - 1]
        return length, self.starts[u - 1] and self.ends[last], internal, self.ends[last]


def make_clause_span(side_e: _Side, side_c: _Side, u: int, i: int, v: int, j: int) -> ClauseSpanPair:
    l_e, whole_e, int_e, end_e = side_e.describe(u, i)
    l_c, whole_c, int_c, end_c = side_c.describe(v, j)
    return ClauseSpanPair(u, i, v, j, l_e, l_c, whole_e, whole_c, int_e, int_c, end_e, end_c)


def clause_span(para_e: Paragraph, para_c: Paragraph, u: int, i: int, v: int, j: int) -> ClauseSpanPair:
    return make_clause_span(_Side(para_e), _Side(para_c), u, i, v, j)


class ClauseCosts:
    def __init__(self, para_e: Paragraph, para_c: Paragraph, matched: Sequence[MatchedAnchor],
                 cfg: AlignConfig):
        self.cfg = cfg
        self.side_e, self.side_c = _Side(para_e), _Side(para_c)
        self.n_e, self.n_c = self.side_e.n, self.side_c.n
        self.anchors = scatter_anchors(para_e, para_c, matched, cfg)

    def span(self, u: int, i: int, v: int, j: int) -> ClauseSpanPair:
        return make_clause_span(self.side_e, self.side_c, u, i, v, j)

    def __call__(self, u: int, i: int, v: int, j: int) -> float:
        return dist_clause(self.span(u, i, v, j), self.anchors, self.cfg)


class ClauseTable:
    def __init__(self, costs: ClauseCosts):
        self.costs = costs
        n_e, n_c = costs.n_e, costs.n_c
        self.n_e, self.n_c = n_e, n_c
        self._cost = [[INVALID] * (n_c + 2) for _ in range(n_e + 2)]
        self._choice: list[list[tuple[int, int] | None]] = [[None] * (n_c + 2) for _ in range(n_e + 2)]
        self._cost[n_e + 1][n_c + 1] = 0.0
        for u in range(n_e, 0, -1):
            for v in range(n_c, 0, -1):
                best_key, best = None, None
                for i in range(1, n_e - u + 2):
                    for j in range(1, n_c - v + 2):
                        c = self._cost[u + i][v + j] + costs(u, i, v, j)
                        key = (c, i + j, j)
                        if best_key is None or key < best_key:
                            best_key, best = key, (i, j)
                self._cost[u][v] = best_key[0]
                self._choice[u][v] = best

    def cost(self, u: int, v: int) -> float:
        return self._cost[u][v]

    def choice(self, u: int, v: int) -> tuple[int, int] | None:
        return self._choice[u][v]


def align_clauses(para_e: Paragraph, para_c: Paragraph, matched: Sequence[MatchedAnchor],
                  cfg: AlignConfig | None = None) -> ClauseAlignment:
    costs = ClauseCosts(para_e, para_c, matched, cfg or AlignConfig())
    if costs.n_e == 0 or costs.n_c == 0:
        raise ValueError("both paragraphs need at least one clause")
    table = ClauseTable(costs)
    pairs = []
    u = v = 1
    while u <= costs.n_e:
        i, j = table.choice(u, v)
        span = costs.span(u, i, v, j)
        pairs.append(replace(span, cost=dist_clause(span, costs.anchors, costs.cfg)))
        u, v = u + i, v + j
    assert not math.isinf(table.cost(1, 1))
    return ClauseAlignment(tuple(pairs), table.cost(1, 1))

