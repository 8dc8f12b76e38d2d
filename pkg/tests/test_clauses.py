import random

import pytest
from hypothesis import given, settings, strategies as st

from cnsalign.config import AlignConfig
from cnsalign.clauses import (
    ClauseCosts, ClauseSpanPair, ClauseTable, ScatterAnchor, align_clauses, anchor_scatter_value, clause_span,
    dist_clause, multi_sentence_penalty, scatter_anchors, scattering, scattering_sums, whole_sentence_bonus,
)
from oracles import best_clause_alignment, make_match, make_paragraph, random_matches, random_paragraph

CFG = AlignConfig()


def two_sentence_pair(cross: bool):
    """Two whole-sentence clauses per side with two exact-number anchors."""
    para_e = make_paragraph(1, [261, 261], [True, True])
    para_c = make_paragraph(1, [100, 100], [True, True])
    a = make_match([(1, 1)], [(1, 2 if cross else 1)], value=1990)
    b = make_match([(1, 2)], [(1, 1 if cross else 2)], value=1995)
    return para_e, para_c, [a, b]


def shapes(alignment):
    return [(p.u, p.i, p.v, p.j) for p in alignment.pairs]


class TestScattering:
    def test_reference_values(self):
        assert scattering(1, 1) == 0.0
        assert scattering(1, -1) == 20.0
        assert scattering(0, 0) == 0.0

    def test_sums(self):
        for cross, expected in ((False, (1, 1)), (True, (1, -1))):
            para_e, para_c, matched = two_sentence_pair(cross)
            anchors = scatter_anchors(para_e, para_c, matched)
            assert scattering_sums(ClauseSpanPair(1, 2, 1, 2), anchors) == expected

    def test_single_anchor(self):
        anchors = [ScatterAnchor(1, 1, 100.0)]
        assert scattering_sums(ClauseSpanPair(1, 2, 1, 2), anchors) == (0, 0)

    def test_avs(self):
        for cross, expected in ((False, 0.0), (True, 4000.0)):
            para_e, para_c, matched = two_sentence_pair(cross)
            anchors = scatter_anchors(para_e, para_c, matched)
            assert anchor_scatter_value(ClauseSpanPair(1, 2, 1, 2), anchors) == pytest.approx(expected)
        assert anchor_scatter_value(ClauseSpanPair(1, 2, 1, 2), []) == 0.0

    def test_repeated_in_paragraph_is_ineligible(self):
        para = make_paragraph(1, [10, 10], [True, True])
        twice = make_match([(1, 1), (1, 2)], [(1, 1)])
        assert scatter_anchors(para, para, [twice]) == []
        # repeated in the document but once in this paragraph still counts
        elsewhere = make_match([(1, 1), (2, 1)], [(1, 2)])
        assert [(s.clause_e, s.clause_c) for s in scatter_anchors(para, para, [elsewhere])] == [(1, 2)]

    @given(st.lists(st.tuples(st.integers(1, 6), st.integers(1, 6)), max_size=6))
    def test_denominator_never_vanishes(self, positions):
        anchors = [ScatterAnchor(e, c, 1.0) for e, c in positions]
        s_e, s_c = scattering_sums(ClauseSpanPair(1, 6, 1, 6), anchors)
        assert abs(s_e + s_c + 0.1) >= 0.1 - 1e-12


class TestSentenceTerms:
    def test_one_sentence_each(self):
        para = make_paragraph(1, [5, 5], [False, True])
        span = clause_span(para, para, 1, 2, 1, 2)
        assert multi_sentence_penalty(span) == 0
        assert whole_sentence_bonus(span) == 1

    def test_two_sentences_against_one(self):
        para_e = make_paragraph(1, [5, 5], [True, True])
        para_c = make_paragraph(1, [5], [True])
        span = clause_span(para_e, para_c, 1, 2, 1, 1)
        assert multi_sentence_penalty(span) == 1
        assert whole_sentence_bonus(span) == 1

    def test_period_inside_and_comma_at_end(self):
        para_e = make_paragraph(1, [5, 5, 5], [True, False, True])
        para_c = make_paragraph(1, [5], [True])
        span = clause_span(para_e, para_c, 1, 2, 1, 1)
        assert multi_sentence_penalty(span) == 2

    def test_half_sentence(self):
        para_e = make_paragraph(1, [5, 5], [False, True])
        para_c = make_paragraph(1, [5], [True])
        assert whole_sentence_bonus(clause_span(para_e, para_c, 1, 1, 1, 1)) == 0

    def test_paragraph_end_closes_sentence(self):
        para = make_paragraph(1, [5, 5], [False, False])
        assert whole_sentence_bonus(clause_span(para, para, 1, 2, 1, 2)) == 1


class TestDist:
    def test_whole_sentence_exact_ratio(self):
        para_e, para_c = make_paragraph(1, [261], [True]), make_paragraph(1, [100], [True])
        assert dist_clause(clause_span(para_e, para_c, 1, 1, 1, 1), []) == pytest.approx(-1.0)

    def test_cross_anchor_bonus(self):
        para_e, para_c, matched = two_sentence_pair(cross=True)
        costs = ClauseCosts(para_e, para_c, matched, CFG)
        # LD 0, MS 2 (x f_ms 2), WS 1, AVS 4000 x 0.05
        assert costs(1, 2, 1, 2) == pytest.approx(4 - 1 - 200)

    def test_ms_weight(self):
        para = make_paragraph(1, [5, 5], [True, True])
        span = clause_span(para, para, 1, 2, 1, 2)
        no_ms = dist_clause(span, [], CFG.replace(f_ms=0.0))
        assert dist_clause(span, [], CFG.replace(f_ms=2.0)) - no_ms == pytest.approx(4.0)


class TestTwoSentencePair:
    def test_cross_merges(self):
        assert shapes(align_clauses(*two_sentence_pair(cross=True))) == [(1, 2, 1, 2)]

    def test_same_order_splits(self):
        assert shapes(align_clauses(*two_sentence_pair(cross=False))) == [(1, 1, 1, 1), (2, 1, 2, 1)]

    def test_empty_paragraph_rejected(self):
        para = make_paragraph(1, [5], [True])
        empty = make_paragraph(1, [], [])
        with pytest.raises(ValueError):
            align_clauses(para, empty, [])


def _instance(seed):
    rng = random.Random(seed)
    para_e = random_paragraph(rng, rng.randint(1, 6), scale=60)
    para_c = random_paragraph(rng, rng.randint(1, 6), scale=25)
    matched = random_matches(rng, 1, 1, rng.randint(0, 4), clauses=(len(para_e.clauses), len(para_c.clauses)))
    return para_e, para_c, matched


def _path(table):
    u = v = 1
    out = []
    while u <= table.n_e:
        i, j = table.choice(u, v)
        out.append((u, i, v, j))
        u, v = u + i, v + j
    return out


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_brute_force(seed):
    para_e, para_c, matched = _instance(seed)
    costs = ClauseCosts(para_e, para_c, matched, CFG)
    table = ClauseTable(costs)
    cost, _, steps = best_clause_alignment(costs.n_e, costs.n_c, costs)
    assert table.cost(1, 1) == cost
    assert _path(table) == list(steps)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_output_partitions(seed):
    para_e, para_c, matched = _instance(seed)
    got = align_clauses(para_e, para_c, matched)
    assert [k for p in got.pairs for k in p.english] == list(range(1, len(para_e.clauses) + 1))
    assert [k for p in got.pairs for k in p.chinese] == list(range(1, len(para_c.clauses) + 1))
    assert sum(p.cost for p in got.pairs) == pytest.approx(got.total_cost)


@settings(max_examples=200)
@given(st.integers(0, 10**6), st.data())
def test_ms_zero_iff_no_internal_period(seed, data):
    para_e, para_c, _ = _instance(seed)
    n_e, n_c = len(para_e.clauses), len(para_c.clauses)
    u = data.draw(st.integers(1, n_e))
    i = data.draw(st.integers(1, n_e - u + 1))
    v = data.draw(st.integers(1, n_c))
    j = data.draw(st.integers(1, n_c - v + 1))
    span = clause_span(para_e, para_c, u, i, v, j)

    def internal(para, lo, n):
        # every clause but the last that closes a sentence
        return any(c.ends_sentence for c in para.clauses[lo - 1: lo + n - 2])

    assert (multi_sentence_penalty(span) == 0) == (not internal(para_e, u, i) and not internal(para_c, v, j))


@pytest.mark.parametrize("c", [0.25, 0.3, 2.0, 3.7, 10.0])
def test_argmin_scale_invariance(c):
    scaled = CFG.replace(f_l_clause=CFG.f_l_clause * c, f_ms=CFG.f_ms * c,
                         f_a_clause=CFG.f_a_clause * c, f_ws=CFG.f_ws * c)
    for seed in range(100):
        para_e, para_c, matched = _instance(seed)
        base = ClauseTable(ClauseCosts(para_e, para_c, matched, CFG))
        other = ClauseTable(ClauseCosts(para_e, para_c, matched, scaled))
        assert _path(base) == _path(other)
        assert other.cost(1, 1) == pytest.approx(c * base.cost(1, 1), rel=1e-9, abs=1e-9)
