"""Independent reference implementations used by the tests.

These are deliberately naive: a recursive numeral renderer and exhaustive
enumerators for the two alignment searches.
"""

from __future__ import annotations

import random
from decimal import Decimal

from cnsalign.anchors import Anchor, AnchorKind, MatchedAnchor
from cnsalign.numerals import NumberKind, NumericValue
from cnsalign.segmentation import Clause, Paragraph, Sentence

DIGITS = "零一二三四五六七八九"
_STEPS = ((10**8, "亿", 10**7), (10**4, "万", 1000), (1000, "千", 100), (100, "百", 10))


def zh_numeral(n: int, leading: bool = True) -> str:
    """Chinese numerals by recursive decomposition (十二, 一百一十, 一万零一十)."""
    if n < 10:
        return DIGITS[n]
    if n < 100:
        tens, ones = divmod(n, 10)
        head = "" if leading and tens == 1 else DIGITS[tens]
        return head + "十" + (DIGITS[ones] if ones else "")
    for base, unit, gap in _STEPS:
        if n >= base:
            hi, lo = divmod(n, base)
            out = zh_numeral(hi, leading) + unit
            if lo:
                out += ("零" if lo < gap else "") + zh_numeral(lo, leading=False)
            return out
    raise AssertionError(n)


# ---------------------------------------------------------------------------
# Brute-force paragraph search


def paragraph_sequences(n_e: int, n_c: int, dist, c_skip: float, u: int = 1, v: int = 1):
    """Every legal step sequence from (u, v) as (cost, keys, steps).

    Cost is accumulated right-nested (rest + step), the same order the
    dynamic program adds in.  ``keys`` rank the steps for tie-breaking.
    """
    if u > n_e:
        yield 0.0, (), tuple((u, 0, w, 1) for w in range(v, n_c + 1))
        return
    if v > n_c:
        return
    blocks = [(1, j) for j in range(1, n_c - v + 2)] + [(i, 1) for i in range(2, n_e - u + 2)]
    for i, j in blocks:
        d = dist(u, i, v, j)
        for cost, keys, steps in paragraph_sequences(n_e, n_c, dist, c_skip, u + i, v + j):
            yield cost + d, ((0, i + j, j),) + keys, ((u, i, v, j),) + steps
    for cost, keys, steps in paragraph_sequences(n_e, n_c, dist, c_skip, u, v + 1):
        yield cost + c_skip, ((1, 0, 0),) + keys, ((u, 0, v, 1),) + steps


def best_paragraph_alignment(n_e: int, n_c: int, dist, c_skip: float):
    found = list(paragraph_sequences(n_e, n_c, dist, c_skip))
    if not found:
        return None
    return min(found, key=lambda t: (t[0], t[1]))


# ---------------------------------------------------------------------------
# Brute-force clause search


def clause_sequences(n_e: int, n_c: int, dist, u: int = 1, v: int = 1):
    if u > n_e and v > n_c:
        yield 0.0, (), ()
        return
    if u > n_e or v > n_c:
        return
    for i in range(1, n_e - u + 2):
        for j in range(1, n_c - v + 2):
            d = dist(u, i, v, j)
            for cost, keys, steps in clause_sequences(n_e, n_c, dist, u + i, v + j):
                yield cost + d, ((i + j, j),) + keys, ((u, i, v, j),) + steps


def best_clause_alignment(n_e: int, n_c: int, dist):
    return min(clause_sequences(n_e, n_c, dist), key=lambda t: (t[0], t[1]))


# ---------------------------------------------------------------------------
# Random fixtures


def make_anchor(kind: AnchorKind, value, paragraph: int, clause: int = 1, small: bool = False) -> Anchor:
    if kind is AnchorKind.NUMBER and not isinstance(value, NumericValue):
        value = NumericValue(Decimal(value), NumberKind.CARDINAL)
    return Anchor(kind, value, str(value), paragraph, clause, (0, 1), small)


def make_match(e_positions, c_positions, kind=AnchorKind.NUMBER, value=1, approximate=False,
               small=False) -> MatchedAnchor:
    """A MatchedAnchor whose anchors sit at the given (paragraph, clause) positions."""
    e = tuple(make_anchor(kind, value, p, c, small) for p, c in e_positions)
    c_ = tuple(make_anchor(kind, value, p, c, small) for p, c in c_positions)
    return MatchedAnchor(e, c_, kind, len(e) > 1 or len(c_) > 1, approximate, small)


def random_matches(rng: random.Random, n_e: int, n_c: int, count: int, clauses=None) -> list[MatchedAnchor]:
    """Random matched anchors; ``clauses`` = (C_E, C_C) places them in clauses of paragraph 1."""
    out = []
    for _ in range(count):
        kind = rng.choice(list(AnchorKind))
        reps_e = 1 if rng.random() < 0.8 else 2
        reps_c = 1 if rng.random() < 0.8 else 2
        if clauses is None:
            e = [(rng.randint(1, n_e), 1) for _ in range(reps_e)]
            c = [(rng.randint(1, n_c), 1) for _ in range(reps_c)]
        else:
            e = [(1, rng.randint(1, clauses[0])) for _ in range(reps_e)]
            c = [(1, rng.randint(1, clauses[1])) for _ in range(reps_c)]
        out.append(make_match(e, c, kind, approximate=rng.random() < 0.2, small=rng.random() < 0.1))
    return out


def make_paragraph(index: int, lengths: list[int], sentence_ends: list[bool]) -> Paragraph:
    """A paragraph of clauses with the given lengths; ``sentence_ends[k]`` closes a sentence."""
    sentences, pending = [], []
    for k, (n, end) in enumerate(zip(lengths, sentence_ends), start=1):
        last = k == len(lengths)
        pending.append(Clause(k, len(sentences) + 1, "x" * n, n, not pending, end))
        if end or last:
            sentences.append(Sentence(len(sentences) + 1, tuple(pending), "." if end else None))
            pending = []
    return Paragraph(index, tuple(sentences), sum(lengths))


def random_paragraph(rng: random.Random, n: int, scale: int = 20) -> Paragraph:
    lengths = [rng.randint(1, scale) for _ in range(n)]
    ends = [rng.random() < 0.4 for _ in range(n)]
    ends[-1] = rng.random() < 0.9
    return make_paragraph(1, lengths, ends)
