import pytest
from hypothesis import given, settings, strategies as st

from cnsalign.segmentation import (
    AbbreviationTable, Language, char_length, default_abbreviations, is_clause_terminal,
    is_sentence_terminal, segment_document, strip_noise,
)

EN, ZH = Language.ENGLISH, Language.CHINESE


def clause_texts(doc, para=1):
    return [c.text for c in doc.paragraph(para).clauses]


class TestDelimiters:
    def test_decimal_point_is_not_a_period(self):
        text = "US$ 197.66 billion"
        assert not is_sentence_terminal(text, text.index("."), EN)

    def test_thousands_comma_is_not_a_clause_break(self):
        text = "141,949 people"
        assert not is_clause_terminal(text, 3, EN)

    def test_abbreviation(self):
        text = "Mr. Smith left."
        abbrevs = default_abbreviations()
        assert not is_sentence_terminal(text, 2, EN, abbrevs)
        assert is_sentence_terminal(text, len(text) - 1, EN, abbrevs)

    def test_inner_dot_of_dotted_abbreviation(self):
        text = "the U.S. economy"
        abbrevs = default_abbreviations()
        assert not is_sentence_terminal(text, text.index("U.") + 1, EN, abbrevs)
        assert not is_sentence_terminal(text, text.index("S.") + 1, EN, abbrevs)

    def test_ellipsis(self):
        text = "and so... on"
        assert not is_sentence_terminal(text, text.index("..."), EN)

    def test_chinese_marks(self):
        text = "增长，出口。"
        assert is_clause_terminal(text, 2, ZH)
        assert is_sentence_terminal(text, 5, ZH)

    def test_bad_arguments(self):
        with pytest.raises(IndexError):
            is_sentence_terminal("abc", 7, EN)
        with pytest.raises(ValueError):
            is_sentence_terminal("abc", 0, EN)
        with pytest.raises(ValueError):
            is_clause_terminal("a.", 1, EN)


class TestAbbreviationTable:
    def test_sorted_lookup(self):
        table = AbbreviationTable.from_lines(["# comment", "Prof.", "", "Dr.", "Dr."])
        assert table.entries == ("Dr.", "Prof.")
        assert "Dr." in table and "Doctor" not in table

    def test_default_is_loaded(self):
        assert "Mr." in default_abbreviations()
        assert len(default_abbreviations()) >= 30


class TestNoise:
    def test_strips_header_and_footer_lines(self):
        raw = "==========\nSource: wire\n\nBody text.\n\n(End)\n"
        assert strip_noise(raw, EN) == "Body text.\n"

    def test_chinese_footer(self):
        assert strip_noise("正文。\n（完）\n", ZH) == "正文。\n"

    def test_body_is_untouched(self):
        raw = "First line.\nSecond (End) is body.\n"
        assert strip_noise(raw, EN) == raw

    @given(st.text(alphabet="ab .=\n()Endsource:完（）", max_size=60))
    def test_idempotent(self, raw):
        once = strip_noise(raw, EN)
        assert strip_noise(once, EN) == once


class TestSegment:
    def test_three_clauses(self):
        doc = segment_document("A, B. C.", EN)
        assert clause_texts(doc) == ["A,", "B.", "C."]
        para = doc.paragraph(1)
        assert len(para.sentences) == 2
        assert [c.clause_no for c in para.clauses] == [1, 2, 3]
        assert [c.starts_sentence for c in para.clauses] == [True, False, True]
        assert [c.ends_sentence for c in para.clauses] == [False, True, True]

    def test_numbers_do_not_split(self):
        doc = segment_document("Trade reached US$ 197.66 billion, up 25.5 percent.", EN)
        assert clause_texts(doc) == ["Trade reached US$ 197.66 billion,", "up 25.5 percent."]

    def test_paragraphs_at_blank_lines(self):
        doc = segment_document("One.\nstill one.\n\n  \nTwo.", EN)
        assert len(doc) == 2
        assert doc.paragraph(1).text == "One.\nstill one."

    def test_chinese(self):
        doc = segment_document("今年前九个月，外贸总额达1976.6亿美元。出口增长。", ZH)
        assert clause_texts(doc) == ["今年前九个月，", "外贸总额达1976.6亿美元。", "出口增长。"]
        assert doc.paragraph(1).char_length == char_length("今年前九个月，外贸总额达1976.6亿美元。出口增长。")

    def test_closing_quote_stays_with_clause(self):
        doc = segment_document('He said "yes." Then left.', EN)
        assert clause_texts(doc) == ['He said "yes."', "Then left."]

    def test_unterminated_tail(self):
        doc = segment_document("Headline without period", EN)
        (clause,) = doc.paragraph(1).clauses
        assert not clause.ends_sentence
        assert doc.paragraph(1).sentences[0].terminal is None

    def test_empty(self):
        assert len(segment_document("  \n\n ", EN)) == 0

    def test_char_length_ignores_whitespace(self):
        assert char_length("a b\tc\n") == 3


_words = st.text(alphabet="abc ,.;!?\n0123456789", max_size=80)
_hanzi = st.text(alphabet="中文字，。；！？0123456789.\n ", max_size=80)


@settings(max_examples=200)
@given(_words)
def test_english_reconstruction_and_numbering(text):
    doc = segment_document(text, EN)
    assert doc.text() == text
    for para in doc.paragraphs:
        assert [c.clause_no for c in para.clauses] == list(range(1, len(para.clauses) + 1))
        assert para.char_length == sum(c.char_length for c in para.clauses)
        assert [s.index for s in para.sentences] == list(range(1, len(para.sentences) + 1))


@settings(max_examples=200)
@given(_hanzi)
def test_chinese_reconstruction(text):
    doc = segment_document(text, ZH)
    assert doc.text() == text
    assert [p.index for p in doc.paragraphs] == list(range(1, len(doc) + 1))
