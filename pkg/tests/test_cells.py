import pytest

from rdfsheet import (
    DirectIri,
    EditError,
    Iri,
    LabelReference,
    Literal,
    LiteralValue,
    XSD,
    parse_cell_input,
)


class TestQuoteRule:
    def test_quoted_text_is_langstring(self):
        intent = parse_cell_input("'A", "en")
        assert intent == LiteralValue(Literal("A", language="en"))

    def test_quote_then_datatype_inference_still_applies(self):
        assert parse_cell_input("'42", "en") == LiteralValue(Literal("42", datatype=XSD.int))
        assert parse_cell_input("'true", "en") == LiteralValue(
            Literal("true", datatype=XSD.boolean)
        )

    def test_quoted_hyperlink_stays_literal(self):
        intent = parse_cell_input("'https://example.org/", "en")
        assert intent == LiteralValue(Literal("https://example.org/", language="en"))

    def test_quote_only_quote(self):
        # a lone quote quotes the empty string; treat as invalid input
        with pytest.raises(EditError):
            parse_cell_input("'", "en")

    def test_double_quote_char_is_plain_text(self):
        assert parse_cell_input("''A", "en") == LiteralValue(Literal("'A", language="en"))


class TestDatatypeRules:
    def test_integers(self):
        assert parse_cell_input("42", "en") == LiteralValue(Literal("42", datatype=XSD.int))
        assert parse_cell_input("-7", "en") == LiteralValue(Literal("-7", datatype=XSD.int))
        assert parse_cell_input("+1", "en") == LiteralValue(Literal("+1", datatype=XSD.int))

    def test_int_is_checked_before_boolean(self):
        assert parse_cell_input("1", "en") == LiteralValue(Literal("1", datatype=XSD.int))
        assert parse_cell_input("0", "en") == LiteralValue(Literal("0", datatype=XSD.int))

    def test_floats(self):
        for text in ["3.5", "-0.25", ".5", "2e10", "1.5E-3"]:
            assert parse_cell_input(text, "en") == LiteralValue(
                Literal(text, datatype=XSD.float)
            )

    def test_int_overflow_falls_through_to_float(self):
        intent = parse_cell_input("2147483648", "en")
        assert intent == LiteralValue(Literal("2147483648", datatype=XSD.float))
        assert parse_cell_input("2147483647", "en") == LiteralValue(
            Literal("2147483647", datatype=XSD.int)
        )

    def test_booleans(self):
        assert parse_cell_input("true", "en") == LiteralValue(
            Literal("true", datatype=XSD.boolean)
        )
        assert parse_cell_input("false", "en") == LiteralValue(
            Literal("false", datatype=XSD.boolean)
        )

    def test_boolean_is_case_sensitive(self):
        assert parse_cell_input("True", "en") == LabelReference("True")
        assert parse_cell_input("FALSE", "en") == LabelReference("FALSE")

    def test_special_float_lexicals(self):
        for text in ("INF", "+INF", "-INF", "NaN"):
            intent = parse_cell_input(text)
            assert isinstance(intent, LiteralValue)
            assert intent.literal.datatype == XSD.float
        # only the exact-case spellings are in the lexical space
        for text in ("inf", "nan", "Inf", "INFINITY"):
            assert isinstance(parse_cell_input(text), LabelReference)

    def test_non_ascii_digits_are_labels(self):
        assert parse_cell_input("٤٢", "en") == LabelReference("٤٢")


class TestHyperlinkRule:
    def test_https_hyperlink(self):
        intent = parse_cell_input("https://iswc2017.semanticweb.org/", "en")
        assert intent == DirectIri(Iri("https://iswc2017.semanticweb.org/"))

    def test_http_hyperlink(self):
        assert parse_cell_input("http://example.org/x", "en") == DirectIri(
            Iri("http://example.org/x")
        )

    def test_other_schemes_are_labels(self):
        assert parse_cell_input("ftp://example.org/x", "en") == LabelReference(
            "ftp://example.org/x"
        )
        assert parse_cell_input("urn:uuid:123", "en") == LabelReference("urn:uuid:123")

    def test_hyperlink_with_space_is_a_label(self):
        assert isinstance(parse_cell_input("https://a.b/x y", "en"), LabelReference)


class TestLabelFallback:
    def test_plain_text_is_label_reference(self):
        assert parse_cell_input("ESWC", "en") == LabelReference("ESWC")
        assert parse_cell_input("related to", "en") == LabelReference("related to")

    def test_commas_are_plain_text(self):
        assert parse_cell_input("a, b", "en") == LabelReference("a, b")

    def test_empty_input_rejected(self):
        with pytest.raises(EditError):
            parse_cell_input("", "en")
