import pytest

from rdfsheet import Iri, Literal, RDF, RDFS, TermError, Triple, XSD
from rdfsheet.terms import XSD_INT_MAX, XSD_INT_MIN, nt_line, nt_term


class TestIri:
    def test_accepts_absolute_iris(self):
        for value in ["urn:uuid:abc", "http://example.org/a", "https://x.y/z#f", "a:b"]:
            assert Iri(value).value == value

    def test_rejects_missing_scheme(self):
        for value in ["", "noscheme", "/relative/path", "1http://x", ":empty"]:
            with pytest.raises(TermError):
                Iri(value)

    def test_rejects_whitespace(self):
        for value in ["urn:a b", "urn:a\nb", "urn:a\tb"]:
            with pytest.raises(TermError):
                Iri(value)

    def test_rejects_forbidden_characters(self):
        for ch in '<>"{}|^`\\':
            with pytest.raises(TermError):
                Iri(f"urn:a{ch}b")

    def test_equality_and_hash(self):
        assert Iri("urn:a:b") == Iri("urn:a:b")
        assert len({Iri("urn:a:b"), Iri("urn:a:b"), Iri("urn:a:c")}) == 2


class TestLiteral:
    def test_language_implies_langstring(self):
        lit = Literal("ISWC", language="en")
        assert lit.datatype == RDF.langString
        assert lit.language == "en"

    def test_langstring_requires_language(self):
        with pytest.raises(TermError):
            Literal("x", datatype=RDF.langString)

    def test_language_forbidden_on_other_datatypes(self):
        with pytest.raises(TermError):
            Literal("42", datatype=XSD.int, language="en")

    def test_plain_defaults_to_string(self):
        assert Literal("x").datatype == XSD.string
        assert Literal("x").language is None

    def test_language_tags_normalize_to_lowercase(self):
        assert Literal("x", language="EN").language == "en"
        assert Literal("x", language="en-US").language == "en-us"

    def test_invalid_language_tag(self):
        for tag in ["", "123", "en_US", "toolongtag9", "-en"]:
            with pytest.raises(TermError):
                Literal("x", language=tag)

    def test_int_lexical_space(self):
        Literal("42", datatype=XSD.int)
        Literal("-42", datatype=XSD.int)
        Literal("+7", datatype=XSD.int)
        Literal(str(XSD_INT_MAX), datatype=XSD.int)
        Literal(str(XSD_INT_MIN), datatype=XSD.int)
        for bad in ["", "4.2", "forty", "1e3", str(XSD_INT_MAX + 1), str(XSD_INT_MIN - 1), "٤٢"]:
            with pytest.raises(TermError):
                Literal(bad, datatype=XSD.int)

    def test_float_lexical_space(self):
        for ok in ["3.5", "-0.5", ".5", "5.", "2e10", "1.5E-3", "INF", "-INF", "NaN", "7"]:
            Literal(ok, datatype=XSD.float)
        for bad in ["", "x", "1.2.3", "e5", "--1", "٤.٢"]:
            with pytest.raises(TermError):
                Literal(bad, datatype=XSD.float)

    def test_boolean_lexical_space(self):
        for ok in ["true", "false", "1", "0"]:
            Literal(ok, datatype=XSD.boolean)
        for bad in ["True", "FALSE", "yes", "", "2"]:
            with pytest.raises(TermError):
                Literal(bad, datatype=XSD.boolean)

    def test_other_datatypes_uncheck(self):
        # imported data may carry datatypes beyond the four the editor emits
        Literal("2020-01-01", datatype=XSD.string)
        Literal("anything", datatype=Iri("urn:custom:dt"))


class TestRendering:
    def test_iri_term(self):
        assert nt_term(Iri("urn:a:b")) == "<urn:a:b>"

    def test_langstring_term(self):
        assert nt_term(Literal("ISWC", language="en")) == '"ISWC"@en'

    def test_typed_literal_term(self):
        assert nt_term(Literal("42", datatype=XSD.int)) == (
            '"42"^^<http://www.w3.org/2001/XMLSchema#int>'
        )

    def test_plain_string_term_has_no_suffix(self):
        assert nt_term(Literal("x")) == '"x"'

    def test_escapes(self):
        assert nt_term(Literal('say "hi"\n')) == '"say \\"hi\\"\\n"'
        assert nt_term(Literal("a\\b\t\r")) == '"a\\\\b\\t\\r"'
        assert nt_term(Literal("bell\x07")) == '"bell\\u0007"'

    def test_line(self):
        t = Triple(Iri("urn:a:s"), RDFS.label, Literal("X", language="en"))
        assert nt_line(t) == '<urn:a:s> <http://www.w3.org/2000/01/rdf-schema#label> "X"@en .'


def test_triple_components_are_typed():
    t = Triple(Iri("urn:a:s"), Iri("urn:a:p"), Literal("v"))
    assert t.subject == Iri("urn:a:s")
    assert t.object == Literal("v")
