"""RDF terms: IRIs, literals, triples, and the well-known vocabulary constants.

Subjects and predicates are always IRIs; this system never emits blank nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import TermError

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
# Characters that cannot occur in an IRI reference (RFC 3987 excluded set).
_IRI_FORBIDDEN = set('<>"{}|^`\\')
_LANG_RE = re.compile(r"[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*\Z")

_INT_LEXICAL_RE = re.compile(r"[+-]?[0-9]+\Z")
_FLOAT_LEXICAL_RE = re.compile(
    r"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?|[+-]?INF|NaN)\Z"
)
_BOOL_LEXICALS = frozenset({"true", "false", "1", "0"})

XSD_INT_MIN = -(2**31)
XSD_INT_MAX = 2**31 - 1


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI. Validated on construction."""

    value: str

    def __post_init__(self):
        v = self.value
        if not v:
            raise TermError("IRI must be non-empty")
        if not _SCHEME_RE.match(v):
            raise TermError(f"IRI has no scheme: {v!r}")
        for ch in v:
            if ch.isspace():
                raise TermError(f"IRI contains whitespace: {v!r}")
            if ch in _IRI_FORBIDDEN:
                raise TermError(f"IRI contains forbidden character {ch!r}: {v!r}")

    def __str__(self) -> str:
        return self.value


class _Ns:
    """Builds Iri constants under one namespace base."""

    def __init__(self, base: str):
        self.base = base

    def term(self, local: str) -> Iri:
        return Iri(self.base + local)


_rdf = _Ns("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
_rdfs = _Ns("http://www.w3.org/2000/01/rdf-schema#")
_xsd = _Ns("http://www.w3.org/2001/XMLSchema#")
_owl = _Ns("http://www.w3.org/2002/07/owl#")


class RDF:
    NS = _rdf.base
    type = _rdf.term("type")
    Property = _rdf.term("Property")
    langString = _rdf.term("langString")


class RDFS:
    NS = _rdfs.base
    Class = _rdfs.term("Class")
    label = _rdfs.term("label")
    comment = _rdfs.term("comment")
    domain = _rdfs.term("domain")
    range = _rdfs.term("range")


class XSD:
    NS = _xsd.base
    string = _xsd.term("string")
    int = _xsd.term("int")
    integer = _xsd.term("integer")
    decimal = _xsd.term("decimal")
    double = _xsd.term("double")
    float = _xsd.term("float")
    boolean = _xsd.term("boolean")


class OWL:
    NS = _owl.base
    Class = _owl.term("Class")
    Thing = _owl.term("Thing")
    ObjectProperty = _owl.term("ObjectProperty")
    DatatypeProperty = _owl.term("DatatypeProperty")
    AnnotationProperty = _owl.term("AnnotationProperty")


STANDARD_PREFIXES: dict[str, str] = {
    "rdf": RDF.NS,
    "rdfs": RDFS.NS,
    "xsd": XSD.NS,
    "owl": OWL.NS,
}


def _check_lexical(lexical: str, datatype: Iri) -> None:
    if datatype == XSD.int:
        if not _INT_LEXICAL_RE.match(lexical):
            raise TermError(f"not an xsd:int lexical form: {lexical!r}")
        if not XSD_INT_MIN <= int(lexical) <= XSD_INT_MAX:
            raise TermError(f"xsd:int out of 32-bit range: {lexical!r}")
    elif datatype == XSD.float:
        if not _FLOAT_LEXICAL_RE.match(lexical):
            raise TermError(f"not an xsd:float lexical form: {lexical!r}")
    elif datatype == XSD.boolean:
        if lexical not in _BOOL_LEXICALS:
            raise TermError(f"not an xsd:boolean lexical form: {lexical!r}")


@dataclass(frozen=True, slots=True)
class Literal:
    """An RDF literal. A language tag is present iff the datatype is rdf:langString.

    ``Literal("A", language="en")`` infers rdf:langString; a bare
    ``Literal("A")`` is a plain xsd:string.
    """

    lexical: str
    datatype: Iri = field(default=None)  # type: ignore[assignment]
    language: str | None = None

    def __post_init__(self):
        lang = self.language
        if lang is not None:
            if not _LANG_RE.match(lang):
                raise TermError(f"invalid language tag: {lang!r}")
            lang = lang.lower()
            object.__setattr__(self, "language", lang)
            if self.datatype is None:
                object.__setattr__(self, "datatype", RDF.langString)
            elif self.datatype != RDF.langString:
                raise TermError("language-tagged literal must have rdf:langString datatype")
        else:
            if self.datatype is None:
                object.__setattr__(self, "datatype", XSD.string)
            elif self.datatype == RDF.langString:
                raise TermError("rdf:langString literal requires a language tag")
        _check_lexical(self.lexical, self.datatype)

    def __str__(self) -> str:
        if self.language:
            return f'"{self.lexical}"@{self.language}'
        return f'"{self.lexical}"'


Node = Union[Iri, Literal]


@dataclass(frozen=True, slots=True)
class Triple:
    """One RDF statement; subject and predicate are IRIs."""

    subject: Iri
    predicate: Iri
    object: Node

    def __post_init__(self):
        if not isinstance(self.subject, Iri):
            raise TermError("triple subject must be an IRI")
        if not isinstance(self.predicate, Iri):
            raise TermError("triple predicate must be an IRI")
        if not isinstance(self.object, (Iri, Literal)):
            raise TermError("triple object must be an IRI or literal")


_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def escape_string(s: str) -> str:
    """Escape a literal's lexical form for N-Triples / Turtle output."""
    out = []
    for ch in s:
        esc = _ESCAPES.get(ch)
        if esc is not None:
            out.append(esc)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def nt_term(node: Node) -> str:
    """Render one term the way it appears on an N-Triples line."""
    if isinstance(node, Iri):
        return f"<{node.value}>"
    quoted = f'"{escape_string(node.lexical)}"'
    if node.language is not None:
        return f"{quoted}@{node.language}"
    if node.datatype == XSD.string:
        return quoted
    return f"{quoted}^^<{node.datatype.value}>"


def nt_line(t: Triple) -> str:
    """Render a triple as one N-Triples statement (without the newline)."""
    return f"{nt_term(t.subject)} {nt_term(t.predicate)} {nt_term(t.object)} ."
