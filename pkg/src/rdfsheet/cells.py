"""Classification of raw cell text into literals, direct IRIs, or label references.

Priority: a leading single quote forces a literal; otherwise an http(s)
hyperlink is used verbatim as the resource IRI; otherwise integer, then
floating point, then true/false; anything else refers to a resource by label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EditError
from .terms import XSD_INT_MAX, XSD_INT_MIN, Iri, Literal, TermError, XSD

# ASCII digits only: the XSD lexical spaces do not admit other digit scripts.
_INT_RE = re.compile(r"[+-]?[0-9]+\Z")
_FLOAT_RE = re.compile(r"[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?\Z")
_HYPERLINK_RE = re.compile(r"https?://[^\s<>\"{}|^`\\]+\Z")


@dataclass(frozen=True, slots=True)
class LiteralValue:
    """The cell holds a typed literal."""

    literal: Literal


@dataclass(frozen=True, slots=True)
class DirectIri:
    """The cell text is a hyperlink, used verbatim as the resource IRI."""

    iri: Iri


@dataclass(frozen=True, slots=True)
class LabelReference:
    """The cell names a resource by label, to be resolved or minted."""

    label: str


@dataclass(frozen=True, slots=True)
class ResourceRef:
    """A materialized cell bound to a concrete resource IRI."""

    iri: Iri


CellIntent = LiteralValue | DirectIri | LabelReference


def _infer_literal(text: str) -> Literal | None:
    """Integer, then float, then boolean; None when no datatype rule applies."""
    if _INT_RE.match(text):
        value = int(text)
        if XSD_INT_MIN <= value <= XSD_INT_MAX:
            return Literal(text, XSD.int)
        # Overlong digit strings fall through to the float rule.
    if _FLOAT_RE.match(text) or text in ("INF", "+INF", "-INF", "NaN"):
        return Literal(text, XSD.float)
    if text in ("true", "false"):
        return Literal(text, XSD.boolean)
    return None


def parse_cell_input(text: str, language: str = "en") -> CellIntent:
    """Classify raw cell text. Raises EditError on empty input."""
    if text == "":
        raise EditError("cell input must be non-empty")
    if text.startswith("'"):
        rest = text[1:]
        if rest == "":
            raise EditError("quoted cell input must contain text")
        lit = _infer_literal(rest)
        if lit is None:
            lit = Literal(rest, language=language)
        return LiteralValue(lit)
    if _HYPERLINK_RE.match(text):
        try:
            return DirectIri(Iri(text))
        except TermError:
            pass
    lit = _infer_literal(text)
    if lit is not None:
        return LiteralValue(lit)
    return LabelReference(text)
