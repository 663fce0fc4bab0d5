"""N-Triples serialization and parsing.

Output is canonical: one statement per line, lines sorted lexicographically,
so equal graphs always serialize to identical bytes.
"""

from __future__ import annotations

import re

from .errors import ParseError, TermError
from .graph import Graph
from .terms import RDF, XSD, Iri, Literal, Node, Triple, nt_line

_IRIREF = r"<([^<>\"{}|^`\\\x00-\x20]*)>"
_STRING = r'"((?:[^"\\\n\r]|\\.)*)"'
_LANGTAG = r"@([A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*)"

_TRIPLE_RE = re.compile(
    rf"^[ \t]*{_IRIREF}[ \t]+{_IRIREF}[ \t]+"
    rf"(?:{_IRIREF}|{_STRING}(?:{_LANGTAG}|\^\^{_IRIREF})?)"
    rf"[ \t]*\.[ \t]*(?:#.*)?\r?\Z"
)

_UNESCAPE_SIMPLE = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


def unescape_string(s: str, line: int) -> str:
    """Decode N-Triples/Turtle string escapes; rejects malformed ones."""
    if "\\" not in s:
        return s
    out = []
    i = 0
    n = len(s)
    while i < n:
        ch = s[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ParseError("dangling backslash in string", line)
        esc = s[i + 1]
        if esc in _UNESCAPE_SIMPLE:
            out.append(_UNESCAPE_SIMPLE[esc])
            i += 2
        elif esc in ("u", "U"):
            width = 4 if esc == "u" else 8
            hexpart = s[i + 2 : i + 2 + width]
            if len(hexpart) != width or any(c not in "0123456789abcdefABCDEF" for c in hexpart):
                raise ParseError(f"bad \\{esc} escape in string", line)
            code = int(hexpart, 16)
            if code > 0x10FFFF:
                raise ParseError(f"\\{esc} escape out of range", line)
            out.append(chr(code))
            i += 2 + width
        else:
            raise ParseError(f"unknown escape \\{esc} in string", line)
    return "".join(out)


def serialize_ntriples(graph: Graph) -> str:
    """Render a graph as sorted N-Triples text ('' for the empty graph)."""
    lines = sorted(nt_line(t) for t in graph)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def parse_ntriples(text: str) -> Graph:
    """Parse N-Triples text; raises ParseError with the offending line number."""
    g = Graph()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _TRIPLE_RE.match(raw)
        if not m:
            raise ParseError("not a valid N-Triples statement", lineno)
        s_iri, p_iri, o_iri, o_lex, o_lang, o_dt = m.groups()
        try:
            subject = Iri(unescape_string(s_iri, lineno))
            predicate = Iri(unescape_string(p_iri, lineno))
            obj: Node
            if o_iri is not None:
                obj = Iri(unescape_string(o_iri, lineno))
            else:
                lexical = unescape_string(o_lex, lineno)
                if o_lang is not None:
                    obj = Literal(lexical, RDF.langString, o_lang)
                elif o_dt is not None:
                    dt = Iri(unescape_string(o_dt, lineno))
                    if dt == RDF.langString:
                        raise TermError("rdf:langString literal requires a language tag")
                    obj = Literal(lexical, dt)
                else:
                    obj = Literal(lexical, XSD.string)
            g.add(Triple(subject, predicate, obj))
        except TermError as exc:
            raise ParseError(str(exc), lineno) from exc
    return g
