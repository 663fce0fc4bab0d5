"""Turtle subset: @prefix directives, ';' predicate lists, ',' object lists, 'a'.

Collections and blank-node property lists are out of scope. Parsing then
serializing (or the reverse) preserves the triple set exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, TermError
from .graph import Graph
from .ntriples import unescape_string
from .terms import RDF, XSD, Iri, Literal, Node, Triple, escape_string, nt_term

_PNAME_LOCAL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*\Z")


class _PrefixTable:
    """Maps IRIs to prefixed names, remembering which prefixes were used."""

    def __init__(self, namespaces: dict[str, str]):
        # Longest namespace first so overlapping bases resolve deterministically.
        self.entries = sorted(namespaces.items(), key=lambda kv: (-len(kv[1]), kv[0]))
        self.used: set[str] = set()

    def pname(self, iri: Iri) -> str | None:
        for prefix, ns in self.entries:
            if iri.value.startswith(ns):
                local = iri.value[len(ns):]
                if local == "" or _PNAME_LOCAL_RE.match(local):
                    self.used.add(prefix)
                    return f"{prefix}:{local}"
        return None

    def term(self, node: Node) -> str:
        if isinstance(node, Iri):
            pn = self.pname(node)
            return pn if pn is not None else f"<{node.value}>"
        quoted = f'"{escape_string(node.lexical)}"'
        if node.language is not None:
            return f"{quoted}@{node.language}"
        if node.datatype == XSD.string:
            return quoted
        dt = self.pname(node.datatype) or f"<{node.datatype.value}>"
        return f"{quoted}^^{dt}"


def serialize_turtle(graph: Graph) -> str:
    """Render a graph as Turtle, grouped by subject, deterministically ordered.

    Only prefixes actually used by the triples are declared.
    """
    if len(graph) == 0:
        return ""
    table = _PrefixTable(graph.namespaces)

    by_subject: dict[Iri, list[Triple]] = {}
    for t in graph:
        by_subject.setdefault(t.subject, []).append(t)

    body: list[str] = []
    for subject in sorted(by_subject, key=nt_term):
        triples = by_subject[subject]
        by_pred: dict[Iri, list[Node]] = {}
        for t in triples:
            by_pred.setdefault(t.predicate, []).append(t.object)

        def pred_key(p: Iri) -> tuple[int, str]:
            return (0 if p == RDF.type else 1, nt_term(p))

        parts = []
        for pred in sorted(by_pred, key=pred_key):
            verb = "a" if pred == RDF.type else table.term(pred)
            objs = ", ".join(table.term(o) for o in sorted(by_pred[pred], key=nt_term))
            parts.append(f"{verb} {objs}")
        body.append(f"{table.term(subject)} " + " ;\n    ".join(parts) + " .")

    lines = [f"@prefix {p}: <{graph.namespaces[p]}> ." for p in sorted(table.used)]
    if lines:
        lines.append("")
    return "\n".join(lines + body) + "\n"


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # iriref | pname | string | langtag | dtsep | dot | semi | comma | kw | prefixdecl | number | eof
    value: str
    line: int
    column: int


_NUMBER_RE = re.compile(r"[+-]?(?:[0-9]+\.[0-9]+|\.[0-9]+|[0-9]+)(?:[eE][+-]?[0-9]+)?")
_PNAME_RE = re.compile(r"(?:[A-Za-z][A-Za-z0-9_\-]*)?:(?:[A-Za-z0-9_%\-.]*)")
_LANGTAG_RE = re.compile(r"@[A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*")
_BARE_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*")


def _tokenize(text: str):
    tokens: list[_Token] = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col

        def emit(kind: str, value: str, length: int):
            nonlocal i, col
            tokens.append(_Token(kind, value, line, start_col))
            i += length
            col += length

        if ch == "<":
            end = text.find(">", i + 1)
            if end == -1 or "\n" in text[i:end]:
                raise ParseError("unterminated IRI reference", line, start_col)
            emit("iriref", text[i + 1 : end], end - i + 1)
            continue
        if ch == '"':
            j = i + 1
            while j < n:
                c = text[j]
                if c == "\\":
                    j += 2
                    continue
                if c == '"':
                    break
                if c == "\n":
                    raise ParseError("newline inside string literal", line, start_col)
                j += 1
            if j >= n or text[j] != '"':
                raise ParseError("unterminated string literal", line, start_col)
            emit("string", text[i + 1 : j], j - i + 1)
            continue
        if text.startswith("^^", i):
            emit("dtsep", "^^", 2)
            continue
        if ch == "@":
            if text.startswith("@prefix", i):
                emit("prefixdecl", "@prefix", len("@prefix"))
                continue
            m = _LANGTAG_RE.match(text, i)
            if m:
                emit("langtag", m.group(0)[1:], len(m.group(0)))
                continue
            raise ParseError("bad '@' directive or language tag", line, start_col)
        if ch == ".":
            nxt = text[i + 1] if i + 1 < n else ""
            if not nxt.isdigit():
                emit("dot", ".", 1)
                continue
        if ch == ";":
            emit("semi", ";", 1)
            continue
        if ch == ",":
            emit("comma", ",", 1)
            continue
        m = _PNAME_RE.match(text, i)
        if m:
            # A statement-terminating dot must not be eaten by the local name.
            value = m.group(0).rstrip(".")
            emit("pname", value, len(value))
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            emit("number", m.group(0), len(m.group(0)))
            continue
        m = _BARE_RE.match(text, i)
        if m:
            emit("kw", m.group(0), len(m.group(0)))
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.graph = Graph()
        self.prefixes: dict[str, str] = {}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.kind} {tok.value!r}", tok.line, tok.column)
        return tok

    def fail(self, message: str, tok: _Token):
        raise ParseError(message, tok.line, tok.column)

    def parse(self) -> Graph:
        while self.peek().kind != "eof":
            if self.peek().kind == "prefixdecl":
                self.next()
                pn = self.expect("pname")
                if not pn.value.endswith(":"):
                    self.fail("prefix declaration must end with ':'", pn)
                iri = self.expect("iriref")
                self.expect("dot")
                prefix = pn.value[:-1]
                self.prefixes[prefix] = unescape_string(iri.value, iri.line)
                self.graph.bind(prefix, self.prefixes[prefix])
                continue
            self.parse_statement()
        return self.graph

    def resolve_pname(self, tok: _Token) -> Iri:
        prefix, _, local = tok.value.partition(":")
        if prefix not in self.prefixes:
            self.fail(f"undeclared prefix {prefix!r}", tok)
        try:
            return Iri(self.prefixes[prefix] + local)
        except TermError as exc:
            raise ParseError(str(exc), tok.line, tok.column) from exc

    def parse_iri(self) -> Iri:
        tok = self.next()
        if tok.kind == "iriref":
            try:
                return Iri(unescape_string(tok.value, tok.line))
            except TermError as exc:
                raise ParseError(str(exc), tok.line, tok.column) from exc
        if tok.kind == "pname":
            return self.resolve_pname(tok)
        self.fail(f"expected IRI, found {tok.kind} {tok.value!r}", tok)

    def parse_verb(self) -> Iri:
        tok = self.peek()
        if tok.kind == "kw" and tok.value == "a":
            self.next()
            return RDF.type
        return self.parse_iri()

    def parse_object(self) -> Node:
        tok = self.peek()
        if tok.kind in ("iriref", "pname"):
            return self.parse_iri()
        if tok.kind == "string":
            self.next()
            lexical = unescape_string(tok.value, tok.line)
            nxt = self.peek()
            try:
                if nxt.kind == "langtag":
                    self.next()
                    return Literal(lexical, RDF.langString, nxt.value)
                if nxt.kind == "dtsep":
                    self.next()
                    dt = self.parse_iri()
                    if dt == RDF.langString:
                        raise TermError("rdf:langString literal requires a language tag")
                    return Literal(lexical, dt)
                return Literal(lexical, XSD.string)
            except TermError as exc:
                raise ParseError(str(exc), tok.line, tok.column) from exc
        if tok.kind == "number":
            self.next()
            v = tok.value
            if re.fullmatch(r"[+-]?[0-9]+", v):
                return Literal(v, XSD.integer)
            if "e" in v.lower():
                return Literal(v, XSD.double)
            return Literal(v, XSD.decimal)
        if tok.kind == "kw" and tok.value in ("true", "false"):
            self.next()
            return Literal(tok.value, XSD.boolean)
        self.fail(f"expected object term, found {tok.kind} {tok.value!r}", tok)

    def parse_statement(self) -> None:
        subject = self.parse_iri()
        while True:
            predicate = self.parse_verb()
            while True:
                obj = self.parse_object()
                self.graph.add(Triple(subject, predicate, obj))
                if self.peek().kind == "comma":
                    self.next()
                    continue
                break
            tok = self.next()
            if tok.kind == "semi":
                # Tolerate a trailing ';' before the closing dot.
                if self.peek().kind == "dot":
                    self.next()
                    return
                continue
            if tok.kind == "dot":
                return
            self.fail(f"expected ';' or '.', found {tok.kind} {tok.value!r}", tok)


def parse_turtle(text: str) -> Graph:
    """Parse the Turtle subset; raises ParseError with line and column."""
    return _Parser(text).parse()
