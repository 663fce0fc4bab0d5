"""Deterministic renaming of UUID-minted IRIs so independently built graphs compare equal.

Each IRI under the generated namespace is rewritten to an IRI derived from its
label; when two generated IRIs share a label, their type sets disambiguate.
"""

from __future__ import annotations

from urllib.parse import quote

from .errors import CanonicalizationError
from .graph import Graph
from .terms import RDF, RDFS, Iri, Literal, Node, Triple

CANONICAL_NS = "urn:canon:"


def _primary_label(graph: Graph, iri: Iri) -> str:
    labels = [
        t.object
        for t in graph.match_iter(iri, RDFS.label, None)
        if isinstance(t.object, Literal)
    ]
    if not labels:
        raise CanonicalizationError(f"generated IRI {iri.value} has no rdfs:label")
    labels.sort(key=lambda lit: (lit.lexical, lit.language or ""))
    return labels[0].lexical


def _type_key(graph: Graph, iri: Iri, generated_ns: str) -> str:
    keys = []
    for t in graph.match_iter(iri, RDF.type, None):
        o = t.object
        if isinstance(o, Iri):
            if o.value.startswith(generated_ns):
                keys.append(_primary_label(graph, o))
            else:
                keys.append(o.value)
    return "|".join(sorted(set(keys)))


def canonicalize(graph: Graph, generated_ns: Iri) -> Graph:
    """Rewrite generated-namespace IRIs to label-derived IRIs; other nodes unchanged.

    Raises CanonicalizationError when a generated IRI is unlabeled or when two
    generated IRIs share both label and type set.
    """
    ns = generated_ns.value
    generated: set[Iri] = set()
    for t in graph:
        for node in (t.subject, t.predicate, t.object):
            if isinstance(node, Iri) and node.value.startswith(ns):
                generated.add(node)
    if not generated:
        return graph.copy()

    by_label: dict[str, list[Iri]] = {}
    for iri in sorted(generated, key=lambda i: i.value):
        by_label.setdefault(_primary_label(graph, iri), []).append(iri)

    mapping: dict[Iri, Iri] = {}
    for label, iris in by_label.items():
        if len(iris) == 1:
            mapping[iris[0]] = Iri(CANONICAL_NS + quote(label, safe=""))
            continue
        seen: dict[str, Iri] = {}
        for iri in iris:
            tk = _type_key(graph, iri, ns)
            if tk in seen:
                raise CanonicalizationError(
                    f"cannot disambiguate {iri.value} from {seen[tk].value}: "
                    f"same label {label!r} and same types"
                )
            seen[tk] = iri
            mapping[iri] = Iri(CANONICAL_NS + quote(label, safe="") + "~" + quote(tk, safe=""))

    def rewrite(node: Node) -> Node:
        if isinstance(node, Iri):
            return mapping.get(node, node)
        return node

    out = Graph(namespaces=graph.namespaces)
    for t in graph:
        out.add(Triple(mapping.get(t.subject, t.subject), mapping.get(t.predicate, t.predicate), rewrite(t.object)))
    return out
