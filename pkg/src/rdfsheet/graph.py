"""Mutable triple set with subject/predicate/object indexes and a namespace table.

A Graph is not internally synchronized; callers serialize mutation.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .terms import Iri, Node, STANDARD_PREFIXES, Triple, nt_line


class Graph:
    """Set of triples with pattern matching. Insertion of a present triple is a no-op."""

    def __init__(self, namespaces: dict[str, str] | None = None):
        self._triples: set[Triple] = set()
        self._by_s: dict[Iri, set[Triple]] = {}
        self._by_p: dict[Iri, set[Triple]] = {}
        self._by_o: dict[Node, set[Triple]] = {}
        self.namespaces: dict[str, str] = dict(STANDARD_PREFIXES)
        if namespaces:
            self.namespaces.update(namespaces)

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def bind(self, prefix: str, namespace: str) -> None:
        """Associate a prefix with a namespace IRI for Turtle output."""
        self.namespaces[prefix] = namespace

    def add(self, t: Triple) -> bool:
        """Insert a triple. Returns True iff it was absent before."""
        if t in self._triples:
            return False
        self._triples.add(t)
        self._by_s.setdefault(t.subject, set()).add(t)
        self._by_p.setdefault(t.predicate, set()).add(t)
        self._by_o.setdefault(t.object, set()).add(t)
        return True

    def remove(self, t: Triple) -> bool:
        """Remove a triple. Returns True iff it was present."""
        if t not in self._triples:
            return False
        self._triples.discard(t)
        for index, key in ((self._by_s, t.subject), (self._by_p, t.predicate), (self._by_o, t.object)):
            bucket = index[key]
            bucket.discard(t)
            if not bucket:
                del index[key]
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        """Insert many triples; returns how many were actually new."""
        return sum(1 for t in triples if self.add(t))

    def _candidates(self, s: Iri | None, p: Iri | None, o: Node | None) -> Iterable[Triple]:
        buckets = []
        if s is not None:
            buckets.append(self._by_s.get(s, ()))
        if p is not None:
            buckets.append(self._by_p.get(p, ()))
        if o is not None:
            buckets.append(self._by_o.get(o, ()))
        if not buckets:
            return self._triples
        return min(buckets, key=len)

    def match_iter(
        self, s: Iri | None = None, p: Iri | None = None, o: Node | None = None
    ) -> Iterator[Triple]:
        """Matching triples in no particular order (cheaper than match)."""
        for t in self._candidates(s, p, o):
            if s is not None and t.subject != s:
                continue
            if p is not None and t.predicate != p:
                continue
            if o is not None and t.object != o:
                continue
            yield t

    def match(
        self, s: Iri | None = None, p: Iri | None = None, o: Node | None = None
    ) -> list[Triple]:
        """Matching triples, sorted by their N-Triples rendering."""
        return sorted(self.match_iter(s, p, o), key=nt_line)

    def subjects(self, p: Iri | None = None, o: Node | None = None) -> set[Iri]:
        """Distinct subjects of triples matching the given predicate/object."""
        return {t.subject for t in self.match_iter(None, p, o)}

    def objects(self, s: Iri | None = None, p: Iri | None = None) -> set[Node]:
        """Distinct objects of triples matching the given subject/predicate."""
        return {t.object for t in self.match_iter(s, p, None)}

    def copy(self) -> Graph:
        """Independent graph with the same triples and namespaces."""
        g = Graph(namespaces=self.namespaces)
        for t in self._triples:
            g.add(t)
        return g
