"""Label index: exact (label, language) lookup plus case-insensitive prefix search.

Mirrors exactly the rdfs:label triples of the workbook graph; the workbook
routes every label triple mutation through register/unregister.
"""

from __future__ import annotations

from bisect import bisect_left

from .terms import Iri


class LabelIndex:
    def __init__(self):
        # (lexical, language or None) -> set of IRIs
        self._exact: dict[tuple[str, str | None], set[Iri]] = {}
        # (casefolded label, label, iri value) kept sorted for prefix scans
        self._sorted: list[tuple[str, str, str]] = []
        self._dirty = False

    def register(self, label: str, language: str | None, iri: Iri) -> None:
        self._exact.setdefault((label, language), set()).add(iri)
        self._dirty = True

    def unregister(self, label: str, language: str | None, iri: Iri) -> None:
        key = (label, language)
        bucket = self._exact.get(key)
        if bucket is None:
            return
        bucket.discard(iri)
        if not bucket:
            del self._exact[key]
        self._dirty = True

    def lookup(self, label: str, language: str | None) -> set[Iri]:
        """IRIs carrying this label, in the given language or untagged."""
        found = set(self._exact.get((label, language), ()))
        if language is not None:
            found |= self._exact.get((label, None), set())
        return found

    def _rebuild(self) -> None:
        entries = set()
        for (label, _lang), iris in self._exact.items():
            for iri in iris:
                entries.add((label.casefold(), label, iri.value))
        self._sorted = sorted(entries)
        self._dirty = False

    def prefix_search(self, prefix: str, limit: int) -> list[tuple[str, Iri]]:
        """Case-insensitive prefix matches, sorted by (label, iri), truncated."""
        if limit <= 0:
            return []
        if self._dirty:
            self._rebuild()
        folded = prefix.casefold()
        start = bisect_left(self._sorted, (folded,))
        hits: list[tuple[str, str]] = []
        for folded_label, label, iri_value in self._sorted[start:]:
            if not folded_label.startswith(folded):
                break
            hits.append((label, iri_value))
        hits = sorted(set(hits))[:limit]
        return [(label, Iri(value)) for label, value in hits]

    def __len__(self) -> int:
        return sum(len(v) for v in self._exact.values())
