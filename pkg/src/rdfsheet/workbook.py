"""The workbook model and the edit engine.

The mapping is fixed: a named sheet defines a class, each row header an
instance of it, each column header a property with the class as domain, and
each body cell one statement. Every edit is converted into an exact triple
delta applied to the workbook graph.

Cells entered before their row or column header exist are kept pending and
materialized when the missing header arrives, so the final graph does not
depend on entry order.
"""

from __future__ import annotations

import uuid
from collections import Counter
from dataclasses import dataclass, field
from random import Random
from typing import Callable, Iterable

from .cells import CellIntent, DirectIri, LabelReference, LiteralValue, ResourceRef, parse_cell_input
from .edits import (
    EditOp,
    NameSheet,
    PasteReference,
    SetCell,
    SetColumnHeader,
    SetComment,
    SetRowHeader,
    TripleDelta,
)
from .errors import AmbiguousLabelError, EditError
from .graph import Graph
from .labels import LabelIndex
from .terms import OWL, RDF, RDFS, Iri, Literal, Node, Triple

DEFAULT_GENERATED_NS = "urn:uuid:"
MAX_SHEETS = 10_000

CREATED = "created-here"
REFERENCED = "referenced"

BoundValue = ResourceRef | DirectIri | LiteralValue

_RESOURCE = "resource"  # sentinel key in per-property value statistics


@dataclass(slots=True)
class HeaderBinding:
    raw_text: str
    node: Iri | None = None
    origin: str = CREATED


@dataclass(slots=True)
class CellBinding:
    raw_text: str
    value: BoundValue | None = None
    origin: str = CREATED
    materialized: bool = False


@dataclass(slots=True)
class Sheet:
    name: str = ""
    class_iri: Iri | None = None
    former_class: Iri | None = None  # survives un-naming so a later name revives it
    rows: dict[int, HeaderBinding] = field(default_factory=dict)
    cols: dict[int, HeaderBinding] = field(default_factory=dict)
    cells: dict[tuple[int, int], CellBinding] = field(default_factory=dict)


def default_minter() -> Callable[[], str]:
    return lambda: str(uuid.uuid4())


def seeded_minter(seed: int) -> Callable[[], str]:
    """Reproducible UUIDv4 sequence for tests and replay comparisons."""
    rng = Random(seed)
    return lambda: str(uuid.UUID(int=rng.getrandbits(128), version=4))


class _Mutation:
    """Collects one edit's graph changes and keeps the label index in sync."""

    def __init__(self, wb: Workbook):
        self.wb = wb
        self.added: list[Triple] = []
        self.removed: list[Triple] = []
        self.minted: list[tuple[Iri, str | None]] = []

    def add(self, t: Triple) -> bool:
        inserted = self.wb.graph.add(t)
        if inserted:
            self.added.append(t)
            if t.predicate == RDFS.label and isinstance(t.object, Literal):
                self.wb.label_index.register(t.object.lexical, t.object.language, t.subject)
        return inserted

    def remove(self, t: Triple) -> bool:
        removed = self.wb.graph.remove(t)
        if removed:
            self.removed.append(t)
            if t.predicate == RDFS.label and isinstance(t.object, Literal):
                self.wb.label_index.unregister(t.object.lexical, t.object.language, t.subject)
        return removed

    def finish(self) -> TripleDelta:
        adds = Counter(self.added)
        removes = Counter(self.removed)
        added = []
        for t in self.added:
            if adds[t] - removes.get(t, 0) > 0:
                added.append(t)
                adds[t] = 0  # emit once
        removed = []
        for t in self.removed:
            if removes[t] - Counter(self.added).get(t, 0) > 0:
                removed.append(t)
                removes[t] = 0
        return TripleDelta(tuple(added), tuple(removed), tuple(self.minted))


class Workbook:
    """One spreadsheet workbook bound to a graph. Edits apply strictly in sequence."""

    def __init__(
        self,
        workbook_id: str = "",
        language: str = "en",
        reuse_by_label: bool = True,
        generated_ns: str = DEFAULT_GENERATED_NS,
        minter: Callable[[], str] | None = None,
    ):
        self.id = workbook_id
        self.language = language
        self.reuse_by_label = reuse_by_label
        self.generated_ns = Iri(generated_ns)
        self.graph = Graph()
        self.label_index = LabelIndex()
        self.sheets: list[Sheet] = []
        self.revision = 0
        self._minter = minter or default_minter()
        self._mint_queue: list[str] | None = None
        # rdfs:range triples this engine asserted, per property
        self.engine_ranges: dict[Iri, Iri] = {}
        # materialized cell value statistics per property (datatype IRI or "resource")
        self._prop_stats: dict[Iri, Counter] = {}

    # ------------------------------------------------------------------ sheets

    def sheet(self, index: int) -> Sheet:
        """The sheet at ``index``, growing the workbook if needed."""
        if index < 0:
            raise EditError(f"sheet index must be non-negative, got {index}")
        if index >= MAX_SHEETS:
            raise EditError(f"sheet index {index} exceeds the limit of {MAX_SHEETS}")
        while len(self.sheets) <= index:
            self.sheets.append(Sheet())
        return self.sheets[index]

    # ------------------------------------------------------------------ minting

    def _next_postfix(self) -> str:
        if self._mint_queue is not None:
            if not self._mint_queue:
                raise EditError("replay ran out of recorded minted IRIs")
            return self._mint_queue.pop(0)
        return self._minter()

    def _mint(self, m: _Mutation, label: str | None) -> Iri:
        postfix = self._next_postfix()
        if postfix.startswith(self.generated_ns.value):
            iri = Iri(postfix)
        else:
            iri = Iri(self.generated_ns.value + postfix)
        m.minted.append((iri, label))
        return iri

    def mint_iri(self) -> Iri:
        """A fresh IRI under the generated namespace (not recorded in any delta)."""
        return Iri(self.generated_ns.value + self._minter())

    # ------------------------------------------------------------------ labels

    def _resolve_or_mint(self, m: _Mutation, label: str) -> tuple[Iri, bool]:
        if self.reuse_by_label:
            candidates = self.label_index.lookup(label, self.language)
            if len(candidates) == 1:
                return next(iter(candidates)), False
            if len(candidates) > 1:
                raise AmbiguousLabelError(
                    label, self.language, sorted(candidates, key=lambda i: i.value)
                )
        iri = self._mint(m, label)
        m.add(Triple(iri, RDFS.label, Literal(label, language=self.language)))
        return iri, True

    def resolve_label(self, label: str) -> tuple[Iri, bool]:
        """Resolve a label to a resource, minting (and labelling) when absent.

        Engine primitive: mutates the graph without producing a revision.
        """
        if not label:
            raise EditError("label must be non-empty")
        m = _Mutation(self)
        return self._resolve_or_mint(m, label)

    def labels_of(self, iri: Iri) -> list[Literal]:
        return sorted(
            (t.object for t in self.graph.match_iter(iri, RDFS.label, None)
             if isinstance(t.object, Literal)),
            key=lambda lit: (lit.language != self.language, lit.language or "", lit.lexical),
        )

    def comment_of(self, iri: Iri) -> str | None:
        comments = sorted(
            (t.object for t in self.graph.match_iter(iri, RDFS.comment, None)
             if isinstance(t.object, Literal)),
            key=lambda lit: (lit.language != self.language, lit.language or "", lit.lexical),
        )
        return comments[0].lexical if comments else None

    def autocomplete(self, prefix: str, limit: int = 10) -> list[tuple[str, Iri, str | None]]:
        """Case-insensitive prefix suggestions: (label, iri, comment)."""
        hits = self.label_index.prefix_search(prefix, limit)
        return [(label, iri, self.comment_of(iri)) for label, iri in hits]

    # ------------------------------------------------------------------ cell stats / ranges

    def _stats_changed(self, m: _Mutation, prop: Iri, value: BoundValue, delta: int) -> None:
        stats = self._prop_stats.setdefault(prop, Counter())
        key = value.literal.datatype if isinstance(value, LiteralValue) else _RESOURCE
        stats[key] += delta
        if stats[key] <= 0:
            del stats[key]
        if not stats:
            del self._prop_stats[prop]
        self._recompute_range(m, prop)

    def _recompute_range(self, m: _Mutation, prop: Iri) -> None:
        stats = self._prop_stats.get(prop)
        want: Iri | None = None
        if stats and _RESOURCE not in stats:
            datatypes = list(stats)
            if len(datatypes) == 1:
                want = datatypes[0]
        current = self.engine_ranges.get(prop)
        if current == want:
            return
        if current is not None:
            m.remove(Triple(prop, RDFS.range, current))
            del self.engine_ranges[prop]
        if want is not None and m.add(Triple(prop, RDFS.range, want)):
            # Ownership is claimed only when the insert was real; a pre-existing
            # user- or vocabulary-asserted triple stays theirs.
            self.engine_ranges[prop] = want

    def infer_column_range(self, sheet_index: int, col: int) -> Iri | None:
        """The engine-asserted range for the column's property, if any."""
        sheet = self.sheet(sheet_index)
        binding = sheet.cols.get(col)
        if binding is None or binding.node is None:
            raise EditError(f"column {col} has no bound property")
        return self.engine_ranges.get(binding.node)

    # ------------------------------------------------------------------ materialization

    @staticmethod
    def _object_term(value: BoundValue) -> Node:
        if isinstance(value, LiteralValue):
            return value.literal
        return value.iri

    def _try_materialize(self, m: _Mutation, sheet: Sheet, r: int, c: int) -> None:
        binding = sheet.cells.get((r, c))
        if binding is None or binding.materialized:
            return
        row = sheet.rows.get(r)
        col = sheet.cols.get(c)
        if row is None or row.node is None or col is None or col.node is None:
            return
        if binding.value is None:
            intent = parse_cell_input(binding.raw_text, self.language)
            if isinstance(intent, LabelReference):
                iri, created = self._resolve_or_mint(m, intent.label)
                if created:
                    m.add(Triple(iri, RDF.type, OWL.Thing))
                binding.value = ResourceRef(iri)
                binding.origin = CREATED if created else REFERENCED
            elif isinstance(intent, DirectIri):
                binding.value = intent
                binding.origin = REFERENCED
            else:
                binding.value = intent
                binding.origin = CREATED
        m.add(Triple(row.node, col.node, self._object_term(binding.value)))
        self._stats_changed(m, col.node, binding.value, +1)
        binding.materialized = True

    def _unmaterialize(self, m: _Mutation, sheet: Sheet, r: int, c: int) -> None:
        binding = sheet.cells.get((r, c))
        if binding is None or not binding.materialized:
            return
        row = sheet.rows[r]
        col = sheet.cols[c]
        assert row.node is not None and col.node is not None
        m.remove(Triple(row.node, col.node, self._object_term(binding.value)))
        self._stats_changed(m, col.node, binding.value, -1)
        binding.materialized = False

    def _row_cells(self, sheet: Sheet, r: int) -> list[tuple[int, int]]:
        return sorted(key for key in sheet.cells if key[0] == r)

    def _col_cells(self, sheet: Sheet, c: int) -> list[tuple[int, int]]:
        return sorted(key for key in sheet.cells if key[1] == c)

    # ------------------------------------------------------------------ pre-validation

    def _pending_label_refs(self, sheet: Sheet, keys: Iterable[tuple[int, int]],
                            need_row: bool) -> list[str]:
        labels = []
        for r, c in keys:
            binding = sheet.cells[(r, c)]
            if binding.materialized or binding.value is not None:
                continue
            other = sheet.cols.get(c) if need_row else sheet.rows.get(r)
            if other is None or other.node is None:
                continue
            intent = parse_cell_input(binding.raw_text, self.language)
            if isinstance(intent, LabelReference):
                labels.append(intent.label)
        return labels

    def _labels_to_resolve(self, edit: EditOp) -> list[str]:
        """Labels this edit will resolve, for ambiguity checking before mutation."""
        if not self.reuse_by_label:
            return []
        if isinstance(edit, (NameSheet, PasteReference, SetComment)):
            return []
        if edit.sheet < 0 or edit.sheet >= len(self.sheets):
            sheet = Sheet()
        else:
            sheet = self.sheets[edit.sheet]
        if isinstance(edit, SetRowHeader):
            if edit.text == "":
                return []
            existing = sheet.rows.get(edit.row)
            if existing is not None and existing.node is not None:
                if existing.raw_text == edit.text or existing.origin == CREATED:
                    return []
            return [edit.text] + self._pending_label_refs(
                sheet, self._row_cells(sheet, edit.row), need_row=True
            )
        if isinstance(edit, SetColumnHeader):
            if edit.text == "":
                return []
            existing = sheet.cols.get(edit.col)
            if existing is not None and existing.node is not None:
                if existing.raw_text == edit.text or existing.origin == CREATED:
                    return []
            return [edit.text] + self._pending_label_refs(
                sheet, self._col_cells(sheet, edit.col), need_row=False
            )
        if isinstance(edit, SetCell):
            if edit.text == "":
                return []
            existing = sheet.cells.get((edit.row, edit.col))
            if existing is not None and existing.raw_text == edit.text:
                return []
            intent = parse_cell_input(edit.text, self.language)
            if not isinstance(intent, LabelReference):
                return []
            if (
                existing is not None
                and isinstance(existing.value, ResourceRef)
                and existing.origin == CREATED
            ):
                return []  # rename path does not resolve
            row = sheet.rows.get(edit.row)
            col = sheet.cols.get(edit.col)
            if row is None or row.node is None or col is None or col.node is None:
                return []  # stays pending
            return [intent.label]
        return []

    def _precheck(self, edit: EditOp) -> None:
        for label in self._labels_to_resolve(edit):
            candidates = self.label_index.lookup(label, self.language)
            if len(candidates) > 1:
                raise AmbiguousLabelError(
                    label, self.language, sorted(candidates, key=lambda i: i.value)
                )

    # ------------------------------------------------------------------ edit dispatch

    def apply_edit(self, edit: EditOp, minted: list[str] | None = None) -> tuple[TripleDelta, int]:
        """Apply one edit atomically; returns its delta and new revision.

        ``minted`` replays previously recorded IRIs instead of drawing fresh ones.
        """
        self._validate(edit)
        self._precheck(edit)
        if minted is not None:
            self._mint_queue = list(minted)
        m = _Mutation(self)
        try:
            if isinstance(edit, NameSheet):
                self._apply_name_sheet(m, edit)
            elif isinstance(edit, SetRowHeader):
                self._apply_row_header(m, edit)
            elif isinstance(edit, SetColumnHeader):
                self._apply_column_header(m, edit)
            elif isinstance(edit, SetCell):
                self._apply_set_cell(m, edit)
            elif isinstance(edit, PasteReference):
                self._apply_paste(m, edit)
            elif isinstance(edit, SetComment):
                self._apply_comment(m, edit)
            else:
                raise EditError(f"unknown edit type {type(edit).__name__}")
            if self._mint_queue:
                raise EditError("replay did not consume all recorded minted IRIs")
        finally:
            self._mint_queue = None
        self.revision += 1
        return m.finish(), self.revision

    def _validate(self, edit: EditOp) -> None:
        if isinstance(edit, (NameSheet, SetRowHeader, SetColumnHeader, SetCell, PasteReference)):
            if edit.sheet < 0:
                raise EditError(f"sheet index must be non-negative, got {edit.sheet}")
            if edit.sheet >= MAX_SHEETS:
                raise EditError(f"sheet index {edit.sheet} exceeds the limit of {MAX_SHEETS}")
        if isinstance(edit, (SetRowHeader, SetCell, PasteReference)) and edit.row < 0:
            raise EditError(f"row index must be non-negative, got {edit.row}")
        if isinstance(edit, (SetColumnHeader, SetCell, PasteReference)) and edit.col < 0:
            raise EditError(f"column index must be non-negative, got {edit.col}")

    def _apply_name_sheet(self, m: _Mutation, edit: NameSheet) -> None:
        sheet = self.sheet(edit.sheet)
        if edit.name == sheet.name:
            return
        label = lambda text: Literal(text, language=self.language)
        if edit.name == "":
            # Unlink only; the class resource and everything typed by it remain.
            assert sheet.class_iri is not None
            m.remove(Triple(sheet.class_iri, RDFS.label, label(sheet.name)))
            sheet.class_iri = None
            sheet.name = ""
            return
        if sheet.class_iri is not None:
            m.remove(Triple(sheet.class_iri, RDFS.label, label(sheet.name)))
            m.add(Triple(sheet.class_iri, RDFS.label, label(edit.name)))
            sheet.name = edit.name
            return
        cls = sheet.former_class
        if cls is None:
            cls = self._mint(m, edit.name)
            m.add(Triple(cls, RDF.type, RDFS.Class))
        m.add(Triple(cls, RDFS.label, label(edit.name)))
        sheet.class_iri = cls
        sheet.former_class = cls
        sheet.name = edit.name
        for binding in sheet.rows.values():
            if binding.node is not None:
                m.add(Triple(binding.node, RDF.type, cls))
        for binding in sheet.cols.values():
            if binding.node is not None:
                m.add(Triple(binding.node, RDFS.domain, cls))

    def _header_label_literal(self, binding: HeaderBinding) -> Literal:
        return Literal(binding.raw_text, language=self.language)

    def _apply_row_header(self, m: _Mutation, edit: SetRowHeader) -> None:
        sheet = self.sheet(edit.sheet)
        existing = sheet.rows.get(edit.row)
        if edit.text == "":
            if existing is None:
                return
            for key in self._row_cells(sheet, edit.row):
                self._unmaterialize(m, sheet, *key)
            if existing.origin == CREATED and existing.node is not None:
                m.remove(Triple(existing.node, RDFS.label, self._header_label_literal(existing)))
            del sheet.rows[edit.row]
            return
        if existing is not None and existing.raw_text == edit.text:
            return
        if existing is not None and existing.node is not None and existing.origin == CREATED:
            m.remove(Triple(existing.node, RDFS.label, self._header_label_literal(existing)))
            m.add(Triple(existing.node, RDFS.label, Literal(edit.text, language=self.language)))
            existing.raw_text = edit.text
            return
        if existing is not None:
            # Rebinding a referenced header retracts this row's statements first.
            for key in self._row_cells(sheet, edit.row):
                self._unmaterialize(m, sheet, *key)
        node, created = self._resolve_or_mint(m, edit.text)
        sheet.rows[edit.row] = HeaderBinding(edit.text, node, CREATED if created else REFERENCED)
        m.add(Triple(node, RDF.type, OWL.Thing))
        if sheet.class_iri is not None:
            m.add(Triple(node, RDF.type, sheet.class_iri))
        for key in self._row_cells(sheet, edit.row):
            self._try_materialize(m, sheet, *key)

    def _apply_column_header(self, m: _Mutation, edit: SetColumnHeader) -> None:
        sheet = self.sheet(edit.sheet)
        existing = sheet.cols.get(edit.col)
        if edit.text == "":
            if existing is None:
                return
            for key in self._col_cells(sheet, edit.col):
                self._unmaterialize(m, sheet, *key)
            if existing.origin == CREATED and existing.node is not None:
                m.remove(Triple(existing.node, RDFS.label, self._header_label_literal(existing)))
            del sheet.cols[edit.col]
            return
        if existing is not None and existing.raw_text == edit.text:
            return
        if existing is not None and existing.node is not None and existing.origin == CREATED:
            m.remove(Triple(existing.node, RDFS.label, self._header_label_literal(existing)))
            m.add(Triple(existing.node, RDFS.label, Literal(edit.text, language=self.language)))
            existing.raw_text = edit.text
            return
        if existing is not None:
            for key in self._col_cells(sheet, edit.col):
                self._unmaterialize(m, sheet, *key)
        node, created = self._resolve_or_mint(m, edit.text)
        sheet.cols[edit.col] = HeaderBinding(edit.text, node, CREATED if created else REFERENCED)
        m.add(Triple(node, RDF.type, RDF.Property))
        if sheet.class_iri is not None:
            m.add(Triple(node, RDFS.domain, sheet.class_iri))
        for key in self._col_cells(sheet, edit.col):
            self._try_materialize(m, sheet, *key)

    def _apply_set_cell(self, m: _Mutation, edit: SetCell) -> None:
        sheet = self.sheet(edit.sheet)
        key = (edit.row, edit.col)
        existing = sheet.cells.get(key)
        if edit.text == "":
            if existing is not None:
                self._unmaterialize(m, sheet, edit.row, edit.col)
                del sheet.cells[key]
            return
        if existing is not None and existing.raw_text == edit.text:
            return
        if existing is not None and isinstance(existing.value, ResourceRef) and existing.origin == CREATED:
            intent = parse_cell_input(edit.text, self.language)
            if isinstance(intent, LabelReference):
                # Correcting the label renames the resource the cell created.
                node = existing.value.iri
                m.remove(Triple(node, RDFS.label, Literal(existing.raw_text, language=self.language)))
                m.add(Triple(node, RDFS.label, Literal(intent.label, language=self.language)))
                existing.raw_text = edit.text
                return
        if existing is not None:
            self._unmaterialize(m, sheet, edit.row, edit.col)
            existing.raw_text = edit.text
            existing.value = None
            existing.origin = CREATED
        else:
            sheet.cells[key] = CellBinding(edit.text)
        self._try_materialize(m, sheet, edit.row, edit.col)

    def _apply_paste(self, m: _Mutation, edit: PasteReference) -> None:
        sheet = self.sheet(edit.sheet)
        key = (edit.row, edit.col)
        if sheet.cells.get(key) is not None:
            self._unmaterialize(m, sheet, edit.row, edit.col)
        labels = self.labels_of(edit.iri)
        raw = labels[0].lexical if labels else edit.iri.value
        sheet.cells[key] = CellBinding(raw, ResourceRef(edit.iri), REFERENCED)
        self._try_materialize(m, sheet, edit.row, edit.col)

    def _apply_comment(self, m: _Mutation, edit: SetComment) -> None:
        existing = [
            t
            for t in self.graph.match(edit.iri, RDFS.comment, None)
            if isinstance(t.object, Literal) and t.object.language == self.language
        ]
        for t in existing:
            m.remove(t)
        if edit.text:
            m.add(Triple(edit.iri, RDFS.comment, Literal(edit.text, language=self.language)))

    # ------------------------------------------------------------------ import

    def import_graph(self, g: Graph) -> tuple[TripleDelta, int]:
        """Merge a parsed document; labels become reusable via the index."""
        m = _Mutation(self)
        for t in sorted(g, key=lambda t: (t.subject.value, t.predicate.value, str(t.object))):
            m.add(t)
        self.revision += 1
        return m.finish(), self.revision

    # ------------------------------------------------------------------ snapshots

    def to_snapshot(self) -> dict:
        """JSON-compatible full state; pairs with from_snapshot."""
        from .ntriples import serialize_ntriples

        def header(b: HeaderBinding) -> dict:
            return {"text": b.raw_text, "node": b.node.value if b.node else None, "origin": b.origin}

        def cell(b: CellBinding) -> dict:
            value: dict | None = None
            if isinstance(b.value, ResourceRef):
                value = {"kind": "resource", "iri": b.value.iri.value}
            elif isinstance(b.value, DirectIri):
                value = {"kind": "direct", "iri": b.value.iri.value}
            elif isinstance(b.value, LiteralValue):
                lit = b.value.literal
                value = {
                    "kind": "literal",
                    "lexical": lit.lexical,
                    "datatype": lit.datatype.value,
                    "language": lit.language,
                }
            return {
                "text": b.raw_text,
                "value": value,
                "origin": b.origin,
                "materialized": b.materialized,
            }

        return {
            "id": self.id,
            "revision": self.revision,
            "language": self.language,
            "reuse_by_label": self.reuse_by_label,
            "generated_ns": self.generated_ns.value,
            "sheets": [
                {
                    "name": s.name,
                    "class_iri": s.class_iri.value if s.class_iri else None,
                    "former_class": s.former_class.value if s.former_class else None,
                    "rows": {str(i): header(b) for i, b in sorted(s.rows.items())},
                    "cols": {str(i): header(b) for i, b in sorted(s.cols.items())},
                    "cells": {f"{r},{c}": cell(b) for (r, c), b in sorted(s.cells.items())},
                }
                for s in self.sheets
            ],
            "engine_ranges": {p.value: d.value for p, d in sorted(
                self.engine_ranges.items(), key=lambda kv: kv[0].value)},
            "graph": serialize_ntriples(self.graph),
        }

    @classmethod
    def from_snapshot(cls, data: dict, minter: Callable[[], str] | None = None) -> Workbook:
        from .ntriples import parse_ntriples

        wb = cls(
            workbook_id=data["id"],
            language=data["language"],
            reuse_by_label=data["reuse_by_label"],
            generated_ns=data["generated_ns"],
            minter=minter,
        )
        wb.revision = data["revision"]
        wb.graph = parse_ntriples(data["graph"])
        for t in wb.graph:
            if t.predicate == RDFS.label and isinstance(t.object, Literal):
                wb.label_index.register(t.object.lexical, t.object.language, t.subject)
        wb.engine_ranges = {Iri(p): Iri(d) for p, d in data["engine_ranges"].items()}

        def header(d: dict) -> HeaderBinding:
            return HeaderBinding(d["text"], Iri(d["node"]) if d["node"] else None, d["origin"])

        def cell(d: dict) -> CellBinding:
            value: BoundValue | None = None
            v = d["value"]
            if v is not None:
                if v["kind"] == "resource":
                    value = ResourceRef(Iri(v["iri"]))
                elif v["kind"] == "direct":
                    value = DirectIri(Iri(v["iri"]))
                else:
                    value = LiteralValue(
                        Literal(v["lexical"], Iri(v["datatype"]) if not v["language"] else None,
                                v["language"])
                    )
            return CellBinding(d["text"], value, d["origin"], d["materialized"])

        for sd in data["sheets"]:
            s = Sheet(
                name=sd["name"],
                class_iri=Iri(sd["class_iri"]) if sd["class_iri"] else None,
                former_class=Iri(sd["former_class"]) if sd["former_class"] else None,
                rows={int(i): header(h) for i, h in sd["rows"].items()},
                cols={int(i): header(h) for i, h in sd["cols"].items()},
                cells={
                    (int(k.split(",")[0]), int(k.split(",")[1])): cell(cd)
                    for k, cd in sd["cells"].items()
                },
            )
            wb.sheets.append(s)
        for s in wb.sheets:
            for (r, c), b in s.cells.items():
                if b.materialized and b.value is not None:
                    col = s.cols[c]
                    assert col.node is not None
                    stats = wb._prop_stats.setdefault(col.node, Counter())
                    key = b.value.literal.datatype if isinstance(b.value, LiteralValue) else _RESOURCE
                    stats[key] += 1
        return wb


def import_vocabulary(wb: Workbook, g: Graph) -> int:
    """Merge a vocabulary graph; returns how many label pairs were newly registered."""
    delta, _ = wb.import_graph(g)
    return sum(
        1 for t in delta.added if t.predicate == RDFS.label and isinstance(t.object, Literal)
    )
