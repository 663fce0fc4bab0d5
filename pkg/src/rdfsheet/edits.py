"""Edit operations, the triple delta they produce, and their JSON wire forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union

from .errors import EditError
from .terms import Iri, Literal, Node, TermError, Triple, XSD


@dataclass(frozen=True, slots=True)
class NameSheet:
    sheet: int
    name: str


@dataclass(frozen=True, slots=True)
class SetRowHeader:
    sheet: int
    row: int
    text: str


@dataclass(frozen=True, slots=True)
class SetColumnHeader:
    sheet: int
    col: int
    text: str


@dataclass(frozen=True, slots=True)
class SetCell:
    sheet: int
    row: int
    col: int
    text: str


@dataclass(frozen=True, slots=True)
class PasteReference:
    sheet: int
    row: int
    col: int
    iri: Iri


@dataclass(frozen=True, slots=True)
class SetComment:
    iri: Iri
    text: str


EditOp = Union[NameSheet, SetRowHeader, SetColumnHeader, SetCell, PasteReference, SetComment]

_OP_NAMES = {
    NameSheet: "name_sheet",
    SetRowHeader: "set_row_header",
    SetColumnHeader: "set_column_header",
    SetCell: "set_cell",
    PasteReference: "paste_reference",
    SetComment: "set_comment",
}


@dataclass(frozen=True, slots=True)
class TripleDelta:
    """Exact triples added and removed by one edit, plus the IRIs it minted."""

    added: tuple[Triple, ...] = ()
    removed: tuple[Triple, ...] = ()
    minted: tuple[tuple[Iri, str | None], ...] = ()

    def is_empty(self) -> bool:
        return not (self.added or self.removed or self.minted)


def node_to_json(node: Node) -> dict[str, Any]:
    if isinstance(node, Iri):
        return {"kind": "iri", "value": node.value}
    out: dict[str, Any] = {"kind": "literal", "value": node.lexical, "datatype": node.datatype.value}
    if node.language is not None:
        out["language"] = node.language
    return out


def node_from_json(data: dict[str, Any]) -> Node:
    kind = data.get("kind")
    if kind == "iri":
        return Iri(data["value"])
    if kind == "literal":
        language = data.get("language")
        datatype = Iri(data["datatype"]) if data.get("datatype") else None
        if language is not None:
            return Literal(data["value"], language=language)
        return Literal(data["value"], datatype or XSD.string)
    raise EditError(f"unknown node kind: {kind!r}")


def triple_to_json(t: Triple) -> dict[str, Any]:
    return {"s": t.subject.value, "p": t.predicate.value, "o": node_to_json(t.object)}


def triple_from_json(data: dict[str, Any]) -> Triple:
    return Triple(Iri(data["s"]), Iri(data["p"]), node_from_json(data["o"]))


def delta_to_json(delta: TripleDelta) -> dict[str, Any]:
    return {
        "added": [triple_to_json(t) for t in delta.added],
        "removed": [triple_to_json(t) for t in delta.removed],
        "minted": [{"iri": iri.value, "label": label} for iri, label in delta.minted],
    }


def edit_to_json(edit: EditOp) -> dict[str, Any]:
    data: dict[str, Any] = {"op": _OP_NAMES[type(edit)]}
    if isinstance(edit, NameSheet):
        data.update(sheet=edit.sheet, name=edit.name)
    elif isinstance(edit, SetRowHeader):
        data.update(sheet=edit.sheet, row=edit.row, text=edit.text)
    elif isinstance(edit, SetColumnHeader):
        data.update(sheet=edit.sheet, col=edit.col, text=edit.text)
    elif isinstance(edit, SetCell):
        data.update(sheet=edit.sheet, row=edit.row, col=edit.col, text=edit.text)
    elif isinstance(edit, PasteReference):
        data.update(sheet=edit.sheet, row=edit.row, col=edit.col, iri=edit.iri.value)
    elif isinstance(edit, SetComment):
        data.update(iri=edit.iri.value, text=edit.text)
    return data


def _require(data: dict[str, Any], key: str, typ: type) -> Any:
    if key not in data:
        raise EditError(f"edit is missing field {key!r}")
    value = data[key]
    if typ is int and isinstance(value, bool) or not isinstance(value, typ):
        raise EditError(f"edit field {key!r} must be {typ.__name__}")
    return value


def edit_from_json(data: dict[str, Any]) -> EditOp:
    """Decode an edit from its wire form; raises EditError on malformed input."""
    if not isinstance(data, dict):
        raise EditError("edit must be a JSON object")
    op = data.get("op")
    try:
        if op == "name_sheet":
            return NameSheet(_require(data, "sheet", int), _require(data, "name", str))
        if op == "set_row_header":
            return SetRowHeader(
                _require(data, "sheet", int), _require(data, "row", int), _require(data, "text", str)
            )
        if op == "set_column_header":
            return SetColumnHeader(
                _require(data, "sheet", int), _require(data, "col", int), _require(data, "text", str)
            )
        if op == "set_cell":
            return SetCell(
                _require(data, "sheet", int),
                _require(data, "row", int),
                _require(data, "col", int),
                _require(data, "text", str),
            )
        if op == "paste_reference":
            return PasteReference(
                _require(data, "sheet", int),
                _require(data, "row", int),
                _require(data, "col", int),
                Iri(_require(data, "iri", str)),
            )
        if op == "set_comment":
            return SetComment(Iri(_require(data, "iri", str)), _require(data, "text", str))
    except TermError as exc:
        raise EditError(str(exc)) from exc
    raise EditError(f"unknown edit op: {op!r}")
