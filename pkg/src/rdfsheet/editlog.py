"""Append-only edit log and snapshot files.

The log is JSON Lines: a versioned header record first, then one record per
accepted change. Records are fsynced before a change is acknowledged, so a
crash can lose at most an unacknowledged partial tail line. Replaying a log
through the engine reproduces the workbook state and every change event.

Record schemas (all one JSON object per line):
  header  {"format", "version", "workbook": {id, language, reuse_by_label, generated_ns}}
  edit    {"revision", "kind": "edit", "ts", "actor", "edit", "minted": [iri, ...]}
  import  {"revision", "kind": "import", "ts", "actor", "added": [triple, ...]}

Snapshot files hold the full workbook state at one revision and make recovery
skip the log prefix up to that revision.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

from .edits import (
    EditOp,
    TripleDelta,
    delta_to_json,
    edit_from_json,
    edit_to_json,
    triple_from_json,
    triple_to_json,
)
from .errors import LogError
from .graph import Graph
from .workbook import Workbook

FORMAT_NAME = "rdfsheet-editlog"
SNAPSHOT_FORMAT_NAME = "rdfsheet-snapshot"
FORMAT_VERSION = 1
SNAPSHOT_INTERVAL = 1000


@dataclass(frozen=True, slots=True)
class ChangeEvent:
    """One accepted change, as broadcast on the feed and rebuilt from the log."""

    revision: int
    kind: str  # "edit" or "import"
    edit: EditOp | None
    delta: TripleDelta
    actor: str | None
    timestamp: float

    def to_json(self) -> dict:
        return {
            "revision": self.revision,
            "kind": self.kind,
            "actor": self.actor,
            "ts": self.timestamp,
            "edit": edit_to_json(self.edit) if self.edit is not None else None,
            "delta": delta_to_json(self.delta),
        }


class EditLog:
    """Appender for one workbook's log file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._handle = open(self.path, "a", encoding="utf-8")

    @classmethod
    def create(cls, path: str | Path, workbook: Workbook) -> EditLog:
        path = Path(path)
        if path.exists():
            raise LogError(f"log file already exists: {path}")
        header = {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "workbook": {
                "id": workbook.id,
                "language": workbook.language,
                "reuse_by_label": workbook.reuse_by_label,
                "generated_ns": workbook.generated_ns.value,
            },
        }
        path.parent.mkdir(parents=True, exist_ok=True)
        log = cls(path)
        log._write(header)
        return log

    def _write(self, record: dict) -> None:
        self._handle.write(json.dumps(record, separators=(",", ":")) + "\n")
        self._handle.flush()
        os.fsync(self._handle.fileno())

    def append_edit(
        self,
        revision: int,
        edit: EditOp,
        minted: list[str],
        actor: str | None,
        timestamp: float,
    ) -> None:
        self._write(
            {
                "revision": revision,
                "kind": "edit",
                "ts": timestamp,
                "actor": actor,
                "edit": edit_to_json(edit),
                "minted": minted,
            }
        )

    def append_import(
        self,
        revision: int,
        added: tuple,
        actor: str | None,
        timestamp: float,
    ) -> None:
        self._write(
            {
                "revision": revision,
                "kind": "import",
                "ts": timestamp,
                "actor": actor,
                "added": [triple_to_json(t) for t in added],
            }
        )

    def close(self) -> None:
        self._handle.close()


def read_records(path: str | Path) -> tuple[dict, Iterator[dict]]:
    """The header and an iterator of change records.

    A malformed final line is treated as a torn write and dropped; malformed
    lines elsewhere fail the whole read.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise LogError(f"empty log file: {path}")

    def decode(index: int, line: str, is_last: bool) -> dict | None:
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            if is_last:
                return None
            raise LogError(f"malformed log record at line {index + 1} in {path}")
        if not isinstance(record, dict):
            raise LogError(f"malformed log record at line {index + 1} in {path}")
        return record

    header = decode(0, lines[0], is_last=len(lines) == 1)
    if header is None or header.get("format") != FORMAT_NAME:
        raise LogError(f"not an edit log: {path}")
    if header.get("version") != FORMAT_VERSION:
        raise LogError(f"unsupported log version {header.get('version')} in {path}")

    def records() -> Iterator[dict]:
        last = len(lines) - 1
        for i in range(1, len(lines)):
            record = decode(i, lines[i], is_last=i == last)
            if record is not None:
                yield record

    return header, records()


def workbook_from_header(header: dict, minter: Callable[[], str] | None = None) -> Workbook:
    config = header["workbook"]
    return Workbook(
        workbook_id=config["id"],
        language=config["language"],
        reuse_by_label=config["reuse_by_label"],
        generated_ns=config["generated_ns"],
        minter=minter,
    )


def write_snapshot(path: str | Path, workbook: Workbook) -> None:
    """Atomic snapshot write (temp file then rename)."""
    path = Path(path)
    payload = {
        "format": SNAPSHOT_FORMAT_NAME,
        "version": FORMAT_VERSION,
        "revision": workbook.revision,
        "workbook": workbook.to_snapshot(),
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as f:
        json.dump(payload, f, separators=(",", ":"))
        f.write("\n")
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def load_snapshot(path: str | Path, minter: Callable[[], str] | None = None) -> Workbook | None:
    path = Path(path)
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError:
        return None  # torn snapshot write; fall back to full replay
    if payload.get("format") != SNAPSHOT_FORMAT_NAME:
        raise LogError(f"not a snapshot file: {path}")
    return Workbook.from_snapshot(payload["workbook"], minter=minter)


def replay(
    log_path: str | Path,
    snapshot_path: str | Path | None = None,
    minter: Callable[[], str] | None = None,
) -> tuple[Workbook, list[ChangeEvent], int]:
    """Rebuild a workbook and its change events from disk.

    Returns (workbook, events, feed_base): events cover revisions after
    feed_base, which is 0 for a full replay or the snapshot's revision.
    """
    header, records = read_records(log_path)
    workbook = None
    if snapshot_path is not None:
        workbook = load_snapshot(snapshot_path, minter=minter)
    if workbook is None:
        workbook = workbook_from_header(header, minter=minter)
    feed_base = workbook.revision
    events: list[ChangeEvent] = []
    for record in records:
        revision = record.get("revision")
        if not isinstance(revision, int):
            raise LogError(f"log record without revision in {log_path}")
        if revision <= workbook.revision:
            continue  # covered by the snapshot
        if revision != workbook.revision + 1:
            raise LogError(
                f"log gap: expected revision {workbook.revision + 1}, found {revision}"
            )
        kind = record.get("kind")
        if kind == "edit":
            edit = edit_from_json(record["edit"])
            minted = record.get("minted", [])
            delta, applied = workbook.apply_edit(edit, minted=list(minted))
        elif kind == "import":
            g = Graph()
            for tj in record["added"]:
                g.add(triple_from_json(tj))
            edit = None
            delta, applied = workbook.import_graph(g)
        else:
            raise LogError(f"unknown log record kind {kind!r} in {log_path}")
        if applied != revision:
            raise LogError(f"replay revision mismatch: log {revision}, engine {applied}")
        events.append(
            ChangeEvent(revision, kind, edit, delta, record.get("actor"), record.get("ts", 0.0))
        )
    return workbook, events, feed_base
