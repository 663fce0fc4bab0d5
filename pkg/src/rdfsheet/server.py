"""HTTP service hosting workbooks.

Endpoints:
  POST /workbooks                     create, 201 with {id, revision}
  GET  /workbooks                     list
  GET  /workbooks/{id}                full snapshot (sheets, graph, comments)
  POST /workbooks/{id}/edits          apply one edit, returns {revision, delta}
  GET  /workbooks/{id}/changes        server-sent events, ?since=N replay then live
  GET  /workbooks/{id}/export         ?format=ntriples|turtle, revision in header
  POST /workbooks/{id}/import         merge a document, logged as one import event
  GET  /workbooks/{id}/suggest        label autocomplete, ?q=&limit=
  GET  /health

Edits to one workbook are applied under a per-workbook lock: log append and
fsync happen before the response or any broadcast, so every acknowledged
revision survives a crash. The change feed buffers slow subscribers up to a
fixed queue size and then disconnects them with a resync event.
"""

from __future__ import annotations

import json
import os
import queue
import threading
import time
import uuid
from pathlib import Path

from fastapi import Body, FastAPI, Header, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, StreamingResponse

from .editlog import SNAPSHOT_INTERVAL, ChangeEvent, EditLog, replay, write_snapshot
from .edits import TripleDelta, delta_to_json, edit_from_json
from .errors import AmbiguousLabelError, EditError, ParseError
from .graph import Graph
from .ntriples import parse_ntriples, serialize_ntriples
from .terms import RDFS, Literal
from .turtle import parse_turtle, serialize_turtle
from .workbook import Workbook

DEFAULT_HEARTBEAT = 15.0
SUBSCRIBER_BUFFER = 256
DATA_DIR_ENV = "RDFSHEET_DATA_DIR"
HEARTBEAT_ENV = "RDFSHEET_HEARTBEAT"

FORMATS = {
    "ntriples": (serialize_ntriples, parse_ntriples, "application/n-triples"),
    "turtle": (serialize_turtle, parse_turtle, "text/turtle"),
}


class _Subscriber:
    __slots__ = ("queue", "resync_from")

    def __init__(self) -> None:
        self.queue: queue.Queue[str] = queue.Queue(maxsize=SUBSCRIBER_BUFFER)
        self.resync_from: int | None = None


def _sse_event(event: ChangeEvent) -> str:
    return "data: " + json.dumps(event.to_json(), separators=(",", ":")) + "\n\n"


def _sse_resync(resume: int) -> str:
    return "event: resync\ndata: " + json.dumps({"resume": resume}) + "\n\n"


class WorkbookSession:
    """One hosted workbook: engine state, log, feed history, subscribers."""

    def __init__(
        self,
        workbook: Workbook,
        log: EditLog,
        snapshot_path: Path,
        events: list[ChangeEvent],
        feed_base: int,
    ):
        self.workbook = workbook
        self.log = log
        self.snapshot_path = snapshot_path
        self.events = events
        self.feed_base = feed_base
        self.lock = threading.RLock()
        self.subscribers: set[_Subscriber] = set()

    def apply_edit(self, edit, actor: str | None) -> tuple[TripleDelta, int]:
        with self.lock:
            delta, revision = self.workbook.apply_edit(edit)
            now = time.time()
            self.log.append_edit(
                revision, edit, [iri.value for iri, _ in delta.minted], actor, now
            )
            event = ChangeEvent(revision, "edit", edit, delta, actor, now)
            self._record(event)
            return delta, revision

    def apply_import(self, g: Graph, actor: str | None) -> tuple[TripleDelta, int]:
        with self.lock:
            delta, revision = self.workbook.import_graph(g)
            now = time.time()
            self.log.append_import(revision, delta.added, actor, now)
            event = ChangeEvent(revision, "import", None, delta, actor, now)
            self._record(event)
            return delta, revision

    def _record(self, event: ChangeEvent) -> None:
        self.events.append(event)
        payload = _sse_event(event)
        for sub in list(self.subscribers):
            try:
                sub.queue.put_nowait(payload)
            except queue.Full:
                sub.resync_from = event.revision
                self.subscribers.discard(sub)
        if event.revision % SNAPSHOT_INTERVAL == 0:
            write_snapshot(self.snapshot_path, self.workbook)

    def subscribe(self, since: int) -> tuple[list[ChangeEvent], _Subscriber]:
        with self.lock:
            backlog = self.events[since - self.feed_base:]
            sub = _Subscriber()
            self.subscribers.add(sub)
            return backlog, sub

    def unsubscribe(self, sub: _Subscriber) -> None:
        with self.lock:
            self.subscribers.discard(sub)

    def snapshot_json(self) -> dict:
        with self.lock:
            data = self.workbook.to_snapshot()
            comments: dict[str, str] = {}
            for t in self.workbook.graph.match_iter(None, RDFS.comment, None):
                if isinstance(t.object, Literal):
                    current = comments.get(t.subject.value)
                    if current is None or t.object.language == self.workbook.language:
                        comments[t.subject.value] = t.object.lexical
            data["comments"] = comments
            data["statements"] = len(self.workbook.graph)
            return data


class WorkbookStore:
    """All sessions hosted by one server process, keyed by workbook id."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, WorkbookSession] = {}
        self.lock = threading.Lock()
        for log_path in sorted(self.data_dir.glob("*.log.jsonl")):
            workbook_id = log_path.name[: -len(".log.jsonl")]
            snapshot_path = self._snapshot_path(workbook_id)
            workbook, events, feed_base = replay(log_path, snapshot_path)
            session = WorkbookSession(
                workbook, EditLog(log_path), snapshot_path, events, feed_base
            )
            self.sessions[workbook_id] = session

    def _log_path(self, workbook_id: str) -> Path:
        return self.data_dir / f"{workbook_id}.log.jsonl"

    def _snapshot_path(self, workbook_id: str) -> Path:
        return self.data_dir / f"{workbook_id}.snapshot.json"

    def create(
        self,
        language: str = "en",
        reuse_by_label: bool = True,
        generated_ns: str = "urn:uuid:",
    ) -> WorkbookSession:
        workbook_id = uuid.uuid4().hex
        workbook = Workbook(
            workbook_id=workbook_id,
            language=language,
            reuse_by_label=reuse_by_label,
            generated_ns=generated_ns,
        )
        log = EditLog.create(self._log_path(workbook_id), workbook)
        session = WorkbookSession(workbook, log, self._snapshot_path(workbook_id), [], 0)
        with self.lock:
            self.sessions[workbook_id] = session
        return session

    def get(self, workbook_id: str) -> WorkbookSession | None:
        with self.lock:
            return self.sessions.get(workbook_id)

    def list_sessions(self) -> list[WorkbookSession]:
        with self.lock:
            return [self.sessions[k] for k in sorted(self.sessions)]

    def close(self) -> None:
        with self.lock:
            for session in self.sessions.values():
                session.log.close()
            self.sessions.clear()


def _error(status: int, code: str, **extra) -> JSONResponse:
    return JSONResponse({"error": code, **extra}, status_code=status)


def create_app(
    data_dir: str | Path | None = None,
    heartbeat: float | None = None,
) -> FastAPI:
    if data_dir is None:
        data_dir = os.environ.get(DATA_DIR_ENV, "rdfsheet-data")
    if heartbeat is None:
        heartbeat = float(os.environ.get(HEARTBEAT_ENV, DEFAULT_HEARTBEAT))
    store = WorkbookStore(data_dir)
    app = FastAPI(title="rdfsheet", docs_url=None, redoc_url=None)
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-Workbook-Revision"],
    )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/workbooks", status_code=201)
    def create_workbook(payload: dict | None = Body(None)):
        payload = payload or {}
        language = payload.get("language", "en")
        reuse = payload.get("reuse_by_label", True)
        generated_ns = payload.get("generated_ns", "urn:uuid:")
        if not isinstance(language, str) or not language:
            return _error(422, "invalid_workbook_config", detail="language must be a non-empty string")
        if not isinstance(reuse, bool):
            return _error(422, "invalid_workbook_config", detail="reuse_by_label must be a boolean")
        if not isinstance(generated_ns, str):
            return _error(422, "invalid_workbook_config", detail="generated_ns must be a string")
        try:
            session = store.create(language, reuse, generated_ns)
        except Exception as exc:  # noqa: BLE001 - surfaced as a config error
            return _error(422, "invalid_workbook_config", detail=str(exc))
        return {"id": session.workbook.id, "revision": session.workbook.revision}

    @app.get("/workbooks")
    def list_workbooks() -> dict:
        items = []
        for session in store.list_sessions():
            with session.lock:
                items.append(
                    {"id": session.workbook.id, "revision": session.workbook.revision}
                )
        return {"workbooks": items}

    @app.get("/workbooks/{workbook_id}")
    def get_workbook(workbook_id: str):
        session = store.get(workbook_id)
        if session is None:
            return _error(404, "unknown_workbook")
        return session.snapshot_json()

    @app.post("/workbooks/{workbook_id}/edits")
    def post_edit(
        workbook_id: str,
        payload: dict = Body(...),
        actor: str | None = Header(None, alias="X-Actor-Id"),
    ):
        session = store.get(workbook_id)
        if session is None:
            return _error(404, "unknown_workbook")
        try:
            edit = edit_from_json(payload)
        except EditError as exc:
            return _error(422, "invalid_edit", detail=str(exc))
        try:
            delta, revision = session.apply_edit(edit, actor)
        except AmbiguousLabelError as exc:
            return _error(
                409,
                "ambiguous_label",
                label=exc.label,
                language=exc.language,
                candidates=[iri.value for iri in exc.candidates],
            )
        except EditError as exc:
            return _error(422, "invalid_edit", detail=str(exc))
        return {"revision": revision, "delta": delta_to_json(delta)}

    @app.get("/workbooks/{workbook_id}/changes")
    def stream_changes(workbook_id: str, since: int = Query(0)):
        session = store.get(workbook_id)
        if session is None:
            return _error(404, "unknown_workbook")
        if since < 0:
            return _error(422, "invalid_since", detail="since must be non-negative")
        with session.lock:
            current = session.workbook.revision
            if since > current:
                return _error(
                    422, "invalid_since", detail=f"since {since} exceeds revision {current}"
                )
            if since < session.feed_base:
                return _error(
                    410,
                    "history_gone",
                    detail=f"events before revision {session.feed_base} are no longer held",
                    resume=current,
                )
            backlog, sub = session.subscribe(since)

        def stream():
            try:
                for start in range(0, len(backlog), 256):
                    yield "".join(_sse_event(e) for e in backlog[start:start + 256])
                while True:
                    if sub.resync_from is not None and sub.queue.empty():
                        yield _sse_resync(sub.resync_from)
                        return
                    try:
                        parts = [sub.queue.get(timeout=heartbeat)]
                    except queue.Empty:
                        if sub.resync_from is None:
                            yield ":heartbeat\n\n"
                        continue
                    # drain whatever else is queued into one chunk so a firehose
                    # of edits costs one send, not one send per event
                    while True:
                        try:
                            parts.append(sub.queue.get_nowait())
                        except queue.Empty:
                            break
                    yield "".join(parts)
            finally:
                session.unsubscribe(sub)

        return StreamingResponse(
            stream(),
            media_type="text/event-stream",
            headers={"Cache-Control": "no-cache", "X-Accel-Buffering": "no"},
        )

    @app.get("/workbooks/{workbook_id}/export")
    def export_workbook(workbook_id: str, format: str = Query("ntriples")):
        session = store.get(workbook_id)
        if session is None:
            return _error(404, "unknown_workbook")
        if format not in FORMATS:
            return _error(400, "unknown_format", detail=f"unsupported format {format!r}")
        serializer, _, media_type = FORMATS[format]
        with session.lock:
            text = serializer(session.workbook.graph)
            revision = session.workbook.revision
        return PlainTextResponse(
            text,
            media_type=media_type,
            headers={"X-Workbook-Revision": str(revision)},
        )

    @app.post("/workbooks/{workbook_id}/import")
    def import_document(
        workbook_id: str,
        payload: dict = Body(...),
        actor: str | None = Header(None, alias="X-Actor-Id"),
    ):
        session = store.get(workbook_id)
        if session is None:
            return _error(404, "unknown_workbook")
        document = payload.get("document")
        format = payload.get("format", "ntriples")
        if not isinstance(document, str):
            return _error(422, "invalid_import", detail="document must be a string")
        if format not in FORMATS:
            return _error(400, "unknown_format", detail=f"unsupported format {format!r}")
        _, parser, _ = FORMATS[format]
        try:
            g = parser(document)
        except ParseError as exc:
            return _error(
                422, "parse_error", detail=str(exc), line=exc.line, column=exc.column
            )
        delta, revision = session.apply_import(g, actor)
        labels = sum(
            1
            for t in delta.added
            if t.predicate == RDFS.label and isinstance(t.object, Literal)
        )
        return {
            "triples_added": len(delta.added),
            "labels_registered": labels,
            "revision": revision,
        }

    @app.get("/workbooks/{workbook_id}/suggest")
    def suggest(workbook_id: str, q: str = Query(""), limit: int = Query(10)):
        session = store.get(workbook_id)
        if session is None:
            return _error(404, "unknown_workbook")
        if limit < 0:
            return _error(422, "invalid_limit", detail="limit must be non-negative")
        with session.lock:
            hits = session.workbook.autocomplete(q, limit)
        return {
            "suggestions": [
                {"label": label, "iri": iri.value, "comment": comment}
                for label, iri, comment in hits
            ]
        }

    return app
