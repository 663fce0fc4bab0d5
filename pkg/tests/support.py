"""Shared helpers for the test suite: scripts, random data, a threaded server."""

from __future__ import annotations

import json
import socket
import threading
import time
from pathlib import Path
from random import Random

import httpx
import uvicorn

from rdfsheet import (
    Graph,
    Iri,
    Literal,
    NameSheet,
    PasteReference,
    SetCell,
    SetColumnHeader,
    SetComment,
    SetRowHeader,
    Triple,
    Workbook,
    canonicalize,
    seeded_minter,
    serialize_ntriples,
)
from rdfsheet.server import create_app

GOLDEN = Path(__file__).parent / "golden"

CONFERENCE_SCRIPT = [
    NameSheet(0, "Conference"),
    SetRowHeader(0, 0, "ISWC"),
    SetColumnHeader(0, 0, "related to"),
    SetCell(0, 0, 0, "ESWC"),
    SetColumnHeader(0, 1, "rank"),
    SetCell(0, 0, 1, "'A"),
]


def run_script(edits, seed: int = 1) -> Workbook:
    wb = Workbook(minter=seeded_minter(seed))
    for edit in edits:
        wb.apply_edit(edit)
    return wb


def canonical_export(wb: Workbook) -> str:
    return serialize_ntriples(canonicalize(wb.graph, wb.generated_ns))


# ---------------------------------------------------------------- random data

NASTY_LEXICALS = [
    "",
    "plain",
    'quote " inside',
    "back\\slash",
    "new\nline",
    "tab\there",
    "carriage\rreturn",
    "unié中\U0001f600",
    "control\x01char",
    "trailing space ",
    "  line sep",
    "'leading quote",
]

LANGS = [None, "en", "de", "en-us"]


def random_iri(rng: Random) -> Iri:
    kind = rng.randrange(3)
    if kind == 0:
        return Iri(f"urn:thing:{rng.randrange(1000)}")
    if kind == 1:
        return Iri(f"http://example.org/v{rng.randrange(50)}#t{rng.randrange(100)}")
    return Iri(f"urn:uuid:{rng.getrandbits(64):016x}")


def random_literal(rng: Random) -> Literal:
    lexical = rng.choice(NASTY_LEXICALS) + str(rng.randrange(100))
    lang = rng.choice(LANGS)
    if lang is not None:
        return Literal(lexical, language=lang)
    return Literal(lexical)


def random_graph(rng: Random, size: int | None = None) -> Graph:
    g = Graph()
    count = rng.randrange(0, 12) if size is None else size
    for _ in range(count):
        obj = random_literal(rng) if rng.random() < 0.5 else random_iri(rng)
        g.add(Triple(random_iri(rng), random_iri(rng), obj))
    return g


INSTANCE_LABELS = ["Alpha", "Beta", "Gamma", "Delta", "Epsilon", "Zeta Prime", "Theta"]
PROPERTY_LABELS = ["located in", "attends", "knows about", "part of", "rank score"]
LITERAL_TEXTS = ["42", "3.5", "true", "false", "'A", "'literal only", "-17", "2.0e3",
                 "https://example.org/page", "'99"]


def random_commuting_script(rng: Random, size: int = 30) -> list:
    """An edit script whose edits hit distinct targets and share labels safely.

    Sheet names come from a pool disjoint from all other labels, column labels
    never appear as cell text, and each (sheet,row), (sheet,col), cell, and
    comment target occurs at most once, so every permutation must converge.
    """
    edits = []
    sheet_count = rng.randrange(1, 4)
    used_cells = set()
    for s in range(sheet_count):
        if rng.random() < 0.8:
            edits.append(NameSheet(s, f"Category {s}"))
        for r in range(rng.randrange(1, 4)):
            edits.append(SetRowHeader(s, r, rng.choice(INSTANCE_LABELS)))
        for c in range(rng.randrange(1, 4)):
            edits.append(SetColumnHeader(s, c, rng.choice(PROPERTY_LABELS)))
    while len(edits) < size:
        s = rng.randrange(sheet_count)
        # 8x8 per sheet keeps the pool larger than any script, so the
        # distinct-cell loop always terminates
        r, c = rng.randrange(8), rng.randrange(8)
        if (s, r, c) in used_cells:
            continue
        used_cells.add((s, r, c))
        roll = rng.random()
        if roll < 0.45:
            edits.append(SetCell(s, r, c, rng.choice(INSTANCE_LABELS)))
        elif roll < 0.8:
            edits.append(SetCell(s, r, c, rng.choice(LITERAL_TEXTS)))
        elif roll < 0.9:
            edits.append(PasteReference(s, r, c, Iri(f"urn:fixed:p{rng.randrange(4)}")))
        else:
            target = Iri(f"urn:fixed:c{len(edits)}")
            edits.append(SetComment(target, f"note {len(edits)}"))
    return edits


# ---------------------------------------------------------------- live server


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


class ServerThread:
    """Uvicorn in a daemon thread, for tests that need real sockets (SSE)."""

    def __init__(self, data_dir, heartbeat: float = 0.5):
        self.port = free_port()
        self.base = f"http://127.0.0.1:{self.port}"
        self.app = create_app(data_dir=data_dir, heartbeat=heartbeat)
        config = uvicorn.Config(
            self.app, host="127.0.0.1", port=self.port, log_level="error", access_log=False
        )
        self.server = uvicorn.Server(config)
        self.thread = threading.Thread(target=self.server.run, daemon=True)

    def __enter__(self):
        self.thread.start()
        deadline = time.time() + 10
        while time.time() < deadline:
            try:
                if httpx.get(self.base + "/health", timeout=0.5).status_code == 200:
                    return self
            except httpx.HTTPError:
                time.sleep(0.02)
        raise RuntimeError("server did not come up")

    def __exit__(self, *exc):
        self.server.should_exit = True
        self.thread.join(timeout=10)
        self.app.state.store.close()
        return False


def read_sse(base: str, workbook_id: str, since: int, until_revision: int,
             timeout: float = 30.0) -> list[dict]:
    """Collect feed events from `since` until seeing `until_revision`."""
    events: list[dict] = []
    url = f"{base}/workbooks/{workbook_id}/changes"
    with httpx.stream("GET", url, params={"since": since}, timeout=timeout) as response:
        buffer = ""
        for chunk in response.iter_text():
            buffer += chunk
            while "\n\n" in buffer:
                frame, buffer = buffer.split("\n\n", 1)
                if frame.startswith("data:"):
                    events.append(json.loads(frame[len("data:"):]))
            if events and events[-1].get("revision") == until_revision:
                return events
    return events
