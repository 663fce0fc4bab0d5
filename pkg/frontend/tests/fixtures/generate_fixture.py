"""Record real engine wire traffic for the client reducer tests.

Runs a scripted editing session through the rdfsheet engine and dumps the
initial snapshot, every change event exactly as the server broadcasts it,
and the final snapshot. The TypeScript tests replay the events onto the
initial snapshot and must land on the final one.

Regenerate with:  python3 tests/fixtures/generate_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

from rdfsheet.editlog import ChangeEvent
from rdfsheet.edits import (
    NameSheet,
    PasteReference,
    SetCell,
    SetColumnHeader,
    SetComment,
    SetRowHeader,
)
from rdfsheet.ntriples import parse_ntriples
from rdfsheet.terms import RDFS, Iri, Literal
from rdfsheet.workbook import Workbook, seeded_minter


def server_snapshot(wb: Workbook) -> dict:
    data = wb.to_snapshot()
    comments: dict[str, str] = {}
    for t in wb.graph.match_iter(None, RDFS.comment, None):
        if isinstance(t.object, Literal):
            current = comments.get(t.subject.value)
            if current is None or t.object.language == wb.language:
                comments[t.subject.value] = t.object.lexical
    data["comments"] = comments
    data["statements"] = len(wb.graph)
    return data


def main() -> None:
    wb = Workbook(workbook_id="fixture", language="en", minter=seeded_minter(7))
    initial = server_snapshot(wb)
    events: list[dict] = []
    actors = ["alice", "bob"]

    def run(edit) -> None:
        delta, revision = wb.apply_edit(edit)
        actor = actors[revision % 2]
        events.append(ChangeEvent(revision, "edit", edit, delta, actor, 0.0).to_json())

    run(NameSheet(0, "Conference"))
    run(SetRowHeader(0, 0, "ISWC"))
    run(SetColumnHeader(0, 0, "related to"))
    run(SetCell(0, 0, 0, "ESWC"))
    run(SetColumnHeader(0, 1, "rank"))
    run(SetCell(0, 0, 1, "'A"))
    run(SetCell(0, 1, 0, "WWW"))  # pending until row 1 gets a header
    run(SetRowHeader(0, 1, "ESWC"))  # rebinds to the existing resource
    eswc = wb.sheets[0].rows[1].node
    assert eswc is not None
    run(SetCell(0, 0, 1, "42"))
    run(SetCell(0, 0, 0, "ESWC-Conf"))  # renames the cell-created resource
    run(SetComment(eswc, "European Semantic Web Conference"))
    run(PasteReference(0, 2, 0, eswc))  # pending paste: row 2 has no header
    run(SetRowHeader(0, 2, "WWW"))
    run(NameSheet(0, ""))
    run(NameSheet(0, "Konferenz"))  # revives the former class
    run(SetRowHeader(0, 0, ""))
    imported = parse_ntriples(
        f"<{eswc.value}> <http://www.w3.org/2000/01/rdf-schema#label> \"Conferenza\"@it .\n"
        f"<{eswc.value}> <http://www.w3.org/2000/01/rdf-schema#comment> \"Konferenz in Europa\"@de .\n"
        "<urn:x:gold> <http://www.w3.org/2000/01/rdf-schema#label> \"Gold Standard\"@en .\n"
    )
    delta, revision = wb.import_graph(imported)
    events.append(ChangeEvent(revision, "import", None, delta, None, 0.0).to_json())
    run(SetCell(0, 1, 1, "1e9"))
    run(SetCell(0, 1, 1, "Gold Standard"))  # reuses the imported resource
    run(SetCell(0, 1, 1, ""))

    out = {"initial": initial, "events": events, "final": server_snapshot(wb)}
    path = Path(__file__).parent / "events.json"
    path.write_text(json.dumps(out, indent=1, sort_keys=True), encoding="utf-8")
    print(f"wrote {path} ({len(events)} events, final revision {wb.revision})")


if __name__ == "__main__":
    main()
