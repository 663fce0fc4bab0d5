"""Collaborative spreadsheet editor for RDF.

Sheets map to classes, rows to instances, columns to properties, and cells to
statements; every edit becomes an exact triple delta. The package bundles the
RDF core (graph, N-Triples, a Turtle subset, canonicalization), the mapping
engine, ontology metrics, and an HTTP collaboration service with a durable
edit log and a live change feed.
"""

from .canon import CANONICAL_NS, canonicalize
from .cells import DirectIri, LabelReference, LiteralValue, ResourceRef, parse_cell_input
from .editlog import ChangeEvent, EditLog, replay, write_snapshot
from .edits import (
    EditOp,
    NameSheet,
    PasteReference,
    SetCell,
    SetColumnHeader,
    SetComment,
    SetRowHeader,
    TripleDelta,
    delta_to_json,
    edit_from_json,
    edit_to_json,
)
from .errors import (
    AmbiguousLabelError,
    CanonicalizationError,
    EditError,
    LogError,
    MetricsUndefinedError,
    ParseError,
    RdfSheetError,
    TermError,
)
from .graph import Graph
from .labels import LabelIndex
from .metrics import (
    MetricsReport,
    attribute_richness,
    average_population,
    class_richness,
    compute_metrics,
    count_summary,
    format_ratio,
    relationship_richness,
)
from .ntriples import parse_ntriples, serialize_ntriples
from .terms import OWL, RDF, RDFS, XSD, Iri, Literal, Node, Triple
from .turtle import parse_turtle, serialize_turtle
from .workbook import (
    CellBinding,
    HeaderBinding,
    Sheet,
    Workbook,
    default_minter,
    import_vocabulary,
    seeded_minter,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousLabelError",
    "CANONICAL_NS",
    "CanonicalizationError",
    "CellBinding",
    "ChangeEvent",
    "DirectIri",
    "EditError",
    "EditLog",
    "EditOp",
    "Graph",
    "HeaderBinding",
    "Iri",
    "LabelIndex",
    "LabelReference",
    "Literal",
    "LiteralValue",
    "LogError",
    "MetricsReport",
    "MetricsUndefinedError",
    "NameSheet",
    "Node",
    "OWL",
    "ParseError",
    "PasteReference",
    "RDF",
    "RDFS",
    "RdfSheetError",
    "ResourceRef",
    "SetCell",
    "SetColumnHeader",
    "SetComment",
    "SetRowHeader",
    "Sheet",
    "TermError",
    "Triple",
    "TripleDelta",
    "Workbook",
    "XSD",
    "attribute_richness",
    "average_population",
    "canonicalize",
    "class_richness",
    "compute_metrics",
    "count_summary",
    "default_minter",
    "delta_to_json",
    "edit_from_json",
    "edit_to_json",
    "format_ratio",
    "import_vocabulary",
    "parse_cell_input",
    "parse_ntriples",
    "parse_turtle",
    "relationship_richness",
    "replay",
    "seeded_minter",
    "serialize_ntriples",
    "serialize_turtle",
    "write_snapshot",
]
