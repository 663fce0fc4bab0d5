"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable input,
malformed document or log, server error).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .editlog import replay
from .errors import RdfSheetError
from .metrics import compute_metrics
from .ntriples import parse_ntriples, serialize_ntriples
from .turtle import parse_turtle, serialize_turtle

SERIALIZERS = {"ntriples": serialize_ntriples, "turtle": serialize_turtle}
PARSERS = {"ntriples": parse_ntriples, "turtle": parse_turtle}
SUFFIXES = {".nt": "ntriples", ".ntriples": "ntriples", ".ttl": "turtle", ".turtle": "turtle"}


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit 1 instead of 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rdfsheet", description="Collaborative spreadsheet RDF editor.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    serve = sub.add_parser("serve", help="run the HTTP server", parents=[], add_help=True)
    serve.add_argument("--addr", default="127.0.0.1:8000", help="host:port to listen on")
    serve.add_argument("--data-dir", default=None, help="directory for logs and snapshots")
    serve.add_argument(
        "--heartbeat", type=float, default=None, help="feed heartbeat interval in seconds"
    )

    convert = sub.add_parser("convert", help="replay an edit log into an RDF file")
    convert.add_argument("log", help="path to a workbook edit log")
    convert.add_argument("--out", required=True, help="output file path")
    convert.add_argument("--format", choices=sorted(SERIALIZERS), default="ntriples")

    metrics = sub.add_parser("metrics", help="print ontology metrics for an RDF file")
    metrics.add_argument("file", help="N-Triples or Turtle file")
    metrics.add_argument("--format", choices=sorted(PARSERS), default=None)
    metrics.add_argument("--json", action="store_true", help="machine-readable output")

    export = sub.add_parser("export", help="export a workbook from a running server")
    export.add_argument("--server", required=True, help="base URL, e.g. http://127.0.0.1:8000")
    export.add_argument("--workbook", required=True, help="workbook id")
    export.add_argument("--format", choices=sorted(SERIALIZERS), default="ntriples")
    export.add_argument("--out", default=None, help="output file (default stdout)")

    imp = sub.add_parser("import", help="import an RDF file into a running server workbook")
    imp.add_argument("file", help="N-Triples or Turtle file")
    imp.add_argument("--server", required=True, help="base URL")
    imp.add_argument("--workbook", required=True, help="workbook id")
    imp.add_argument("--format", choices=sorted(PARSERS), default=None)
    imp.add_argument(
        "--as-vocabulary", action="store_true", help="register labels for reuse (always on)"
    )
    return parser


def _guess_format(path: Path, override: str | None) -> str:
    if override:
        return override
    return SUFFIXES.get(path.suffix.lower(), "ntriples")


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"rdfsheet: error: invalid --addr {args.addr!r}, expected host:port", file=sys.stderr)
        return 1
    app = create_app(data_dir=args.data_dir, heartbeat=args.heartbeat)
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    return 0


def _cmd_convert(args) -> int:
    workbook, _, _ = replay(args.log)
    text = SERIALIZERS[args.format](workbook.graph)
    Path(args.out).write_text(text, encoding="utf-8")
    return 0


def _cmd_metrics(args) -> int:
    path = Path(args.file)
    text = path.read_text(encoding="utf-8")
    graph = PARSERS[_guess_format(path, args.format)](text)
    report = compute_metrics(graph)
    sys.stdout.write(report.to_json() if args.json else report.to_table())
    return 0


def _cmd_export(args) -> int:
    import httpx

    url = f"{args.server.rstrip('/')}/workbooks/{args.workbook}/export"
    response = httpx.get(url, params={"format": args.format}, timeout=30.0)
    if response.status_code != 200:
        print(f"rdfsheet: export failed: {response.status_code} {response.text}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(response.text, encoding="utf-8")
    else:
        sys.stdout.write(response.text)
    return 0


def _cmd_import(args) -> int:
    import httpx

    path = Path(args.file)
    document = path.read_text(encoding="utf-8")
    url = f"{args.server.rstrip('/')}/workbooks/{args.workbook}/import"
    response = httpx.post(
        url,
        json={
            "document": document,
            "format": _guess_format(path, args.format),
            "as_vocabulary": args.as_vocabulary,
        },
        timeout=30.0,
    )
    if response.status_code != 200:
        print(f"rdfsheet: import failed: {response.status_code} {response.text}", file=sys.stderr)
        return 2
    print(json.dumps(response.json()))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 1
    handlers = {
        "serve": _cmd_serve,
        "convert": _cmd_convert,
        "metrics": _cmd_metrics,
        "export": _cmd_export,
        "import": _cmd_import,
    }
    try:
        return handlers[args.command](args)
    except RdfSheetError as exc:
        print(f"rdfsheet: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"rdfsheet: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - network failures from client commands
        print(f"rdfsheet: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
