"""Command-line front end.

Subcommands mirror the HTTP API one-to-one and share its code paths, so
`stats` emits the exact bytes `GET /api/metrics` serves.  File format is
chosen by shape: a `.csv` file is an edge table, a directory holds the
four-table CSV form (edges.csv required), anything else is JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import threading
import webbrowser
from pathlib import Path
from typing import Any, Sequence

from .api import DEFAULT_PORT, PORT_ENV_VAR, LoadedNetwork, create_app
from .ingest import ValidationReport, document_dict, parse_csv, parse_json, serialize_json, stable_dumps
from .layout import (
    MissingCoordinatesError,
    StackParams,
    layout_geographic,
    layout_grid,
    layout_layer_graph,
    layout_union,
    project_stack,
    stack_planes,
)
from .meta import WIRE_MODES, build_meta
from .metrics import DEFAULT_BIN_COUNT, compute_bundle
from .model import INTRALAYER, ExtendedEdge, NetworkSnapshot

TABLE_NAMES = ("edges", "layers", "nodes", "state_nodes")


def _read_tables(directory: Path) -> dict[str, str | None]:
    tables: dict[str, str | None] = {}
    for name in TABLE_NAMES:
        path = directory / f"{name}.csv"
        tables[name] = path.read_text(encoding="utf-8") if path.is_file() else None
    return tables


def load_network_file(path: str) -> tuple[NetworkSnapshot | None, ValidationReport]:
    """Parse a network from disk, dispatching on file shape."""
    p = Path(path)
    if p.is_dir():
        tables = _read_tables(p)
        if tables["edges"] is None:
            report = ValidationReport()
            report.error("missing-required-column", "edges", f"no edges.csv in directory {path}")
            return None, report
        return parse_csv(
            tables["edges"], layers=tables["layers"], nodes=tables["nodes"], state_nodes=tables["state_nodes"]
        )
    if p.suffix.lower() == ".csv":
        return parse_csv(p.read_text(encoding="utf-8"))
    return parse_json(p.read_bytes())


def _load_or_fail(path: str) -> NetworkSnapshot | None:
    """Load a file; on validation failure print the report to stderr."""
    snapshot, report = load_network_file(path)
    if snapshot is None:
        sys.stderr.buffer.write(stable_dumps(report.to_json_dict()))
        return None
    return snapshot


def cmd_validate(args: argparse.Namespace) -> int:
    snapshot, report = load_network_file(args.file)
    sys.stdout.buffer.write(stable_dumps(report.to_json_dict()))
    return 0 if snapshot is not None else 1


def cmd_stats(args: argparse.Namespace) -> int:
    snapshot = _load_or_fail(args.file)
    if snapshot is None:
        return 1
    bundle = compute_bundle(snapshot, args.bins)
    if args.format == "json":
        sys.stdout.buffer.write(stable_dumps(bundle.to_json_dict()))
        return 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if bundle.state_rows:
        columns = list(bundle.state_rows[0])
        writer.writerow(columns)
        for row in bundle.state_rows:
            writer.writerow([row[c] for c in columns])
    else:
        writer.writerow(["layer_id", "node_id"])
    sys.stdout.write(buffer.getvalue())
    return 0


def cmd_meta(args: argparse.Namespace) -> int:
    snapshot = _load_or_fail(args.file)
    if snapshot is None:
        return 1
    sys.stdout.buffer.write(stable_dumps(build_meta(snapshot, args.mode).to_json_dict()))
    return 0


def cmd_layout(args: argparse.Namespace) -> int:
    snapshot = _load_or_fail(args.file)
    if snapshot is None:
        return 1
    union = layout_union(snapshot, args.seed)
    projection = project_stack(stack_planes(snapshot, union), StackParams())
    try:
        geographic: dict[str, Any] | None = layout_geographic(snapshot).to_json_dict()
    except MissingCoordinatesError:
        geographic = None
    payload = {
        "union": union.to_json_dict(),
        "stack": projection.to_json_dict(),
        "layer_graph": layout_layer_graph(snapshot, args.seed).to_json_dict(),
        "geographic": geographic,
        "grid": [
            {"x": x, "y": y, "width": w, "height": h}
            for x, y, w, h in layout_grid(snapshot.layer_count)
        ],
    }
    sys.stdout.buffer.write(stable_dumps(payload))
    return 0


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _write_tables(snapshot: NetworkSnapshot, out_dir: Path) -> None:
    doc = document_dict(snapshot)
    out_dir.mkdir(parents=True, exist_ok=True)
    required = {
        "layers": ["layer_id", "display_name", "bipartite", "latitude", "longitude"],
        "nodes": ["node_id", "node_type"],
        "state_nodes": ["layer_id", "node_id"],
        "extended": ["layer_from", "node_from", "layer_to", "node_to", "weight", "directed"],
    }
    filenames = {"extended": "edges"}
    for array, lead in required.items():
        rows = doc[array]
        extras = sorted({key for row in rows for key in row if key not in lead})
        columns = [c for c in lead if c != "directed" or any("directed" in row for row in rows)] + extras
        with (out_dir / f"{filenames.get(array, array)}.csv").open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_csv_cell(row.get(c)) for c in columns])


def _edge_table_text(snapshot: NetworkSnapshot) -> str:
    doc = document_dict(snapshot)
    rows = doc["extended"]
    columns = ["layer_from", "node_from", "layer_to", "node_to", "weight"]
    if any("directed" in row for row in rows):
        columns.append("directed")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def cmd_convert(args: argparse.Namespace) -> int:
    snapshot = _load_or_fail(args.infile)
    if snapshot is None:
        return 1
    # when the whole network is directed, stamp each edge so the flag
    # survives the flag-less CSV form via per-link inference
    if snapshot.directed or snapshot.directed_interlayer:
        stamped = [
            ExtendedEdge(
                layer_from=e.layer_from,
                node_from=e.node_from,
                layer_to=e.layer_to,
                node_to=e.node_to,
                weight=e.weight,
                per_link_directed=snapshot.directed if e.classification == INTRALAYER else snapshot.directed_interlayer,
            )
            for e in snapshot.extended
        ]
        csv_side = NetworkSnapshot(
            layers=snapshot.layers,
            nodes=snapshot.nodes,
            state_nodes=snapshot.state_nodes,
            extended=stamped,
            directed=snapshot.directed,
            directed_interlayer=snapshot.directed_interlayer,
        )
    else:
        csv_side = snapshot

    out = Path(args.outfile)
    if out.suffix.lower() == ".json":
        out.write_bytes(serialize_json(snapshot))
    elif out.suffix.lower() == ".csv":
        out.write_text(_edge_table_text(csv_side), encoding="utf-8")
    else:
        _write_tables(csv_side, out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    port = args.port if args.port is not None else int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
    root = args.root
    if root is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        root = str(bundled) if bundled.is_dir() else None
    app = create_app(static_root=root)

    if args.file:
        snapshot, report = load_network_file(args.file)
        if snapshot is None:
            sys.stderr.buffer.write(stable_dumps(report.to_json_dict()))
            return 1
        app.state.hub.swap(LoadedNetwork(snapshot, report))

    url = f"http://127.0.0.1:{port}/"
    if args.open:
        threading.Timer(0.7, webbrowser.open, args=(url,)).start()
    try:
        uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    except OSError as exc:
        sys.stderr.write(f"cannot bind port {port}: {exc}\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mira", description="Multilayer network engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a network file and print the report")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="print summary statistics")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--bins", type=int, default=DEFAULT_BIN_COUNT)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("meta", help="print the layer-aggregated projection")
    p.add_argument("file")
    p.add_argument("--mode", choices=tuple(WIRE_MODES), default="union")
    p.set_defaults(func=cmd_meta)

    p = sub.add_parser("layout", help="print deterministic layouts")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("convert", help="convert between JSON and CSV forms")
    p.add_argument("infile")
    p.add_argument("outfile", help=".json, .csv (edge table), or a directory for the four-table form")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("file", nargs="?", help="optional network to preload")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--open", action="store_true", help="open the UI in a browser")
    p.add_argument("--root", default=None, help="static asset directory (defaults to the bundled UI)")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    except IsADirectoryError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
