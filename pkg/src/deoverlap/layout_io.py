"""Reading and writing layout documents.

The on-disk format is JSON, schema version "1":

    {
      "version": "1",
      "nodes": [{"id": "a", "x": 0.0, "y": 0.5, "w": 2.0, "h": 1.0}, ...],
      "edges": [["a", "b"], ...]
    }

x and y locate the rectangle center; w and h are the full width and height.
"edges" is optional and names an application graph over the node ids; the
removal pipeline builds its own proximity graph and only carries these
through. Emission is canonical: stable key order and 17 significant digit
numbers, so emitted bytes round-trip bit-identically.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

from .geometry import Point, Rect
from .layout import Layout

SCHEMA_VERSION = "1"

_NODE_FIELDS = ("id", "x", "y", "w", "h")


class LayoutParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class LayoutValidationError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class DocumentNode:
    id: str
    x: float
    y: float
    w: float  # full width, > 0
    h: float  # full height, > 0


@dataclass(frozen=True)
class LayoutDocument:
    nodes: list[DocumentNode]
    edges: list[tuple[str, str]] = field(default_factory=list)
    version: str = SCHEMA_VERSION


def _require_number(value: object, path: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise LayoutValidationError(path, f"expected a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise LayoutValidationError(path, f"must be finite, got {value!r}")
    if positive and out <= 0.0:
        raise LayoutValidationError(path, f"must be > 0, got {value!r}")
    return out


def _check_unknown(obj: dict, known: tuple[str, ...], path: str, strict: bool) -> None:
    unknown = [k for k in obj if k not in known]
    if not unknown:
        return
    if strict:
        raise LayoutValidationError(f"{path}.{unknown[0]}", "unknown field")
    warnings.warn(f"ignoring unknown field(s) {unknown} at {path}", stacklevel=3)


def parse_layout(data: str | bytes, strict: bool = True) -> LayoutDocument:
    """Parse and validate a layout document.

    Unknown fields are rejected when strict, otherwise ignored with a
    warning. Raises LayoutParseError for malformed JSON and
    LayoutValidationError (carrying the offending field path) for schema
    violations.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise LayoutParseError(exc.msg, exc.lineno, exc.colno) from exc

    if not isinstance(raw, dict):
        raise LayoutValidationError("$", "document must be a JSON object")
    _check_unknown(raw, ("version", "nodes", "edges"), "$", strict)
    version = raw.get("version")
    if version != SCHEMA_VERSION:
        raise LayoutValidationError(
            "$.version", f"expected {SCHEMA_VERSION!r}, got {version!r}"
        )
    if not isinstance(raw.get("nodes"), list):
        raise LayoutValidationError("$.nodes", "expected a list of nodes")

    nodes: list[DocumentNode] = []
    seen_ids: set[str] = set()
    for idx, item in enumerate(raw["nodes"]):
        path = f"$.nodes[{idx}]"
        if not isinstance(item, dict):
            raise LayoutValidationError(path, "expected an object")
        _check_unknown(item, _NODE_FIELDS, path, strict)
        for key in _NODE_FIELDS:
            if key not in item:
                raise LayoutValidationError(f"{path}.{key}", "missing field")
        node_id = item["id"]
        if not isinstance(node_id, str) or not node_id:
            raise LayoutValidationError(f"{path}.id", "must be a non-empty string")
        if node_id in seen_ids:
            raise LayoutValidationError(f"{path}.id", f"duplicate id {node_id!r}")
        seen_ids.add(node_id)
        nodes.append(
            DocumentNode(
                id=node_id,
                x=_require_number(item["x"], f"{path}.x"),
                y=_require_number(item["y"], f"{path}.y"),
                w=_require_number(item["w"], f"{path}.w", positive=True),
                h=_require_number(item["h"], f"{path}.h", positive=True),
            )
        )

    edges: list[tuple[str, str]] = []
    raw_edges = raw.get("edges", [])
    if not isinstance(raw_edges, list):
        raise LayoutValidationError("$.edges", "expected a list of id pairs")
    for idx, pair in enumerate(raw_edges):
        path = f"$.edges[{idx}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise LayoutValidationError(path, "expected a pair of node ids")
        for side, endpoint in enumerate(pair):
            if not isinstance(endpoint, str):
                raise LayoutValidationError(f"{path}[{side}]", "must be a node id string")
            if endpoint not in seen_ids:
                raise LayoutValidationError(f"{path}[{side}]", f"unknown id {endpoint!r}")
        if pair[0] == pair[1]:
            raise LayoutValidationError(path, "self loops are not allowed")
        edges.append((pair[0], pair[1]))
    return LayoutDocument(nodes=nodes, edges=edges)


def _fmt(value: float) -> str:
    # 17 significant digits round-trip any double exactly.
    return format(float(value), ".17g")


def emit_layout(doc: LayoutDocument) -> bytes:
    """Serialize canonically: fixed key order, one node per line, UTF-8."""
    lines = ['{', f'  "version": {json.dumps(doc.version)},', '  "nodes": [']
    for i, n in enumerate(doc.nodes):
        comma = "," if i + 1 < len(doc.nodes) else ""
        lines.append(
            f'    {{"id": {json.dumps(n.id)}, "x": {_fmt(n.x)}, "y": {_fmt(n.y)}, '
            f'"w": {_fmt(n.w)}, "h": {_fmt(n.h)}}}{comma}'
        )
    if doc.edges:
        lines.append("  ],")
        lines.append('  "edges": [')
        for i, (a, b) in enumerate(doc.edges):
            comma = "," if i + 1 < len(doc.edges) else ""
            lines.append(f"    [{json.dumps(a)}, {json.dumps(b)}]{comma}")
        lines.append("  ]")
    else:
        lines.append("  ]")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def document_to_layout(doc: LayoutDocument) -> Layout:
    """Layout over the document's nodes; edges become index pairs."""
    index = {n.id: i for i, n in enumerate(doc.nodes)}
    rects = [
        Rect(Point(n.x, n.y), n.w / 2.0, n.h / 2.0) for n in doc.nodes
    ]
    edges = [(index[a], index[b]) for a, b in doc.edges]
    return Layout(rects, [n.id for n in doc.nodes], edges)


def layout_to_document(layout: Layout) -> LayoutDocument:
    nodes = [
        DocumentNode(
            id=layout.ids[i],
            x=r.center.x,
            y=r.center.y,
            w=2.0 * r.half_width,
            h=2.0 * r.half_height,
        )
        for i, r in enumerate(layout.nodes)
    ]
    edges = [(layout.ids[i], layout.ids[j]) for i, j in layout.graph_edges]
    return LayoutDocument(nodes=nodes, edges=edges)
