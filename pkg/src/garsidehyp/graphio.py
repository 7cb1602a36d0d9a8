"""DOT and JSON export of metric graphs; JSON import round-trips exactly.

Output is bit-stable for identical inputs: vertices are already sorted in
the graph, JSON is dumped with sorted keys, and DOT lines follow vertex and
edge order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .metrics import MetricGraph

JSON_SCHEMA_VERSION = 1


def graph_to_json_dict(graph: MetricGraph) -> dict:
    return {
        "schema": JSON_SCHEMA_VERSION,
        "vertices": list(graph.vertices),
        "edges": [list(e) for e in graph.edges],
        "provenance": graph.provenance,
    }


def graph_from_json_dict(data: dict) -> MetricGraph:
    return MetricGraph(tuple(data["vertices"]),
                       tuple((int(i), int(j)) for i, j in data["edges"]),
                       dict(data.get("provenance", {})))


def export_json(graph: MetricGraph, path) -> None:
    text = json.dumps(graph_to_json_dict(graph), sort_keys=True, indent=1)
    Path(path).write_text(text + "\n")


def import_json(path) -> MetricGraph:
    return graph_from_json_dict(json.loads(Path(path).read_text()))


def export_dot(graph: MetricGraph, path) -> None:
    lines = []
    prov = json.dumps(graph.provenance, sort_keys=True)
    lines.append(f"// provenance: {prov}")
    lines.append("graph truncation {")
    lines.append(f'  graph [provenance={json.dumps(prov)}];')
    for i, key in enumerate(graph.vertices):
        lines.append(f'  v{i} [label={json.dumps(key)}];')
    for i, j in graph.edges:
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n")


def export_graph(graph: MetricGraph, fmt: str, path) -> None:
    """Write the graph as DOT or JSON."""
    fmt = fmt.lower()
    if fmt == "dot":
        export_dot(graph, path)
    elif fmt == "json":
        export_json(graph, path)
    else:
        raise ValueError(f"unknown export format {fmt!r}")
