"""Graph interchange files.

One JSON object per file:

* ``node_types`` -- array of ``{"name": str, "kind": "entity"|"attribute"|"plain"}``
* ``edge_types`` -- array of names
* ``nodes``      -- array of ``{"id": int, "type": int}``
* ``edges``      -- array of ``{"id": int, "src": int, "dst": int, "type": int}``
* ``ports``      -- optional array of ``{"edge": int, "p_in": int, "p_out": int}``
* ``bipartition``-- optional ``{"entities": [ids], "attributes": [ids]}``

Ids are 0-based dense decimal integers.  Similarity tables live in their own
files: a JSON array of ``{"a": int, "b": int, "sim": float}`` triples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import GraphFormatError
from .graph import EntityAttributeView, NodeTypeDef, PortAssignment, TypedMultigraph


@dataclass(frozen=True)
class LoadedGraph:
    graph: TypedMultigraph
    view: EntityAttributeView | None
    ports: PortAssignment | None


def graph_to_obj(
    graph: TypedMultigraph,
    view: EntityAttributeView | None = None,
    ports: PortAssignment | None = None,
) -> dict:
    obj = {
        "node_types": [{"name": t.name, "kind": t.kind} for t in graph.node_type_defs],
        "edge_types": list(graph.edge_type_names),
        "nodes": [{"id": v, "type": graph.node_type(v)} for v in graph.nodes],
        "edges": [
            {"id": e.id, "src": e.src, "dst": e.dst, "type": e.etype} for e in graph.edges
        ],
    }
    if ports is not None:
        obj["ports"] = [
            {"edge": e.id, "p_in": ports.p_in(e.id), "p_out": ports.p_out(e.id)}
            for e in graph.edges
        ]
    if view is not None:
        obj["bipartition"] = {
            "entities": sorted(view.entities),
            "attributes": sorted(view.attributes),
        }
    return obj


def graph_from_obj(obj: dict) -> LoadedGraph:
    try:
        type_defs = [NodeTypeDef(t["name"], t.get("kind", "plain")) for t in obj["node_types"]]
        edge_type_names = list(obj["edge_types"])
        nodes = sorted(obj["nodes"], key=lambda n: n["id"])
        edges = sorted(obj["edges"], key=lambda e: e["id"])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph object: {exc}") from exc

    if [n["id"] for n in nodes] != list(range(len(nodes))):
        raise GraphFormatError("node ids must be dense 0-based integers")
    if [e["id"] for e in edges] != list(range(len(edges))):
        raise GraphFormatError("edge ids must be dense 0-based integers")

    try:
        graph = TypedMultigraph(
            type_defs,
            edge_type_names,
            [n["type"] for n in nodes],
            [(e["src"], e["dst"], e["type"]) for e in edges],
        )
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc

    view = None
    if "bipartition" in obj:
        bp = obj["bipartition"]
        try:
            view = EntityAttributeView(
                graph, frozenset(bp["entities"]), frozenset(bp["attributes"])
            )
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"malformed bipartition: {exc}") from exc

    ports = None
    if "ports" in obj:
        try:
            ports = PortAssignment(
                {p["edge"]: (p["p_in"], p["p_out"]) for p in obj["ports"]}
            )
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"malformed ports: {exc}") from exc

    return LoadedGraph(graph, view, ports)


def save_graph(
    path: str | Path,
    graph: TypedMultigraph,
    view: EntityAttributeView | None = None,
    ports: PortAssignment | None = None,
) -> None:
    Path(path).write_text(json.dumps(graph_to_obj(graph, view, ports), indent=1) + "\n")


def load_graph(path: str | Path) -> LoadedGraph:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: not valid JSON: {exc}") from exc
    return graph_from_obj(obj)


def similarity_entries_from_obj(obj) -> list[tuple[int, int, float]]:
    if not isinstance(obj, list):
        raise GraphFormatError("similarity table must be a JSON array of {a, b, sim}")
    out = []
    for row in obj:
        try:
            out.append((int(row["a"]), int(row["b"]), float(row["sim"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"malformed similarity entry {row!r}") from exc
    return out


def load_similarity_entries(path: str | Path) -> list[tuple[int, int, float]]:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: not valid JSON: {exc}") from exc
    return similarity_entries_from_obj(obj)
