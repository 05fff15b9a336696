"""Explicit message-passing algorithms, executed exactly.

Each function runs a fixed number of alternating forward (entity to
attribute) and reverse (attribute to entity) passes with exact integer
arithmetic; per-node state is rebuilt stage by stage, and every stage reads
only the previous stage's state.  No weights, no floating point.

* :func:`dup1_simple` -- two passes; flags entities sharing any typed
  attribute with a same-type entity.  Simple graphs only.
* :func:`dup1_multigraph` -- same task on multigraphs, counting distinct
  incoming ports instead of raw message multiplicities.
* :func:`dupr_ego` -- four passes around a marked ego entity; computes the
  exact shared-neighbor count against every other entity and thresholds
  the best same-type competitor at r.  Simple graphs only.
* :func:`dupr_ego_multigraph` -- the multigraph extension of the above,
  using ports to collapse parallel edges.
* :func:`cyc_ego` -- length-many forward passes propagating the ego mark;
  detects closed walks (not simple cycles) through the ego.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidPortsError, NotSimpleError
from .graph import (
    EntityAttributeView,
    PortAssignment,
    TypedMultigraph,
    validate_entity_attribute,
    validate_ports,
)


def _require_valid_view(view: EntityAttributeView, op: str, simple: bool) -> None:
    report = validate_entity_attribute(view.graph, view)
    if not report.is_valid:
        names = [c.name for c in report.failures()]
        raise ValueError(f"{op}: invalid entity-attribute view ({', '.join(names)})")
    if simple and not report.is_simple:
        raise NotSimpleError(
            f"{op} is defined on simple graphs only; this graph has parallel "
            f"edges -- use the multigraph variant with a port assignment"
        )


def _require_valid_ports(graph: TypedMultigraph, ports: PortAssignment, op: str) -> None:
    report = validate_ports(graph, ports)
    if not report.is_valid:
        names = [c.name for c in report.failures()]
        raise InvalidPortsError(f"{op}: invalid port assignment ({', '.join(names)})")


def dup1_simple(view: EntityAttributeView) -> dict[int, int]:
    """Per-entity 0/1: does any same-type entity share a typed attribute.

    Pass 1 stores at each attribute the multiset of (entity type, edge type)
    message signatures; pass 2 lets each entity check whether any incident
    signature occurs at least twice at the far end.  Multiplicity 2 forces a
    second distinct entity only because the graph is simple.
    """
    _require_valid_view(view, "dup1_simple", simple=True)
    g = view.graph

    # pass 1 (forward): signature counts per attribute
    sig_count: dict[int, dict[tuple[int, int], int]] = {a: {} for a in view.attributes}
    for e in g.edges:
        sig = (g.node_type(e.src), e.etype)
        sig_count[e.dst][sig] = sig_count[e.dst].get(sig, 0) + 1

    # pass 2 (reverse): threshold at each entity
    out = {}
    for u in view.entities:
        out[u] = int(
            any(
                sig_count[e.dst].get((g.node_type(u), e.etype), 0) >= 2
                for e in g.out_edges(u)
            )
        )
    return out


def dup1_multigraph(view: EntityAttributeView, ports: PortAssignment) -> dict[int, int]:
    """dup1 on multigraphs: count distinct incoming ports per signature.

    Parallel edges from one entity share an incoming port, while distinct
    entities get distinct ports, so two port values of the same signature
    certify a second entity.  On simple graphs this reduces to dup1_simple.
    """
    _require_valid_view(view, "dup1_multigraph", simple=False)
    g = view.graph
    _require_valid_ports(g, ports, "dup1_multigraph")

    # pass 1 (forward): distinct-source port sets per attribute and signature
    port_sets: dict[int, dict[tuple[int, int], set[int]]] = {a: {} for a in view.attributes}
    for e in g.edges:
        sig = (g.node_type(e.src), e.etype)
        port_sets[e.dst].setdefault(sig, set()).add(ports.p_in(e.id))

    # pass 2 (reverse): threshold the distinct-source count at each entity
    out = {}
    for u in view.entities:
        out[u] = int(
            any(
                len(port_sets[e.dst].get((g.node_type(u), e.etype), ())) >= 2
                for e in g.out_edges(u)
            )
        )
    return out


@dataclass(frozen=True)
class DupEgoTrace:
    """Output plus the intermediate per-node state of the four passes."""

    output: int
    ego: int
    threshold: int
    ego_edge_types: dict[int, frozenset[int]]  # attribute -> edge types used by the ego
    ego_overlap: dict[int, int]  # entity -> shared typed neighbors with the ego
    max_overlap: dict[int, int]  # attribute -> best non-ego same-type overlap

    def to_obj(self) -> dict:
        return {
            "output": self.output,
            "ego": self.ego,
            "threshold": self.threshold,
            "ego_edge_types": {str(a): sorted(ts) for a, ts in sorted(self.ego_edge_types.items())},
            "ego_overlap": {str(v): n for v, n in sorted(self.ego_overlap.items())},
            "max_overlap": {str(a): n for a, n in sorted(self.max_overlap.items())},
        }


def _dupr_ego_passes(
    view: EntityAttributeView,
    ego: int,
    r: int,
    ports: PortAssignment | None,
) -> DupEgoTrace:
    g = view.graph
    ego_type = g.node_type(ego)

    # pass 1 (forward): edge types by which the ego reaches each attribute
    ego_edge_types: dict[int, frozenset[int]] = {}
    for a in view.attributes:
        ego_edge_types[a] = frozenset(e.etype for e in g.in_edges(a) if e.src == ego)

    # pass 2 (reverse): shared typed-neighbor count per entity.  On simple
    # graphs each out-edge is one typed neighbor; with parallel edges the
    # (outgoing port, edge type) pair identifies the typed neighbor, since
    # distinct destinations get distinct outgoing ports and parallel edges
    # share one.
    ego_overlap: dict[int, int] = {}
    for v in view.entities:
        if ports is None:
            ego_overlap[v] = sum(
                1 for e in g.out_edges(v) if e.etype in ego_edge_types[e.dst]
            )
        else:
            ego_overlap[v] = len(
                {
                    (ports.p_out(e.id), e.etype)
                    for e in g.out_edges(v)
                    if e.etype in ego_edge_types[e.dst]
                }
            )

    # pass 3 (forward): best non-ego same-type overlap at each ego attribute.
    # Attributes the ego does not touch stay at 0.  The ego's type is read
    # off the ego node; a marked message could only originate there, so the
    # message-derived type would agree (asserted below).
    max_overlap: dict[int, int] = {}
    for a in view.attributes:
        if not ego_edge_types[a]:
            max_overlap[a] = 0
            continue
        marked_types = {g.node_type(e.src) for e in g.in_edges(a) if e.src == ego}
        assert marked_types == {ego_type}
        candidates = [
            ego_overlap[v]
            for v in {e.src for e in g.in_edges(a)}
            if v != ego and g.node_type(v) == ego_type
        ]
        max_overlap[a] = max(candidates, default=0)

    # pass 4 (reverse): threshold the best evidence among the ego's attributes
    best = max((max_overlap[e.dst] for e in g.out_edges(ego)), default=0)
    return DupEgoTrace(
        output=int(best >= r),
        ego=ego,
        threshold=r,
        ego_edge_types=ego_edge_types,
        ego_overlap=ego_overlap,
        max_overlap=max_overlap,
    )


def dupr_ego(view: EntityAttributeView, ego: int, r: int) -> DupEgoTrace:
    """Four-pass shared-attribute threshold around the marked ego entity.

    Requires a simple view (refuses multigraphs: without port information the
    overlap counts would silently double-count parallel edges).  r >= 1; the
    two-pass dup1 path stays cheaper for r = 1 but the result here agrees.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    _require_valid_view(view, "dupr_ego", simple=True)
    if not view.is_entity(ego):
        raise ValueError(f"ego node {ego} is not an entity")
    return _dupr_ego_passes(view, ego, r, ports=None)


def dupr_ego_multigraph(
    view: EntityAttributeView, ports: PortAssignment, ego: int, r: int
) -> DupEgoTrace:
    """Multigraph variant of dupr_ego; ports collapse parallel edges."""
    if r < 1:
        raise ValueError("r must be >= 1")
    _require_valid_view(view, "dupr_ego_multigraph", simple=False)
    if not view.is_entity(ego):
        raise ValueError(f"ego node {ego} is not an entity")
    _require_valid_ports(view.graph, ports, "dupr_ego_multigraph")
    return _dupr_ego_passes(view, ego, r, ports=ports)


@dataclass(frozen=True)
class CycEgoTrace:
    """Output plus the reached-node set after each forward pass."""

    output: int
    ego: int
    length: int
    layer_flags: tuple[frozenset[int], ...]  # layer_flags[k] = nodes reachable in k steps

    def to_obj(self) -> dict:
        return {
            "output": self.output,
            "ego": self.ego,
            "length": self.length,
            "layer_flags": [sorted(s) for s in self.layer_flags],
        }


def cyc_ego(graph: TypedMultigraph, ego: int, length: int) -> CycEgoTrace:
    """Propagate the ego mark forward for `length` passes and read it back.

    Detects a closed *walk* of exactly `length` steps through the ego, which
    coincides with simple-cycle membership on functional graphs at the
    component cycle length but diverges in general (a 3-cycle yields a
    length-6 closed walk with no simple 6-cycle).
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    if not 0 <= ego < graph.n_nodes:
        raise ValueError(f"unknown ego node {ego}")
    flags = [frozenset([ego])]
    for _ in range(length):
        prev = flags[-1]
        flags.append(
            frozenset(v for v in graph.nodes if any(e.src in prev for e in graph.in_edges(v)))
        )
    return CycEgoTrace(
        output=int(ego in flags[length]),
        ego=ego,
        length=length,
        layer_flags=tuple(flags),
    )
