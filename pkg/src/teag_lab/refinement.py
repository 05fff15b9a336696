"""Adaptation-aware color refinement on typed directed multigraphs.

Certifies node indistinguishability deterministically, without random
weights.  Each node carries a label per layer; the layer-k label compresses
(previous label, canonicalized multiset of incoming messages, and, with
reverse message passing, canonicalized multiset of outgoing messages).  A
message contributes (neighbor label, edge type) plus the edge's incoming
and/or outgoing port when the corresponding adaptation is on; the layer-0
label encodes (node type, ego flag).

Labels are content-addressed: a label is a stable hash of the fully
canonicalized signature tree, so equal signatures hash equally across graphs
and across calls.  This plays the role of a label dictionary shared between
the two sides of a comparison; comparing labels from separate `refine` calls
is therefore meaningful, and `indistinguishable` is exactly that comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from hashlib import blake2b

from .errors import MissingPortsError
from .graph import AdaptationSet, PortAssignment, TypedMultigraph


def _compress(signature) -> str:
    return blake2b(repr(signature).encode(), digest_size=16).hexdigest()


@dataclass(frozen=True)
class ColorAssignment:
    """Per-layer node labels.  layers[k][v] is node v's label after k rounds."""

    layers: tuple[tuple[str, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def color(self, node: int, layer: int = -1) -> str:
        return self.layers[layer][node]

    def partition(self, layer: int = -1) -> dict[str, tuple[int, ...]]:
        groups: dict[str, list[int]] = {}
        for v, label in enumerate(self.layers[layer]):
            groups.setdefault(label, []).append(v)
        return {lab: tuple(vs) for lab, vs in groups.items()}

    def partition_sizes(self) -> tuple[int, ...]:
        return tuple(len(set(layer)) for layer in self.layers)


def _check_run_inputs(
    config: AdaptationSet,
    ports: PortAssignment | None,
    ego: int | None,
    graph: TypedMultigraph,
) -> None:
    if config.needs_ports and ports is None:
        raise MissingPortsError("port adaptation enabled but no ports supplied")
    if config.ego_ids and ego is None:
        raise ValueError("ego adaptation enabled but no ego node supplied")
    if not config.ego_ids and ego is not None:
        raise ValueError("ego node supplied but ego adaptation is off")
    if ego is not None and not 0 <= ego < graph.n_nodes:
        raise ValueError(f"unknown ego node {ego}")


def refine(
    graph: TypedMultigraph,
    config: AdaptationSet,
    depth: int,
    ports: PortAssignment | None = None,
    ego: int | None = None,
) -> ColorAssignment:
    """Run `depth` rounds of refinement and return all per-layer labels."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    _check_run_inputs(config, ports, ego, graph)

    def port_feats(edge_id: int) -> tuple[int, int]:
        # 0 marks a disabled slot; real ports are always >= 1
        p_in = ports.p_in(edge_id) if config.in_ports else 0
        p_out = ports.p_out(edge_id) if config.out_ports else 0
        return (p_in, p_out)

    colors = [
        _compress(("init", graph.node_type(v), 1 if v == ego else 0)) for v in graph.nodes
    ]
    layers = [tuple(colors)]

    for _ in range(depth):
        new = []
        for v in graph.nodes:
            in_sig = sorted(
                (colors[e.src], e.etype) + port_feats(e.id) for e in graph.in_edges(v)
            )
            if config.reverse_mp:
                out_sig = tuple(
                    sorted((colors[e.dst], e.etype) + port_feats(e.id) for e in graph.out_edges(v))
                )
            else:
                out_sig = None
            new.append(_compress(("step", colors[v], tuple(in_sig), out_sig)))
        colors = new
        layers.append(tuple(colors))

    return ColorAssignment(tuple(layers))


def indistinguishable(
    g1: TypedMultigraph,
    u1: int,
    g2: TypedMultigraph,
    u2: int,
    config: AdaptationSet,
    depth: int,
    ports1: PortAssignment | None = None,
    ports2: PortAssignment | None = None,
    ego1: int | None = None,
    ego2: int | None = None,
) -> bool:
    """True iff u1 and u2 receive equal labels after `depth` rounds.

    Equivalent to refining the disjoint union of the two graphs: labels are
    content-addressed, so no explicit shared dictionary is needed.  When the
    ego adaptation is on and no ego is given, the query nodes are the egos.
    """
    if config.ego_ids:
        ego1 = u1 if ego1 is None else ego1
        ego2 = u2 if ego2 is None else ego2
    c1 = refine(g1, config, depth, ports=ports1, ego=ego1)
    c2 = refine(g2, config, depth, ports=ports2, ego=ego2)
    return c1.color(u1, depth) == c2.color(u2, depth)
