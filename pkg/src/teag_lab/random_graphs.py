"""Seeded random graph generators for oracle-equivalence fuzzing.

All generators take a ``random.Random`` instance so fuzz runs reproduce
exactly from a single integer seed.  Sizes are kept within brute-force
oracle tractability.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import (
    ATTRIBUTE,
    ENTITY,
    PLAIN,
    EntityAttributeView,
    GraphBuilder,
    PortAssignment,
    TypedMultigraph,
)


@dataclass(frozen=True)
class FuzzBounds:
    max_entities: int = 8
    max_attributes: int = 10
    max_entity_types: int = 3
    max_attribute_types: int = 3
    max_edge_types: int = 3
    max_cycle_length: int = 8

    def validate(self) -> None:
        if self.max_entities > 8 or self.max_attributes > 10 or self.max_cycle_length > 8:
            raise ValueError(
                "bounds exceed oracle tractability "
                "(entities <= 8, attributes <= 10, cycle length <= 8)"
            )
        if min(
            self.max_entities,
            self.max_attributes,
            self.max_entity_types,
            self.max_attribute_types,
            self.max_edge_types,
            self.max_cycle_length,
        ) < 1:
            raise ValueError("all bounds must be >= 1")


def random_simple_teag(rng: random.Random, bounds: FuzzBounds = FuzzBounds()) -> EntityAttributeView:
    """Random simple entity-attribute graph within the given bounds."""
    n_ent = rng.randint(1, bounds.max_entities)
    n_attr = rng.randint(1, bounds.max_attributes)
    n_et = rng.randint(1, bounds.max_entity_types)
    n_at = rng.randint(1, bounds.max_attribute_types)
    n_tau = rng.randint(1, bounds.max_edge_types)

    b = GraphBuilder()
    ent_types = [b.node_type(f"E{i}", ENTITY) for i in range(n_et)]
    attr_types = [b.node_type(f"A{i}", ATTRIBUTE) for i in range(n_at)]
    taus = [b.edge_type(f"t{i}") for i in range(n_tau)]
    ents = [b.node(rng.choice(ent_types), f"u{i}") for i in range(n_ent)]
    attrs = [b.node(rng.choice(attr_types), f"a{i}") for i in range(n_attr)]

    all_pairs = [(a, t) for a in attrs for t in taus]
    for u in ents:
        k = rng.randint(0, min(len(all_pairs), 4))
        for a, t in rng.sample(all_pairs, k):
            b.edge(u, a, t)
    return EntityAttributeView.from_kinds(b.build())


def random_multigraph_teag(
    rng: random.Random, bounds: FuzzBounds = FuzzBounds()
) -> EntityAttributeView:
    """Like random_simple_teag but duplicates some edges (<= 2 per triple)."""
    view = random_simple_teag(rng, bounds)
    g = view.graph
    b = GraphBuilder()
    for t in g.node_type_defs:
        b.node_type(t.name, t.kind)
    for name in g.edge_type_names:
        b.edge_type(name)
    for v in g.nodes:
        b.node(g.node_type(v), g.node_name(v))
    for e in g.edges:
        b.edge(e.src, e.dst, e.etype)
        if rng.random() < 0.35:
            b.edge(e.src, e.dst, e.etype)  # parallel duplicate
    return EntityAttributeView.from_kinds(b.build())


def random_valid_ports(rng: random.Random, graph: TypedMultigraph) -> PortAssignment:
    """A uniformly shuffled valid assignment: random rankings of each node's
    distinct predecessors and successors."""
    in_rank = {}
    for v in graph.nodes:
        preds = list({e.src for e in graph.in_edges(v)})
        rng.shuffle(preds)
        in_rank[v] = {u: i + 1 for i, u in enumerate(preds)}
    out_rank = {}
    for v in graph.nodes:
        succs = list({e.dst for e in graph.out_edges(v)})
        rng.shuffle(succs)
        out_rank[v] = {w: i + 1 for i, w in enumerate(succs)}
    return PortAssignment(
        {e.id: (in_rank[e.dst][e.src], out_rank[e.src][e.dst]) for e in graph.edges}
    )


def random_digraph(rng: random.Random, max_nodes: int = 8, edge_prob: float = 0.3) -> TypedMultigraph:
    """Random typed digraph (entity-entity edges allowed, no bipartition)."""
    n = rng.randint(1, max_nodes)
    b = GraphBuilder()
    sigma = b.node_type("S0", PLAIN)
    tau = b.edge_type("t0")
    nodes = [b.node(sigma, f"n{i}") for i in range(n)]
    for x in nodes:
        for y in nodes:
            if x != y and rng.random() < edge_prob:
                b.edge(x, y, tau)
    return b.build()


def random_functional_graph(rng: random.Random, max_nodes: int = 8) -> TypedMultigraph:
    """Random permutation digraph: in-degree and out-degree 1 everywhere."""
    n = rng.randint(1, max_nodes)
    perm = list(range(n))
    rng.shuffle(perm)
    b = GraphBuilder()
    sigma = b.node_type("S0", PLAIN)
    tau = b.edge_type("t0")
    nodes = [b.node(sigma, f"n{i}") for i in range(n)]
    for i, j in enumerate(perm):
        b.edge(nodes[i], nodes[j], tau)
    return b.build()


def permutation_cycles(graph: TypedMultigraph) -> list[list[int]]:
    """Cycle decomposition of a functional graph."""
    seen: set[int] = set()
    cycles = []
    for start in graph.nodes:
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = graph.successors(start)[0]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = graph.successors(cur)[0]
        cycles.append(cyc)
    return cycles
