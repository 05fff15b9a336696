"""Typed directed multigraph data model.

A :class:`TypedMultigraph` is an immutable set of typed nodes and typed,
possibly parallel, directed edges.  Node ids and edge ids are dense 0-based
integers fixed at construction; type catalogs are registered once per graph
and never change afterwards, so type comparisons are plain integer equality.

On top of the base graph this module provides:

* :class:`EntityAttributeView` -- a bipartition certificate splitting the
  nodes into entity and attribute sets, with :func:`validate_entity_attribute`
  reporting every bipartiteness invariant plus whether the graph is *simple*
  (at most one edge per (entity, attribute, edge-type) triple);
* :class:`PortAssignment` -- per-edge incoming/outgoing port numbers, with a
  deterministic :func:`assign_canonical_ports` and a :func:`validate_ports`
  checker for the three validity properties;
* :class:`AdaptationSet` -- the flag set selecting message-passing
  adaptations (reverse messages, incoming/outgoing ports, ego marking).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import MissingPortsError

ENTITY = "entity"
ATTRIBUTE = "attribute"
PLAIN = "plain"
NODE_KINDS = (ENTITY, ATTRIBUTE, PLAIN)


@dataclass(frozen=True)
class NodeTypeDef:
    """A registered node type: a name plus its role in the bipartition."""

    name: str
    kind: str = PLAIN

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")


@dataclass(frozen=True)
class Edge:
    """A directed typed edge.  Distinct ids may share (src, dst, etype)."""

    id: int
    src: int
    dst: int
    etype: int

    def triple(self) -> tuple[int, int, int]:
        return (self.src, self.dst, self.etype)


class TypedMultigraph:
    """Immutable directed multigraph with typed nodes and parallel edges.

    Construction is single-owner; once built, instances are safe to share
    read-only across concurrent tasks.
    """

    def __init__(
        self,
        node_type_defs: Sequence[NodeTypeDef],
        edge_type_names: Sequence[str],
        node_types: Sequence[int],
        edges: Sequence[tuple[int, int, int]],
        node_names: Sequence[str] | None = None,
    ):
        self._node_type_defs = tuple(node_type_defs)
        self._edge_type_names = tuple(str(n) for n in edge_type_names)
        self._node_types = tuple(int(t) for t in node_types)

        n = len(self._node_types)
        for v, t in enumerate(self._node_types):
            if not 0 <= t < len(self._node_type_defs):
                raise ValueError(f"node {v} references unregistered type {t}")

        edge_objs = []
        for eid, (src, dst, etype) in enumerate(edges):
            if not 0 <= src < n:
                raise ValueError(f"edge {eid} has unknown source node {src}")
            if not 0 <= dst < n:
                raise ValueError(f"edge {eid} has unknown destination node {dst}")
            if not 0 <= etype < len(self._edge_type_names):
                raise ValueError(f"edge {eid} references unregistered edge type {etype}")
            edge_objs.append(Edge(eid, src, dst, etype))
        self._edges = tuple(edge_objs)

        if node_names is None:
            node_names = tuple(f"n{v}" for v in range(n))
        else:
            if len(node_names) != n:
                raise ValueError("node_names length must match node count")
            node_names = tuple(str(s) for s in node_names)
        self._node_names = node_names

        ins: list[list[Edge]] = [[] for _ in range(n)]
        outs: list[list[Edge]] = [[] for _ in range(n)]
        for e in self._edges:
            outs[e.src].append(e)
            ins[e.dst].append(e)
        self._in_edges = tuple(tuple(es) for es in ins)
        self._out_edges = tuple(tuple(es) for es in outs)

    # -- basic accessors ---------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self._node_types)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def nodes(self) -> range:
        return range(self.n_nodes)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def node_type_defs(self) -> tuple[NodeTypeDef, ...]:
        return self._node_type_defs

    @property
    def edge_type_names(self) -> tuple[str, ...]:
        return self._edge_type_names

    @property
    def node_types(self) -> tuple[int, ...]:
        return self._node_types

    @property
    def node_names(self) -> tuple[str, ...]:
        return self._node_names

    def node_type(self, v: int) -> int:
        return self._node_types[v]

    def node_kind(self, v: int) -> str:
        return self._node_type_defs[self._node_types[v]].kind

    def node_name(self, v: int) -> str:
        return self._node_names[v]

    def in_edges(self, v: int) -> tuple[Edge, ...]:
        return self._in_edges[v]

    def out_edges(self, v: int) -> tuple[Edge, ...]:
        return self._out_edges[v]

    def in_degree(self, v: int) -> int:
        return len(self._in_edges[v])

    def out_degree(self, v: int) -> int:
        return len(self._out_edges[v])

    def predecessors(self, v: int) -> tuple[int, ...]:
        """Distinct in-neighbors in ascending node-id order."""
        return tuple(sorted({e.src for e in self._in_edges[v]}))

    def successors(self, v: int) -> tuple[int, ...]:
        """Distinct out-neighbors in ascending node-id order."""
        return tuple(sorted({e.dst for e in self._out_edges[v]}))

    def __repr__(self) -> str:
        return (
            f"TypedMultigraph(nodes={self.n_nodes}, edges={self.n_edges}, "
            f"node_types={len(self._node_type_defs)}, edge_types={len(self._edge_type_names)})"
        )

    # -- derived structure -------------------------------------------------

    def parallel_groups(self) -> dict[tuple[int, int, int], tuple[int, ...]]:
        """Edge ids grouped by (src, dst, etype) triple."""
        groups: dict[tuple[int, int, int], list[int]] = {}
        for e in self._edges:
            groups.setdefault(e.triple(), []).append(e.id)
        return {k: tuple(v) for k, v in groups.items()}

    def is_simple(self) -> bool:
        """True iff no (src, dst, etype) triple carries more than one edge."""
        return all(len(g) == 1 for g in self.parallel_groups().values())

    def relabeled(self, perm: Sequence[int]) -> "TypedMultigraph":
        """Copy of the graph with node v renamed perm[v].  Edge ids keep
        their positions, so a PortAssignment for self stays valid here."""
        if sorted(perm) != list(range(self.n_nodes)):
            raise ValueError("perm must be a permutation of the node ids")
        inv = [0] * self.n_nodes
        for old, new in enumerate(perm):
            inv[new] = old
        return TypedMultigraph(
            self._node_type_defs,
            self._edge_type_names,
            [self._node_types[inv[v]] for v in range(self.n_nodes)],
            [(perm[e.src], perm[e.dst], e.etype) for e in self._edges],
            node_names=[self._node_names[inv[v]] for v in range(self.n_nodes)],
        )


class GraphBuilder:
    """Incremental constructor producing an immutable TypedMultigraph."""

    def __init__(self):
        self._node_type_defs: list[NodeTypeDef] = []
        self._edge_type_names: list[str] = []
        self._node_types: list[int] = []
        self._node_names: list[str | None] = []
        self._edges: list[tuple[int, int, int]] = []

    def node_type(self, name: str, kind: str = PLAIN) -> int:
        self._node_type_defs.append(NodeTypeDef(name, kind))
        return len(self._node_type_defs) - 1

    def edge_type(self, name: str) -> int:
        self._edge_type_names.append(name)
        return len(self._edge_type_names) - 1

    def node(self, type_id: int, name: str | None = None) -> int:
        self._node_types.append(type_id)
        self._node_names.append(name)
        return len(self._node_types) - 1

    def edge(self, src: int, dst: int, etype: int) -> int:
        self._edges.append((src, dst, etype))
        return len(self._edges) - 1

    def build(self) -> TypedMultigraph:
        names = [n if n is not None else f"n{v}" for v, n in enumerate(self._node_names)]
        return TypedMultigraph(
            self._node_type_defs,
            self._edge_type_names,
            self._node_types,
            self._edges,
            node_names=names,
        )


# -- entity-attribute view ---------------------------------------------------


@dataclass(frozen=True)
class EntityAttributeView:
    """A declared bipartition of a graph into entity and attribute nodes."""

    graph: TypedMultigraph
    entities: frozenset[int]
    attributes: frozenset[int]

    @classmethod
    def from_kinds(cls, graph: TypedMultigraph) -> "EntityAttributeView":
        """Derive the bipartition from the registered node-type kinds."""
        ents = frozenset(v for v in graph.nodes if graph.node_kind(v) == ENTITY)
        attrs = frozenset(v for v in graph.nodes if graph.node_kind(v) == ATTRIBUTE)
        return cls(graph, ents, attrs)

    def is_entity(self, v: int) -> bool:
        return v in self.entities

    def is_attribute(self, v: int) -> bool:
        return v in self.attributes


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    offenders: tuple = ()


@dataclass(frozen=True)
class ValidityReport:
    """Per-invariant pass/fail results; failures carry the offending items."""

    checks: tuple[Check, ...]
    is_simple: bool | None = None

    @property
    def is_valid(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)


def validate_entity_attribute(graph: TypedMultigraph, view: EntityAttributeView) -> ValidityReport:
    """Check the bipartition invariants and report simplicity.

    The report never raises; each invariant becomes one named check.
    """
    checks = []

    overlap_nodes = tuple(sorted(view.entities & view.attributes))
    checks.append(Check("bipartition-disjoint", not overlap_nodes, overlap_nodes))

    missing = tuple(v for v in graph.nodes if v not in view.entities and v not in view.attributes)
    unknown = tuple(sorted((view.entities | view.attributes) - set(graph.nodes)))
    checks.append(Check("bipartition-covers-nodes", not missing and not unknown, missing + unknown))

    bad_edges = tuple(
        e.id for e in graph.edges if e.src not in view.entities or e.dst not in view.attributes
    )
    checks.append(Check("edges-entity-to-attribute", not bad_edges, bad_edges))

    known = set(graph.nodes)
    bad_ent_kind = tuple(
        v for v in sorted(view.entities) if v in known and graph.node_kind(v) != ENTITY
    )
    checks.append(Check("entity-node-kinds", not bad_ent_kind, bad_ent_kind))

    bad_attr_kind = tuple(
        v for v in sorted(view.attributes) if v in known and graph.node_kind(v) != ATTRIBUTE
    )
    checks.append(Check("attribute-node-kinds", not bad_attr_kind, bad_attr_kind))

    return ValidityReport(tuple(checks), is_simple=graph.is_simple())


def typed_neighborhood(view: EntityAttributeView, u: int) -> frozenset[tuple[int, int]]:
    """The set of (attribute node, edge type) pairs reachable from entity u.

    Parallel edges collapse: the result is a set, not a multiset.
    """
    if u not in set(view.graph.nodes):
        raise KeyError(f"unknown node id {u}")
    if not view.is_entity(u):
        raise ValueError(f"node {u} is not an entity in this view")
    return frozenset((e.dst, e.etype) for e in view.graph.out_edges(u))


def is_functional(graph: TypedMultigraph) -> bool:
    """True iff every node has in-degree exactly 1 and out-degree exactly 1."""
    return all(graph.in_degree(v) == 1 and graph.out_degree(v) == 1 for v in graph.nodes)


# -- port numbering ----------------------------------------------------------


class PortAssignment:
    """Per-edge (p_in, p_out) labels, keyed by edge id.

    Validity properties (checked by :func:`validate_ports`):

    (i)   parallel edges with the same (src, dst) share both port numbers;
    (ii)  edges into one destination from distinct sources carry distinct
          incoming ports;
    (iii) edges out of one source to distinct destinations carry distinct
          outgoing ports.
    """

    def __init__(self, mapping: Mapping[int, tuple[int, int]]):
        self._ports = {int(e): (int(p), int(q)) for e, (p, q) in mapping.items()}

    def __contains__(self, edge_id: int) -> bool:
        return edge_id in self._ports

    def __len__(self) -> int:
        return len(self._ports)

    def p_in(self, edge_id: int) -> int:
        try:
            return self._ports[edge_id][0]
        except KeyError:
            raise MissingPortsError(f"edge {edge_id} has no port entry") from None

    def p_out(self, edge_id: int) -> int:
        try:
            return self._ports[edge_id][1]
        except KeyError:
            raise MissingPortsError(f"edge {edge_id} has no port entry") from None

    def pair(self, edge_id: int) -> tuple[int, int]:
        try:
            return self._ports[edge_id]
        except KeyError:
            raise MissingPortsError(f"edge {edge_id} has no port entry") from None

    def as_dict(self) -> dict[int, tuple[int, int]]:
        return dict(self._ports)

    def max_p_in(self) -> int:
        return max((p for p, _ in self._ports.values()), default=0)

    def max_p_out(self) -> int:
        return max((q for _, q in self._ports.values()), default=0)

    def __repr__(self) -> str:
        return f"PortAssignment({self._ports!r})"


def assign_canonical_ports(graph: TypedMultigraph) -> PortAssignment:
    """Deterministic valid assignment: rank distinct predecessors and
    successors by ascending node id, ports are 1-based ranks."""
    mapping = {}
    in_rank = {v: {u: i + 1 for i, u in enumerate(graph.predecessors(v))} for v in graph.nodes}
    out_rank = {v: {w: i + 1 for i, w in enumerate(graph.successors(v))} for v in graph.nodes}
    for e in graph.edges:
        mapping[e.id] = (in_rank[e.dst][e.src], out_rank[e.src][e.dst])
    return PortAssignment(mapping)


def validate_ports(graph: TypedMultigraph, ports: PortAssignment) -> ValidityReport:
    """Check properties (i)-(iii); raises MissingPortsError on absent edges."""
    for e in graph.edges:
        ports.pair(e.id)  # raises if missing

    nonpositive = tuple(e.id for e in graph.edges if min(ports.pair(e.id)) < 1)
    checks = [Check("ports-positive", not nonpositive, nonpositive)]

    bad_parallel = []
    for triple_edges in _group_by(graph.edges, key=lambda e: (e.src, e.dst)).values():
        pairs = {ports.pair(eid) for eid in triple_edges}
        if len(pairs) > 1:
            bad_parallel.append(tuple(triple_edges))
    checks.append(Check("parallel-edges-share-ports", not bad_parallel, tuple(bad_parallel)))

    bad_in = []
    for v in graph.nodes:
        seen: dict[int, int] = {}
        for e in graph.in_edges(v):
            p = ports.p_in(e.id)
            if p in seen and seen[p] != e.src:
                bad_in.append((v, p))
            seen[p] = e.src
    checks.append(Check("distinct-sources-distinct-in-ports", not bad_in, tuple(bad_in)))

    bad_out = []
    for v in graph.nodes:
        seen = {}
        for e in graph.out_edges(v):
            q = ports.p_out(e.id)
            if q in seen and seen[q] != e.dst:
                bad_out.append((v, q))
            seen[q] = e.dst
    checks.append(Check("distinct-destinations-distinct-out-ports", not bad_out, tuple(bad_out)))

    return ValidityReport(tuple(checks))


def _group_by(items: Iterable, key):
    groups: dict = {}
    for it in items:
        groups.setdefault(key(it), []).append(it.id)
    return groups


# -- adaptation flags --------------------------------------------------------


@dataclass(frozen=True)
class AdaptationSet:
    """Which message-passing adaptations are switched on.

    Any combination is valid.  ``ego_ids`` requires a designated center node
    at run time; either port flag requires a PortAssignment.
    """

    reverse_mp: bool = False
    in_ports: bool = False
    out_ports: bool = False
    ego_ids: bool = False

    @property
    def needs_ports(self) -> bool:
        return self.in_ports or self.out_ports

    def issubset(self, other: "AdaptationSet") -> bool:
        return (
            (not self.reverse_mp or other.reverse_mp)
            and (not self.in_ports or other.in_ports)
            and (not self.out_ports or other.out_ports)
            and (not self.ego_ids or other.ego_ids)
        )

    def describe(self) -> str:
        parts = []
        if self.reverse_mp:
            parts.append("reverse")
        if self.in_ports:
            parts.append("in-ports")
        if self.out_ports:
            parts.append("out-ports")
        if self.ego_ids:
            parts.append("ego")
        return "+".join(parts) if parts else "forward-only"
