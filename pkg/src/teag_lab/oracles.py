"""Brute-force ground truth for every predicate the constructions must match.

Everything here favors obvious correctness over speed: set intersections,
exhaustive simple-path search, and boolean frontier propagation.  Intended
for desk-scale graphs (a few hundred nodes, cycle lengths up to ~12).
"""

from __future__ import annotations

from .graph import EntityAttributeView, TypedMultigraph, typed_neighborhood


class SimilarityTable:
    """Symmetric attribute-pair similarity in [0, 1].

    Unlisted pairs default to 0, except the diagonal which is fixed at 1.
    Entries are validated on insertion; the table enforces symmetry.
    """

    def __init__(self, entries=None):
        self._sims: dict[tuple[int, int], float] = {}
        for a, b, s in entries or ():
            self.set(a, b, s)

    def set(self, a: int, b: int, sim: float) -> None:
        sim = float(sim)
        if not 0.0 <= sim <= 1.0:
            raise ValueError(f"similarity {sim} outside [0, 1]")
        if a == b and sim != 1.0:
            raise ValueError("diagonal similarity must be 1")
        self._sims[(min(a, b), max(a, b))] = sim

    def sim(self, a: int, b: int) -> float:
        if a == b:
            return 1.0
        return self._sims.get((min(a, b), max(a, b)), 0.0)

    def entries(self) -> list[tuple[int, int, float]]:
        return [(a, b, s) for (a, b), s in sorted(self._sims.items())]


def _require_entity(view: EntityAttributeView, v: int) -> None:
    if not view.is_entity(v):
        raise ValueError(f"node {v} is not an entity")


def overlap(view: EntityAttributeView, u: int, v: int) -> int:
    """Number of shared typed neighbors |N_typed(u) & N_typed(v)|."""
    _require_entity(view, u)
    _require_entity(view, v)
    return len(typed_neighborhood(view, u) & typed_neighborhood(view, v))


def dup_r(view: EntityAttributeView, u: int, r: int) -> int:
    """1 iff some other entity of u's node type shares >= r typed neighbors."""
    if r < 1:
        raise ValueError("r must be >= 1")
    _require_entity(view, u)
    g = view.graph
    nu = typed_neighborhood(view, u)
    for v in view.entities:
        if v != u and g.node_type(v) == g.node_type(u):
            if len(nu & typed_neighborhood(view, v)) >= r:
                return 1
    return 0


def cyc(graph: TypedMultigraph, v: int, length: int) -> int:
    """1 iff v lies on a directed simple cycle of exactly `length` vertices.

    Exhaustive depth-bounded search over simple paths starting at v; edge
    types are ignored (cycles may mix types).
    """
    if length < 3:
        raise ValueError("cycle length must be >= 3")
    succ = [set(graph.successors(w)) for w in graph.nodes]
    visited = {v}

    def extend(node: int, depth: int) -> bool:
        if depth == length - 1:
            return v in succ[node]
        for w in succ[node]:
            if w not in visited and w != v:
                visited.add(w)
                if extend(w, depth + 1):
                    return True
                visited.discard(w)
        return False

    return int(extend(v, 0))


def closed_walk(graph: TypedMultigraph, v: int, length: int) -> int:
    """1 iff a directed walk of length exactly `length` returns from v to v.

    Boolean frontier propagation; vertices may repeat along the walk.
    """
    if length < 1:
        raise ValueError("walk length must be >= 1")
    frontier = {v}
    for _ in range(length):
        frontier = {w for x in frontier for w in graph.successors(x)}
        if not frontier:
            return 0
    return int(v in frontier)


def soft_overlap(
    view: EntityAttributeView,
    u: int,
    v: int,
    sims: SimilarityTable | None = None,
) -> float:
    """Best-match similarity sum between the typed neighborhoods of u and v.

    For each (a, tau) reached by u, take the maximum similarity sim(a, a')
    over attributes a' that v reaches via the same edge type tau (0 when v
    has none), and sum.  With the default identity table this equals
    overlap(view, u, v) on simple graphs.  No same-type constraint applies
    to the entity pair; that filter belongs to the duplicate predicate only.
    """
    _require_entity(view, u)
    _require_entity(view, v)
    if sims is None:
        sims = SimilarityTable()
    nv = typed_neighborhood(view, v)
    total = 0.0
    for a, tau in typed_neighborhood(view, u):
        total += max((sims.sim(a, b) for b, tau2 in nv if tau2 == tau), default=0.0)
    return total
