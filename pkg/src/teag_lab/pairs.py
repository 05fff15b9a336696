"""Deterministic generators for the canonical separation pairs.

Each pair bundles a positive instance G1 and a negative instance G2 with
matching type catalogs, fixed port tables, designated target nodes, and the
predicate the pair separates.  The two graphs of every pair except the first
share the same multiset of (node type, in-degree, out-degree) triples, which
is what makes them hard to tell apart.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    ATTRIBUTE,
    ENTITY,
    PLAIN,
    EntityAttributeView,
    GraphBuilder,
    PortAssignment,
    TypedMultigraph,
    assign_canonical_ports,
)

DUP = "dup"
CYC = "cyc"


@dataclass(frozen=True)
class SeparationPair:
    """Two labeled graphs separating one predicate at the target nodes."""

    name: str
    predicate: str  # DUP or CYC
    param: int  # overlap threshold r, or cycle length
    g1: TypedMultigraph
    g2: TypedMultigraph
    ports1: PortAssignment
    ports2: PortAssignment
    target1: int
    target2: int
    view1: EntityAttributeView | None = None
    view2: EntityAttributeView | None = None
    expected: tuple[int, int] = (1, 0)

    def manifest(self) -> dict:
        key = "r" if self.predicate == DUP else "l"
        return {
            "pair": self.name,
            "predicate": self.predicate,
            key: self.param,
            "targets": {"g1": self.target1, "g2": self.target2},
            "expected_labels": list(self.expected),
            "node_names": {
                "g1": list(self.g1.node_names),
                "g2": list(self.g2.node_names),
            },
        }


def gen_k21_simple_pair() -> SeparationPair:
    """Smallest shared-attribute pair: two entities on one attribute versus
    a lone entity on its attribute.  Forward-only passes cannot tell the
    target apart because entities never receive messages."""
    b1 = GraphBuilder()
    sigma = b1.node_type("sigma", ENTITY)
    alpha = b1.node_type("alpha", ATTRIBUTE)
    tau1 = b1.edge_type("tau1")
    u = b1.node(sigma, "u")
    v = b1.node(sigma, "v")
    a = b1.node(alpha, "a")
    b1.edge(u, a, tau1)
    b1.edge(v, a, tau1)
    g1 = b1.build()

    b2 = GraphBuilder()
    sigma2 = b2.node_type("sigma", ENTITY)
    alpha2 = b2.node_type("alpha", ATTRIBUTE)
    tau1_2 = b2.edge_type("tau1")
    u2 = b2.node(sigma2, "u")
    a2 = b2.node(alpha2, "a")
    b2.edge(u2, a2, tau1_2)
    g2 = b2.build()

    return SeparationPair(
        name="k21-simple",
        predicate=DUP,
        param=1,
        g1=g1,
        g2=g2,
        ports1=assign_canonical_ports(g1),
        ports2=assign_canonical_ports(g2),
        target1=u,
        target2=u2,
        view1=EntityAttributeView.from_kinds(g1),
        view2=EntityAttributeView.from_kinds(g2),
    )


def gen_k21_multigraph_pair() -> SeparationPair:
    """Shared attribute versus parallel edges, equal degree sequences.

    G1: u and v each point at both attributes.  G2: u sends two parallel
    edges to the first attribute, v two to the second.  Without incoming
    ports, an attribute cannot tell two senders from one sender twice.
    """
    b1 = GraphBuilder()
    sigma = b1.node_type("sigma", ENTITY)
    alpha1 = b1.node_type("alpha1", ATTRIBUTE)
    tau1 = b1.edge_type("tau1")
    u = b1.node(sigma, "u")
    v = b1.node(sigma, "v")
    a1 = b1.node(alpha1, "a1")
    a2 = b1.node(alpha1, "a2")
    b1.edge(u, a1, tau1)
    b1.edge(v, a1, tau1)
    b1.edge(u, a2, tau1)
    b1.edge(v, a2, tau1)
    g1 = b1.build()

    b2 = GraphBuilder()
    sigma2 = b2.node_type("sigma", ENTITY)
    alpha1_2 = b2.node_type("alpha1", ATTRIBUTE)
    tau1_2 = b2.edge_type("tau1")
    u2 = b2.node(sigma2, "u")
    v2 = b2.node(sigma2, "v")
    a1_2 = b2.node(alpha1_2, "a1")
    a2_2 = b2.node(alpha1_2, "a2")
    b2.edge(u2, a1_2, tau1_2)
    b2.edge(u2, a1_2, tau1_2)
    b2.edge(v2, a2_2, tau1_2)
    b2.edge(v2, a2_2, tau1_2)
    g2 = b2.build()

    return SeparationPair(
        name="k21-multigraph",
        predicate=DUP,
        param=1,
        g1=g1,
        g2=g2,
        ports1=assign_canonical_ports(g1),
        ports2=assign_canonical_ports(g2),
        target1=u,
        target2=u2,
        view1=EntityAttributeView.from_kinds(g1),
        view2=EntityAttributeView.from_kinds(g2),
    )


def _k2r_catalog(b: GraphBuilder, r: int) -> tuple[int, list[int], list[int]]:
    sigma = b.node_type("sigma", ENTITY)
    alphas = [b.node_type(f"alpha{j}", ATTRIBUTE) for j in range(1, r + 1)]
    taus = [b.edge_type(f"tau{j}") for j in range(1, r + 1)]
    return sigma, alphas, taus


def gen_k2r_pair(r: int, partition: tuple[set[int], set[int]] | None = None) -> SeparationPair:
    """Two disjoint 2-by-r bicliques versus the split configuration.

    G1: entities u, v share all r typed attributes (and w, x share the other
    r), so the target has a full-overlap competitor.  G2: u's attributes are
    split between v1 (indices in S1) and v2 (indices in S2) while v3 mirrors
    u on the second attribute copy, so no single entity shares more than
    max(|S1|, |S2|) <= r-1 typed neighbors with u.  Both graphs have 4
    entities, 2r attributes, and 4r edges.

    Port tables: every entity numbers its outgoing edge for index j with
    outgoing port j; class-1 entities (u and w, or u and v3) receive
    incoming port 1 at every attribute, class-2 entities port 2.  Under
    these tables the two sides are indistinguishable without ego marking.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    if partition is None:
        s1, s2 = {1}, set(range(2, r + 1))
    else:
        s1, s2 = set(partition[0]), set(partition[1])
        if not s1 or not s2 or (s1 & s2) or (s1 | s2) != set(range(1, r + 1)):
            raise ValueError("partition must split {1..r} into two nonempty parts")

    # G1: u,v on a_1..a_r; w,x on b_1..b_r
    b1 = GraphBuilder()
    sigma, alphas, taus = _k2r_catalog(b1, r)
    u = b1.node(sigma, "u")
    v = b1.node(sigma, "v")
    w = b1.node(sigma, "w")
    x = b1.node(sigma, "x")
    a_nodes = [b1.node(alphas[j - 1], f"a{j}") for j in range(1, r + 1)]
    b_nodes = [b1.node(alphas[j - 1], f"b{j}") for j in range(1, r + 1)]
    ports1 = {}
    for j in range(1, r + 1):
        ports1[b1.edge(u, a_nodes[j - 1], taus[j - 1])] = (1, j)
        ports1[b1.edge(v, a_nodes[j - 1], taus[j - 1])] = (2, j)
    for j in range(1, r + 1):
        ports1[b1.edge(w, b_nodes[j - 1], taus[j - 1])] = (1, j)
        ports1[b1.edge(x, b_nodes[j - 1], taus[j - 1])] = (2, j)
    g1 = b1.build()

    # G2: u on a_1..a_r; v1 covers S1 of a plus S2 of b; v2 the complement;
    # v3 on b_1..b_r
    b2 = GraphBuilder()
    b2_sigma, b2_alphas, b2_taus = _k2r_catalog(b2, r)
    u2 = b2.node(b2_sigma, "u")
    v1 = b2.node(b2_sigma, "v1")
    v2 = b2.node(b2_sigma, "v2")
    v3 = b2.node(b2_sigma, "v3")
    a2_nodes = [b2.node(b2_alphas[j - 1], f"a{j}") for j in range(1, r + 1)]
    b2_nodes = [b2.node(b2_alphas[j - 1], f"b{j}") for j in range(1, r + 1)]
    ports2 = {}
    for j in range(1, r + 1):
        ports2[b2.edge(u2, a2_nodes[j - 1], b2_taus[j - 1])] = (1, j)
    for j in sorted(s1):
        ports2[b2.edge(v1, a2_nodes[j - 1], b2_taus[j - 1])] = (2, j)
    for j in sorted(s2):
        ports2[b2.edge(v1, b2_nodes[j - 1], b2_taus[j - 1])] = (2, j)
    for j in sorted(s2):
        ports2[b2.edge(v2, a2_nodes[j - 1], b2_taus[j - 1])] = (2, j)
    for j in sorted(s1):
        ports2[b2.edge(v2, b2_nodes[j - 1], b2_taus[j - 1])] = (2, j)
    for j in range(1, r + 1):
        ports2[b2.edge(v3, b2_nodes[j - 1], b2_taus[j - 1])] = (1, j)
    g2 = b2.build()

    return SeparationPair(
        name="k2r",
        predicate=DUP,
        param=r,
        g1=g1,
        g2=g2,
        ports1=PortAssignment(ports1),
        ports2=PortAssignment(ports2),
        target1=u,
        target2=u2,
        view1=EntityAttributeView.from_kinds(g1),
        view2=EntityAttributeView.from_kinds(g2),
    )


def gen_k22_example() -> SeparationPair:
    """The fully worked 2-by-2 instance with its concrete port tables.

    Identical to gen_k2r_pair(2) up to node naming: the second attribute
    copy is listed as a3, a4 instead of b1, b2, interleaved by type.
    """
    b1 = GraphBuilder()
    sigma = b1.node_type("sigma", ENTITY)
    alpha1 = b1.node_type("alpha1", ATTRIBUTE)
    alpha2 = b1.node_type("alpha2", ATTRIBUTE)
    tau1 = b1.edge_type("tau1")
    tau2 = b1.edge_type("tau2")
    u = b1.node(sigma, "u")
    v = b1.node(sigma, "v")
    w = b1.node(sigma, "w")
    x = b1.node(sigma, "x")
    a1 = b1.node(alpha1, "a1")
    a2 = b1.node(alpha2, "a2")
    a3 = b1.node(alpha1, "a3")
    a4 = b1.node(alpha2, "a4")
    ports1 = {
        b1.edge(u, a1, tau1): (1, 1),
        b1.edge(u, a2, tau2): (1, 2),
        b1.edge(v, a1, tau1): (2, 1),
        b1.edge(v, a2, tau2): (2, 2),
        b1.edge(w, a3, tau1): (1, 1),
        b1.edge(w, a4, tau2): (1, 2),
        b1.edge(x, a3, tau1): (2, 1),
        b1.edge(x, a4, tau2): (2, 2),
    }
    g1 = b1.build()

    b2 = GraphBuilder()
    sigma2 = b2.node_type("sigma", ENTITY)
    beta1 = b2.node_type("alpha1", ATTRIBUTE)
    beta2 = b2.node_type("alpha2", ATTRIBUTE)
    rho1 = b2.edge_type("tau1")
    rho2 = b2.edge_type("tau2")
    u2 = b2.node(sigma2, "u")
    v1 = b2.node(sigma2, "v1")
    v2 = b2.node(sigma2, "v2")
    v3 = b2.node(sigma2, "v3")
    c1 = b2.node(beta1, "a1")
    c2 = b2.node(beta2, "a2")
    c3 = b2.node(beta1, "a3")
    c4 = b2.node(beta2, "a4")
    ports2 = {
        b2.edge(u2, c1, rho1): (1, 1),
        b2.edge(u2, c2, rho2): (1, 2),
        b2.edge(v1, c1, rho1): (2, 1),
        b2.edge(v1, c4, rho2): (2, 2),
        b2.edge(v2, c3, rho1): (2, 1),
        b2.edge(v2, c2, rho2): (2, 2),
        b2.edge(v3, c3, rho1): (1, 1),
        b2.edge(v3, c4, rho2): (1, 2),
    }
    g2 = b2.build()

    return SeparationPair(
        name="k22",
        predicate=DUP,
        param=2,
        g1=g1,
        g2=g2,
        ports1=PortAssignment(ports1),
        ports2=PortAssignment(ports2),
        target1=u,
        target2=u2,
        view1=EntityAttributeView.from_kinds(g1),
        view2=EntityAttributeView.from_kinds(g2),
    )


def gen_cycle_pair(length: int) -> SeparationPair:
    """Two directed length-cycles versus one cycle of twice the length.

    Same node count, same edge count, one node type, one edge type; both
    graphs are functional, so ports are forced to 1 everywhere.
    """
    if length < 3:
        raise ValueError("cycle length must be >= 3")

    b1 = GraphBuilder()
    sigma = b1.node_type("sigma", PLAIN)
    tau1 = b1.edge_type("tau1")
    vs = [b1.node(sigma, f"v{i}") for i in range(1, length + 1)]
    ws = [b1.node(sigma, f"w{i}") for i in range(1, length + 1)]
    for i in range(length):
        b1.edge(vs[i], vs[(i + 1) % length], tau1)
    for i in range(length):
        b1.edge(ws[i], ws[(i + 1) % length], tau1)
    g1 = b1.build()

    b2 = GraphBuilder()
    sigma2 = b2.node_type("sigma", PLAIN)
    tau1_2 = b2.edge_type("tau1")
    zs = [b2.node(sigma2, f"z{i}") for i in range(1, 2 * length + 1)]
    for i in range(2 * length):
        b2.edge(zs[i], zs[(i + 1) % (2 * length)], tau1_2)
    g2 = b2.build()

    return SeparationPair(
        name="cycle",
        predicate=CYC,
        param=length,
        g1=g1,
        g2=g2,
        ports1=assign_canonical_ports(g1),
        ports2=assign_canonical_ports(g2),
        target1=vs[0],
        target2=zs[0],
    )


GENERATORS = {
    "k21-simple": lambda **kw: gen_k21_simple_pair(),
    "k21-multigraph": lambda **kw: gen_k21_multigraph_pair(),
    "k22": lambda **kw: gen_k22_example(),
    "k2r": lambda r=2, **kw: gen_k2r_pair(r),
    "cycle": lambda l=3, **kw: gen_cycle_pair(l),
}
