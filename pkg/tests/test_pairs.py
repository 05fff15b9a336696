import itertools

import pytest

from teag_lab import (
    cyc,
    dup_r,
    is_functional,
    overlap,
    validate_entity_attribute,
    validate_ports,
)
from teag_lab.pairs import (
    GENERATORS,
    gen_cycle_pair,
    gen_k21_multigraph_pair,
    gen_k21_simple_pair,
    gen_k22_example,
    gen_k2r_pair,
)

ALL_PAIRS = [
    gen_k21_simple_pair(),
    gen_k21_multigraph_pair(),
    gen_k22_example(),
    gen_k2r_pair(2),
    gen_k2r_pair(3),
    gen_k2r_pair(4),
    gen_cycle_pair(3),
    gen_cycle_pair(5),
    gen_cycle_pair(7),
]


def oracle_label(pair, which):
    g = pair.g1 if which == 0 else pair.g2
    view = pair.view1 if which == 0 else pair.view2
    target = pair.target1 if which == 0 else pair.target2
    if pair.predicate == "dup":
        return dup_r(view, target, pair.param)
    return cyc(g, target, pair.param)


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=lambda p: f"{p.name}-{p.param}")
def test_labels_match_oracles(pair):
    assert (oracle_label(pair, 0), oracle_label(pair, 1)) == pair.expected == (1, 0)


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=lambda p: f"{p.name}-{p.param}")
def test_port_tables_are_valid(pair):
    assert validate_ports(pair.g1, pair.ports1).is_valid
    assert validate_ports(pair.g2, pair.ports2).is_valid


@pytest.mark.parametrize("pair", ALL_PAIRS[1:], ids=lambda p: f"{p.name}-{p.param}")
def test_degree_type_profiles_match(pair):
    def profile(g):
        return sorted((g.node_type(v), g.in_degree(v), g.out_degree(v)) for v in g.nodes)

    assert profile(pair.g1) == profile(pair.g2)


def test_shared_attribute_pair_shape():
    pair = gen_k21_simple_pair()
    assert pair.g1.n_edges == 2 and pair.g2.n_edges == 1
    for g, view in ((pair.g1, pair.view1), (pair.g2, pair.view2)):
        report = validate_entity_attribute(g, view)
        assert report.is_valid and report.is_simple


def test_parallel_pair_shape():
    pair = gen_k21_multigraph_pair()
    for g in (pair.g1, pair.g2):
        assert len(g.nodes) == 4 and g.n_edges == 4
        assert all(g.out_degree(v) == 2 for v in g.nodes if g.node_kind(v) == "entity")
        assert all(g.in_degree(v) == 2 for v in g.nodes if g.node_kind(v) == "attribute")
    assert pair.g1.is_simple() and not pair.g2.is_simple()


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_biclique_pair_counts(r):
    pair = gen_k2r_pair(r)
    for g, view in ((pair.g1, pair.view1), (pair.g2, pair.view2)):
        assert len(view.entities) == 4
        assert len(view.attributes) == 2 * r
        assert g.n_edges == 4 * r
        assert validate_entity_attribute(g, view).is_simple


def test_biclique_pair_r4_edge_count():
    assert gen_k2r_pair(4).g1.n_edges == 16


def test_split_configuration_overlap_bounded_by_partition():
    for r, s1 in ((3, {1}), (3, {1, 2}), (4, {2, 3})):
        s2 = set(range(1, r + 1)) - s1
        pair = gen_k2r_pair(r, partition=(s1, s2))
        others = [v for v in sorted(pair.view2.entities) if v != pair.target2]
        best = max(overlap(pair.view2, pair.target2, v) for v in others)
        assert best == max(len(s1), len(s2)) <= r - 1
        assert (oracle_label(pair, 0), oracle_label(pair, 1)) == (1, 0)


def test_invalid_partitions_rejected():
    with pytest.raises(ValueError, match="partition"):
        gen_k2r_pair(3, partition=({1, 2, 3}, set()))
    with pytest.raises(ValueError, match="partition"):
        gen_k2r_pair(3, partition=({1}, {1, 2, 3}))
    with pytest.raises(ValueError, match="r must be"):
        gen_k2r_pair(1)


@pytest.mark.parametrize("length", [3, 5, 7])
def test_cycle_pair_counts_and_functionality(length):
    pair = gen_cycle_pair(length)
    for g in (pair.g1, pair.g2):
        assert len(g.nodes) == 2 * length and g.n_edges == 2 * length
        assert is_functional(g)
    assert all(pair.ports1.pair(e.id) == (1, 1) for e in pair.g1.edges)
    assert all(pair.ports2.pair(e.id) == (1, 1) for e in pair.g2.edges)


def test_manifest_contents():
    m = gen_k2r_pair(3).manifest()
    assert m["predicate"] == "dup" and m["r"] == 3
    assert m["expected_labels"] == [1, 0]
    assert m["node_names"]["g2"][:4] == ["u", "v1", "v2", "v3"]
    m = gen_cycle_pair(3).manifest()
    assert m["predicate"] == "cyc" and m["l"] == 3


def test_generator_registry_covers_all_pairs():
    assert sorted(GENERATORS) == ["cycle", "k21-multigraph", "k21-simple", "k22", "k2r"]
    assert GENERATORS["k2r"](r=3).param == 3
    assert GENERATORS["cycle"](l=5).param == 5


def _typed_port_isomorphic(pair_a, pair_b):
    """Brute-force isomorphism respecting types, edges, ports, and targets."""
    g_a, g_b = pair_a.g1, pair_b.g1

    def check(g1, p1, t1, g2, p2, t2):
        if g1.n_nodes != g2.n_nodes or g1.n_edges != g2.n_edges:
            return False
        if [t.kind for t in g1.node_type_defs] != [t.kind for t in g2.node_type_defs]:
            return False
        by_type_1 = {}
        by_type_2 = {}
        for v in g1.nodes:
            by_type_1.setdefault(g1.node_type(v), []).append(v)
        for v in g2.nodes:
            by_type_2.setdefault(g2.node_type(v), []).append(v)
        if {k: len(v) for k, v in by_type_1.items()} != {
            k: len(v) for k, v in by_type_2.items()
        }:
            return False
        edge_set_2 = sorted(
            (e.src, e.dst, e.etype) + p2.pair(e.id) for e in g2.edges
        )
        types = sorted(by_type_1)
        pools = [itertools.permutations(by_type_2[t]) for t in types]
        for combo in itertools.product(*pools):
            mapping = {}
            for t, perm in zip(types, combo):
                for src, dst in zip(by_type_1[t], perm):
                    mapping[src] = dst
            if mapping[t1] != t2:
                continue
            mapped = sorted(
                (mapping[e.src], mapping[e.dst], e.etype) + p1.pair(e.id)
                for e in g1.edges
            )
            if mapped == edge_set_2:
                return True
        return False

    return check(
        pair_a.g1, pair_a.ports1, pair_a.target1, pair_b.g1, pair_b.ports1, pair_b.target1
    ) and check(
        pair_a.g2, pair_a.ports2, pair_a.target2, pair_b.g2, pair_b.ports2, pair_b.target2
    )


def test_k22_example_is_k2r_pair_of_two_up_to_naming():
    assert _typed_port_isomorphic(gen_k2r_pair(2), gen_k22_example())
