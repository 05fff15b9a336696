import random

import pytest

from teag_lab import (
    SimilarityTable,
    closed_walk,
    cyc,
    dup_r,
    overlap,
    soft_overlap,
    typed_neighborhood,
)
from teag_lab.pairs import gen_cycle_pair, gen_k22_example, gen_k2r_pair
from teag_lab.random_graphs import (
    permutation_cycles,
    random_functional_graph,
    random_simple_teag,
)

from conftest import build_simple_cycle


def test_overlap_on_biclique_and_split_configuration():
    pair = gen_k22_example()
    assert overlap(pair.view1, 0, 1) == 2  # u and v share both typed attributes
    assert overlap(pair.view2, 0, 3) == 0  # u shares nothing with v3
    assert overlap(pair.view2, 0, 1) == 1
    assert overlap(pair.view2, 0, 2) == 1


def test_overlap_with_self_is_neighborhood_size():
    pair = gen_k22_example()
    assert overlap(pair.view1, 0, 0) == len(typed_neighborhood(pair.view1, 0))


def test_overlap_symmetric_on_fuzzed_graphs():
    rng = random.Random(21)
    for _ in range(30):
        view = random_simple_teag(rng)
        ents = sorted(view.entities)
        for u in ents:
            for v in ents:
                assert overlap(view, u, v) == overlap(view, v, u)


def test_overlap_rejects_non_entities():
    pair = gen_k22_example()
    with pytest.raises(ValueError, match="not an entity"):
        overlap(pair.view1, 0, 4)


def test_dup_on_person_records(person_record_view):
    assert dup_r(person_record_view, 0, 1) == 1
    assert dup_r(person_record_view, 0, 2) == 0


def test_dup3_on_shared_triple():
    pair = gen_k2r_pair(3)
    assert dup_r(pair.view1, pair.target1, 3) == 1


def test_dup_single_entity_graph():
    from teag_lab import ATTRIBUTE, ENTITY, EntityAttributeView, GraphBuilder

    b = GraphBuilder()
    t = b.node_type("T", ENTITY)
    a = b.node_type("A", ATTRIBUTE)
    e = b.edge_type("rel")
    u = b.node(t)
    b.edge(u, b.node(a), e)
    view = EntityAttributeView.from_kinds(b.build())
    assert dup_r(view, u, 1) == 0


def test_dup_antitone_in_r_on_fuzzed_graphs():
    rng = random.Random(5)
    for _ in range(40):
        view = random_simple_teag(rng)
        for u in view.entities:
            for r in (1, 2, 3):
                assert dup_r(view, u, r) >= dup_r(view, u, r + 1)


def test_cyc_on_cycle_pair():
    pair = gen_cycle_pair(3)
    for v in pair.g1.nodes:
        assert cyc(pair.g1, v, 3) == 1
    for v in pair.g2.nodes:
        assert cyc(pair.g2, v, 3) == 0


def test_cyc_requires_simple_cycle_of_exact_length():
    c3 = build_simple_cycle(3)
    assert cyc(c3, 0, 6) == 0
    assert closed_walk(c3, 0, 6) == 1
    with pytest.raises(ValueError):
        cyc(c3, 0, 2)


def test_closed_walk_on_cycles():
    c3 = build_simple_cycle(3)
    c6 = build_simple_cycle(6)
    assert closed_walk(c6, 0, 3) == 0  # length-3 walk ends at the antipode
    assert closed_walk(c6, 0, 6) == 1
    assert closed_walk(c3, 0, 3) == 1


def test_closed_walk_edgeless():
    from teag_lab import GraphBuilder

    b = GraphBuilder()
    t = b.node_type("T")
    b.edge_type("rel")
    u = b.node(t)
    g = b.build()
    assert closed_walk(g, u, 4) == 0


def test_walk_and_cycle_relations_on_functional_graphs():
    rng = random.Random(17)
    for _ in range(40):
        g = random_functional_graph(rng)
        for comp in permutation_cycles(g):
            n = len(comp)
            for v in comp:
                for length in range(1, 9):
                    # unique out-edge: a closed walk exists iff the cycle length divides
                    assert closed_walk(g, v, length) == int(length % n == 0)
                if 3 <= n <= 8:
                    assert cyc(g, v, n) == closed_walk(g, v, n) == 1


def test_simple_cycle_implies_closed_walk():
    rng = random.Random(23)
    from teag_lab.random_graphs import random_digraph

    for _ in range(40):
        g = random_digraph(rng)
        for v in g.nodes:
            for length in (3, 4, 5):
                if cyc(g, v, length):
                    assert closed_walk(g, v, length) == 1


def test_similarity_table_validation():
    table = SimilarityTable()
    assert table.sim(3, 3) == 1.0
    assert table.sim(1, 2) == 0.0
    table.set(1, 2, 0.5)
    assert table.sim(2, 1) == 0.5  # symmetric
    with pytest.raises(ValueError, match="outside"):
        table.set(1, 2, 1.5)
    with pytest.raises(ValueError, match="diagonal"):
        SimilarityTable([(4, 4, 0.3)])


def test_soft_overlap_noisy_name_plus_exact_phone(noisy_name_view):
    # name nodes 2 and 3 are similar at 0.92; the phone node is shared exactly
    sims = SimilarityTable([(2, 3, 0.92)])
    assert soft_overlap(noisy_name_view, 0, 1, sims) == 0.92 + 1.0


def test_soft_overlap_identity_table_reduces_to_overlap():
    pair = gen_k22_example()
    assert soft_overlap(pair.view1, 0, 1) == 2.0 == float(overlap(pair.view1, 0, 1))


def test_soft_overlap_empty_neighborhood():
    from teag_lab import ATTRIBUTE, ENTITY, EntityAttributeView, GraphBuilder

    b = GraphBuilder()
    t = b.node_type("T", ENTITY)
    b.node_type("A", ATTRIBUTE)
    u = b.node(t)
    v = b.node(t)
    view = EntityAttributeView.from_kinds(b.build())
    assert soft_overlap(view, u, v) == 0.0


def test_soft_overlap_ignores_entity_types(noisy_name_view):
    # defined for any entity pair; the same-type filter lives in dup_r only
    assert soft_overlap(noisy_name_view, 0, 0) == 2.0
