import random

import pytest

from teag_lab import AdaptationSet, MissingPortsError, indistinguishable, refine
from teag_lab.pairs import (
    gen_cycle_pair,
    gen_k21_multigraph_pair,
    gen_k21_simple_pair,
    gen_k22_example,
    gen_k2r_pair,
)
from teag_lab.random_graphs import random_multigraph_teag, random_valid_ports

FWD = AdaptationSet()
REV = AdaptationSet(reverse_mp=True)
REV_PORTS = AdaptationSet(reverse_mp=True, in_ports=True, out_ports=True)
REV_EGO = AdaptationSet(reverse_mp=True, ego_ids=True)


def pair_indist(pair, config, depth, use_ports=None):
    use_ports = config.needs_ports if use_ports is None else use_ports
    return indistinguishable(
        pair.g1,
        pair.target1,
        pair.g2,
        pair.target2,
        config,
        depth,
        ports1=pair.ports1 if use_ports else None,
        ports2=pair.ports2 if use_ports else None,
    )


def test_forward_only_never_reaches_entities():
    pair = gen_k21_simple_pair()
    for depth in (1, 2, 5, 16):
        assert pair_indist(pair, FWD, depth)


def test_reverse_separates_shared_attribute_pair_at_depth_two():
    pair = gen_k21_simple_pair()
    assert pair_indist(pair, REV, 1)  # one layer is not enough
    assert not pair_indist(pair, REV, 2)


def test_reverse_blind_to_parallel_edges():
    pair = gen_k21_multigraph_pair()
    for depth in (2, 4, 16):
        assert pair_indist(pair, REV, depth)


def test_incoming_ports_separate_parallel_edges():
    cfg = AdaptationSet(reverse_mp=True, in_ports=True)
    pair = gen_k21_multigraph_pair()
    # canonical ports: the shared attribute sees two port values in g1, one in g2
    assert not pair_indist(pair, cfg, 2)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_ports_blind_on_split_configuration(r):
    pair = gen_k2r_pair(r)
    c1 = refine(pair.g1, REV_PORTS, 16, ports=pair.ports1)
    c2 = refine(pair.g2, REV_PORTS, 16, ports=pair.ports2)
    for k in range(17):
        assert c1.color(pair.target1, k) == c2.color(pair.target2, k)


def test_published_port_tables_blind_on_k22():
    pair = gen_k22_example()
    assert pair_indist(pair, REV_PORTS, 16)


def test_ego_separates_split_configuration_at_depth_four_not_three():
    pair = gen_k2r_pair(2)
    assert pair_indist(pair, REV_EGO, 3)
    assert not pair_indist(pair, REV_EGO, 4)


def test_cycle_pair_blind_without_ego_at_any_depth():
    pair = gen_cycle_pair(3)
    c1 = refine(pair.g1, REV_PORTS, 16, ports=pair.ports1)
    c2 = refine(pair.g2, REV_PORTS, 16, ports=pair.ports2)
    for k in range(17):
        # every node of both graphs shares one color per layer
        assert set(c1.layers[k]) == set(c2.layers[k])
        assert len(set(c1.layers[k])) == 1


@pytest.mark.parametrize("length", [3, 5])
def test_ego_separates_cycle_pair_at_depth_length(length):
    pair = gen_cycle_pair(length)
    ego_only = AdaptationSet(ego_ids=True)
    assert not pair_indist(pair, ego_only, length)


def test_identical_graph_identical_node_indistinguishable():
    pair = gen_k22_example()
    assert indistinguishable(pair.g1, 0, pair.g1, 0, REV_PORTS, 8, ports1=pair.ports1, ports2=pair.ports1)


def test_partitions_refine_monotonically():
    rng = random.Random(31)
    for _ in range(20):
        g = random_multigraph_teag(rng).graph
        ports = random_valid_ports(rng, g)
        colors = refine(g, REV_PORTS, 6, ports=ports)
        sizes = colors.partition_sizes()
        assert all(a <= b for a, b in zip(sizes, sizes[1:]))
        # refinement: same color at layer k+1 implies same color at layer k
        for k in range(colors.depth):
            later = colors.partition(k + 1)
            for group in later.values():
                assert len({colors.color(v, k) for v in group}) == 1


def test_supersets_distinguish_at_least_as_much():
    lattice = [
        FWD,
        REV,
        AdaptationSet(reverse_mp=True, in_ports=True),
        REV_PORTS,
        REV_EGO,
        AdaptationSet(reverse_mp=True, in_ports=True, out_ports=True, ego_ids=True),
    ]
    pairs = [gen_k21_simple_pair(), gen_k21_multigraph_pair(), gen_k2r_pair(2)]
    for pair in pairs:
        for depth in (1, 2, 4):
            for weak in lattice:
                if pair_indist(pair, weak, depth):
                    continue
                for strong in lattice:
                    if weak.issubset(strong):
                        assert not pair_indist(pair, strong, depth), (
                            f"{strong.describe()} lost a separation that "
                            f"{weak.describe()} made at depth {depth}"
                        )


def test_layer_zero_depends_only_on_type_and_ego():
    pair = gen_k22_example()
    colors = refine(pair.g1, REV_EGO, 0, ego=pair.target1)
    labels = colors.layers[0]
    assert labels[1] == labels[2] == labels[3]  # same-type non-ego entities
    assert labels[0] != labels[1]  # ego stands out
    assert labels[4] == labels[6] and labels[5] == labels[7]  # per attribute type


def test_refine_input_validation():
    pair = gen_k21_simple_pair()
    with pytest.raises(MissingPortsError):
        refine(pair.g1, AdaptationSet(in_ports=True), 2)
    with pytest.raises(ValueError, match="no ego"):
        refine(pair.g1, AdaptationSet(ego_ids=True), 2)
    with pytest.raises(ValueError, match="ego adaptation is off"):
        refine(pair.g1, FWD, 2, ego=0)
    with pytest.raises(ValueError, match="depth"):
        refine(pair.g1, FWD, -1)
