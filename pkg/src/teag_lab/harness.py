"""Trial protocols: indistinguishability trials, construction checks,
refinement certificates, and oracle-equivalence fuzzing.

Every function returns a plain JSON-serializable dict with a ``verdict``
field; reports are deterministic functions of their inputs (same seeds give
byte-identical serializations).
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import constructions, oracles
from .engine import EngineConfig, embedding_distance, feature_dims, forward, init_weights
from .graph import AdaptationSet, EntityAttributeView, assign_canonical_ports
from .io import graph_to_obj
from .pairs import (
    CYC,
    DUP,
    SeparationPair,
    gen_cycle_pair,
    gen_k21_multigraph_pair,
    gen_k21_simple_pair,
    gen_k2r_pair,
)
from .random_graphs import (
    FuzzBounds,
    permutation_cycles,
    random_digraph,
    random_functional_graph,
    random_multigraph_teag,
    random_simple_teag,
    random_valid_ports,
)
from .refinement import refine

PASS = "PASS"
FAIL = "FAIL"


@dataclass(frozen=True)
class ArchitectureRow:
    """One architecture/pair row of the indistinguishability protocol."""

    row: str
    config: AdaptationSet  # the insufficient adaptation set under test
    depths: tuple[int, ...]  # defaults; "cycle" depths scale with the length
    make_pair: Callable[[int], SeparationPair]
    sufficient_config: AdaptationSet  # cheapest set that does suffice
    optimal_depth: int  # depth at which the sufficient set separates


def _depths_for_cycle(length: int) -> tuple[int, ...]:
    return (length, 2 * length)


NECESSITY_ROWS: dict[str, ArchitectureRow] = {
    "k21-simple": ArchitectureRow(
        row="k21-simple",
        config=AdaptationSet(),
        depths=(2, 4),
        make_pair=lambda param: gen_k21_simple_pair(),
        sufficient_config=AdaptationSet(reverse_mp=True),
        optimal_depth=2,
    ),
    "k21-multigraph": ArchitectureRow(
        row="k21-multigraph",
        config=AdaptationSet(reverse_mp=True),
        depths=(2, 4),
        make_pair=lambda param: gen_k21_multigraph_pair(),
        sufficient_config=AdaptationSet(reverse_mp=True, in_ports=True),
        optimal_depth=2,
    ),
    "k2r": ArchitectureRow(
        row="k2r",
        config=AdaptationSet(reverse_mp=True, in_ports=True, out_ports=True),
        depths=(2, 4, 6),
        make_pair=gen_k2r_pair,
        sufficient_config=AdaptationSet(reverse_mp=True, ego_ids=True),
        optimal_depth=4,
    ),
    "cycle": ArchitectureRow(
        row="cycle",
        config=AdaptationSet(reverse_mp=True, in_ports=True, out_ports=True),
        depths=(3, 6),
        make_pair=gen_cycle_pair,
        sufficient_config=AdaptationSet(ego_ids=True),
        optimal_depth=3,  # placeholder; equals the cycle length at run time
    ),
}


def default_param(row: str, r: int = 2, length: int = 3) -> int:
    return length if row == "cycle" else r


def _seed_trials(
    row: str, param: int, hidden_dim: int, depths: tuple[int, ...], seed: int
) -> list[dict]:
    """All depth trials for one weight seed.  Regenerates the pair locally so
    workers need nothing pickled but primitives."""
    spec = NECESSITY_ROWS[row]
    pair = spec.make_pair(param)
    adapt = spec.config
    ports1 = pair.ports1 if adapt.needs_ports else None
    ports2 = pair.ports2 if adapt.needs_ports else None
    dims = feature_dims([pair.g1, pair.g2], [ports1, ports2])
    out = []
    for depth in depths:
        config = EngineConfig(hidden_dim=hidden_dim, depth=depth, adaptations=adapt, seed=seed)
        weights = init_weights(config, dims)
        layers1 = forward(pair.g1, config, weights, ports=ports1)
        layers2 = forward(pair.g2, config, weights, ports=ports2)
        per_layer = [
            embedding_distance(l1[pair.target1], l2[pair.target2])
            for l1, l2 in zip(layers1, layers2)
        ]
        out.append(
            {
                "seed": seed,
                "depth": depth,
                "distance": per_layer[-1],
                "per_layer": per_layer,
            }
        )
    return out


def _seed_trials_star(args) -> list[dict]:
    return _seed_trials(*args)


def run_necessity(
    row: str,
    r: int = 2,
    length: int = 3,
    seeds: int = 100,
    hidden_dim: int = 32,
    depths: tuple[int, ...] | None = None,
    tolerance: float = 0.0,
    master_seed: int = 0,
    jobs: int = 1,
) -> dict:
    """Random-weight trials: the architecture under test must give the target
    node identical embeddings on both graphs of the pair, for every seed and
    depth.  Distances are exact zeros thanks to content-ordered summation."""
    if row not in NECESSITY_ROWS:
        raise ValueError(f"unknown row {row!r}; rows: {sorted(NECESSITY_ROWS)}")
    spec = NECESSITY_ROWS[row]
    param = default_param(row, r, length)
    if depths is None:
        depths = _depths_for_cycle(length) if row == "cycle" else spec.depths
    depths = tuple(int(d) for d in depths)
    seed_list = [master_seed + i for i in range(seeds)]

    tasks = [(row, param, hidden_dim, depths, s) for s in seed_list]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_seed_trials_star, tasks))
    else:
        chunks = [_seed_trials_star(t) for t in tasks]
    trials = [t for chunk in chunks for t in chunk]
    trials.sort(key=lambda t: (t["seed"], t["depth"]))

    max_distance = max((t["distance"] for t in trials), default=0.0)
    pair = spec.make_pair(param)
    return {
        "kind": "necessity",
        "row": row,
        "architecture": spec.config.describe(),
        "pair": pair.name,
        "predicate": pair.predicate,
        "param": param,
        "hidden_dim": hidden_dim,
        "depths": list(depths),
        "seeds": seeds,
        "master_seed": master_seed,
        "tolerance": tolerance,
        "trials": trials,
        "max_distance": max_distance,
        "verdict": PASS if max_distance <= tolerance else FAIL,
    }


def run_sufficiency(row: str, r: int = 2, length: int = 3) -> dict:
    """Run the exact construction for the row on its separation pair and
    compare the target outputs against the ground-truth labels."""
    if row not in NECESSITY_ROWS:
        raise ValueError(f"unknown row {row!r}; rows: {sorted(NECESSITY_ROWS)}")
    param = default_param(row, r, length)
    pair = NECESSITY_ROWS[row].make_pair(param)

    if row == "k21-simple":
        y1 = constructions.dup1_simple(pair.view1)[pair.target1]
        y2 = constructions.dup1_simple(pair.view2)[pair.target2]
        construction = "dup1-simple (2 passes)"
    elif row == "k21-multigraph":
        y1 = constructions.dup1_multigraph(pair.view1, pair.ports1)[pair.target1]
        y2 = constructions.dup1_multigraph(pair.view2, pair.ports2)[pair.target2]
        construction = "dup1-multigraph (2 passes)"
    elif row == "k2r":
        y1 = constructions.dupr_ego(pair.view1, pair.target1, param).output
        y2 = constructions.dupr_ego(pair.view2, pair.target2, param).output
        construction = "dupr-ego (4 passes)"
    else:  # cycle
        y1 = constructions.cyc_ego(pair.g1, pair.target1, param).output
        y2 = constructions.cyc_ego(pair.g2, pair.target2, param).output
        construction = f"cyc-ego ({param} passes)"

    ok = (y1, y2) == pair.expected
    return {
        "kind": "sufficiency",
        "row": row,
        "construction": construction,
        "pair": pair.name,
        "predicate": pair.predicate,
        "param": param,
        "y_g1": y1,
        "y_g2": y2,
        "expected": list(pair.expected),
        "verdict": PASS if ok else FAIL,
    }


# -- refinement certificates --------------------------------------------------


def _colors_equal_at(
    pair: SeparationPair, config: AdaptationSet, depth: int
) -> tuple[list[bool], dict[str, list[int]]]:
    """Target-color equality per layer 0..depth, plus the partition sizes."""
    ports1 = pair.ports1 if config.needs_ports else None
    ports2 = pair.ports2 if config.needs_ports else None
    ego1 = pair.target1 if config.ego_ids else None
    ego2 = pair.target2 if config.ego_ids else None
    c1 = refine(pair.g1, config, depth, ports=ports1, ego=ego1)
    c2 = refine(pair.g2, config, depth, ports=ports2, ego=ego2)
    equal = [
        c1.color(pair.target1, k) == c2.color(pair.target2, k) for k in range(depth + 1)
    ]
    sizes = {
        "g1": list(c1.partition_sizes()),
        "g2": list(c2.partition_sizes()),
    }
    return equal, sizes


def run_certificates(depth_bound: int = 16, r: int = 2, length: int = 3) -> dict:
    """Refinement certificates for every row.

    Checks three families: the insufficient adaptation sets leave the targets
    indistinguishable at every depth up to the bound; the stated depth-short
    architectures are still blind; and each sufficient set separates at its
    optimal depth.  The first family is finite evidence for an all-depth
    claim; the bound is recorded in the report.
    """
    certs = []

    def add(name, pair, config, kind, depth, result_ok, sizes, extra=None):
        certs.append(
            {
                "name": name,
                "pair": pair.name,
                "param": pair.param,
                "architecture": config.describe(),
                "check": kind,
                "depth": depth,
                "partition_sizes": sizes,
                "verdict": PASS if result_ok else FAIL,
                **(extra or {}),
            }
        )

    rows = [
        ("k21-simple", gen_k21_simple_pair(), 2),
        ("k21-multigraph", gen_k21_multigraph_pair(), 2),
        ("k2r", gen_k2r_pair(r), 4),
        ("cycle", gen_cycle_pair(length), length),
    ]

    for row, pair, opt_depth in rows:
        spec = NECESSITY_ROWS[row]
        equal, sizes = _colors_equal_at(pair, spec.config, depth_bound)
        add(
            f"{row}: insufficient set blind at all depths <= {depth_bound}",
            pair,
            spec.config,
            "indistinguishable",
            depth_bound,
            all(equal),
            sizes,
            {"first_difference": equal.index(False) if not all(equal) else None},
        )
        equal_suff, sizes_suff = _colors_equal_at(pair, spec.sufficient_config, opt_depth)
        add(
            f"{row}: sufficient set separates at depth {opt_depth}",
            pair,
            spec.sufficient_config,
            "distinguishable",
            opt_depth,
            not equal_suff[opt_depth],
            sizes_suff,
        )

    # depth-minimality: one layer short, the sufficient sets are still blind
    pair1 = gen_k21_simple_pair()
    eq, sizes = _colors_equal_at(pair1, AdaptationSet(reverse_mp=True), 1)
    add(
        "k21-simple: reverse-only blind at depth 1",
        pair1,
        AdaptationSet(reverse_mp=True),
        "indistinguishable",
        1,
        eq[1],
        sizes,
    )
    pair3 = gen_k2r_pair(r)
    eq, sizes = _colors_equal_at(pair3, AdaptationSet(reverse_mp=True, ego_ids=True), 3)
    add(
        "k2r: reverse+ego blind at depth 3",
        pair3,
        AdaptationSet(reverse_mp=True, ego_ids=True),
        "indistinguishable",
        3,
        all(eq),
        sizes,
    )

    all_pass = all(c["verdict"] == PASS for c in certs)
    return {
        "kind": "certificates",
        "depth_bound": depth_bound,
        "r": r,
        "length": length,
        "note": (
            "indistinguishability certificates are finite evidence up to the "
            "depth bound; the all-depth guarantee rests on the induction "
            "arguments, not on this run"
        ),
        "certificates": certs,
        "verdict": PASS if all_pass else FAIL,
    }


# -- oracle-equivalence fuzzing -----------------------------------------------


def _fuzz_simple_case(seed: int, bounds: FuzzBounds) -> list[dict]:
    """All construction-vs-oracle checks on one random simple graph."""
    rng = random.Random(seed)
    view = random_simple_teag(rng, bounds)
    g = view.graph
    failures = []

    def record(check, inputs, got, want):
        failures.append(
            {
                "check": check,
                "graph": graph_to_obj(g, view=view),
                "inputs": inputs,
                "got": got,
                "want": want,
            }
        )

    dup1 = constructions.dup1_simple(view)
    ports = assign_canonical_ports(g)
    dup1_multi = constructions.dup1_multigraph(view, ports)
    for u in sorted(view.entities):
        want = oracles.dup_r(view, u, 1)
        if dup1[u] != want:
            record("dup1_simple", {"u": u}, dup1[u], want)
        if dup1_multi[u] != want:
            record("dup1_multigraph-on-simple", {"u": u}, dup1_multi[u], want)

    for ego in sorted(view.entities):
        for r in (1, 2, 3, 4):
            trace = constructions.dupr_ego(view, ego, r)
            want = oracles.dup_r(view, ego, r)
            if trace.output != want:
                record("dupr_ego", {"ego": ego, "r": r}, trace.output, want)
            multi = constructions.dupr_ego_multigraph(view, ports, ego, r)
            if multi.output != trace.output:
                record(
                    "dupr_ego_multigraph-on-simple",
                    {"ego": ego, "r": r},
                    multi.output,
                    trace.output,
                )
        # overlap state check is r-independent; reuse the last trace
        for v in sorted(view.entities):
            want_ov = oracles.overlap(view, ego, v)
            if trace.ego_overlap[v] != want_ov:
                record("ego_overlap", {"ego": ego, "v": v}, trace.ego_overlap[v], want_ov)

    ents = sorted(view.entities)
    for u in ents:
        for v in ents:
            soft = oracles.soft_overlap(view, u, v)
            want_soft = float(oracles.overlap(view, u, v))
            if soft != want_soft:
                record("soft_overlap-identity", {"u": u, "v": v}, soft, want_soft)
    return failures


def _fuzz_multigraph_case(seed: int, bounds: FuzzBounds, port_variants: int) -> list[dict]:
    rng = random.Random(seed)
    view = random_multigraph_teag(rng, bounds)
    g = view.graph
    failures = []
    for k in range(port_variants):
        ports = random_valid_ports(rng, g)
        dup1 = constructions.dup1_multigraph(view, ports)
        for u in sorted(view.entities):
            want = oracles.dup_r(view, u, 1)
            if dup1[u] != want:
                failures.append(
                    {
                        "check": "dup1_multigraph",
                        "graph": graph_to_obj(g, view=view, ports=ports),
                        "inputs": {"u": u, "port_variant": k},
                        "got": dup1[u],
                        "want": want,
                    }
                )
        for ego in sorted(view.entities):
            for r in (1, 2):
                got = constructions.dupr_ego_multigraph(view, ports, ego, r).output
                want = oracles.dup_r(view, ego, r)
                if got != want:
                    failures.append(
                        {
                            "check": "dupr_ego_multigraph",
                            "graph": graph_to_obj(g, view=view, ports=ports),
                            "inputs": {"ego": ego, "r": r, "port_variant": k},
                            "got": got,
                            "want": want,
                        }
                    )
    return failures


def _fuzz_walk_case(seed: int, bounds: FuzzBounds) -> list[dict]:
    rng = random.Random(seed)
    failures = []

    g = random_digraph(rng)
    for v in g.nodes:
        for length in range(1, bounds.max_cycle_length + 1):
            got = constructions.cyc_ego(g, v, length).output
            want = oracles.closed_walk(g, v, length)
            if got != want:
                failures.append(
                    {
                        "check": "cyc_ego-equals-closed-walk",
                        "graph": graph_to_obj(g),
                        "inputs": {"ego": v, "length": length},
                        "got": got,
                        "want": want,
                    }
                )

    fg = random_functional_graph(rng)
    for cycle in permutation_cycles(fg):
        if not 3 <= len(cycle) <= bounds.max_cycle_length:
            continue
        for v in cycle:
            got = constructions.cyc_ego(fg, v, len(cycle)).output
            want = oracles.cyc(fg, v, len(cycle))
            if got != want:
                failures.append(
                    {
                        "check": "cyc_ego-equals-cyc-on-functional",
                        "graph": graph_to_obj(fg),
                        "inputs": {"ego": v, "length": len(cycle)},
                        "got": got,
                        "want": want,
                    }
                )
    return failures


def _fuzz_chunk(args) -> list[dict]:
    kind, seed, bounds, port_variants = args
    if kind == "simple":
        return _fuzz_simple_case(seed, bounds)
    if kind == "multigraph":
        return _fuzz_multigraph_case(seed, bounds, port_variants)
    return _fuzz_walk_case(seed, bounds)


def run_fuzz(
    master_seed: int = 0,
    n_simple: int = 500,
    n_multigraph: int = 200,
    n_walk: int = 100,
    bounds: FuzzBounds = FuzzBounds(),
    port_variants: int = 3,
    jobs: int = 1,
) -> dict:
    """Check every construction against its brute-force oracle on random
    graphs; report counterexamples verbatim."""
    bounds.validate()
    if port_variants < 1:
        raise ValueError("port_variants must be >= 1")

    tasks = (
        [("simple", master_seed * 1_000_003 + i, bounds, port_variants) for i in range(n_simple)]
        + [
            ("multigraph", (master_seed + 7) * 1_000_003 + i, bounds, port_variants)
            for i in range(n_multigraph)
        ]
        + [("walk", (master_seed + 13) * 1_000_003 + i, bounds, port_variants) for i in range(n_walk)]
    )
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_fuzz_chunk, tasks, chunksize=16))
    else:
        chunks = [_fuzz_chunk(t) for t in tasks]
    counterexamples = [c for chunk in chunks for c in chunk]

    return {
        "kind": "fuzz",
        "master_seed": master_seed,
        "counts": {
            "simple": n_simple,
            "multigraph": n_multigraph,
            "walk": n_walk,
            "port_variants": port_variants,
        },
        "bounds": {
            "max_entities": bounds.max_entities,
            "max_attributes": bounds.max_attributes,
            "max_entity_types": bounds.max_entity_types,
            "max_attribute_types": bounds.max_attribute_types,
            "max_edge_types": bounds.max_edge_types,
            "max_cycle_length": bounds.max_cycle_length,
        },
        "counterexamples": counterexamples,
        "verdict": PASS if not counterexamples else FAIL,
    }
