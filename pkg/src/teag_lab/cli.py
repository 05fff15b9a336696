"""Command-line orchestration.

One verb per artifact: ``gen`` emits separation pairs, ``oracle`` evaluates
ground-truth predicates on a graph file, ``construct`` runs an exact
construction, ``necessity`` / ``sufficiency`` / ``certify`` / ``fuzz`` run
the trial suites, and ``report`` merges saved JSON reports into one table.

Reports are deterministic: identical invocations (same seeds) produce
byte-identical JSON.  Exit code is 0 iff every verdict is PASS.  The
environment variable ``TEAG_LAB_SEED`` overrides the master seed of
``necessity`` and ``fuzz`` runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions, harness, oracles
from .errors import TeagLabError
from .graph import EntityAttributeView, assign_canonical_ports, validate_entity_attribute
from .io import load_graph, load_similarity_entries, save_graph
from .pairs import GENERATORS
from .random_graphs import FuzzBounds

SEED_ENV = "TEAG_LAB_SEED"


def _master_seed(flag_value: int) -> int:
    env = os.environ.get(SEED_ENV)
    return int(env) if env is not None else flag_value


def _dump(report: dict, out: str | None, fmt: str, render) -> None:
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    if fmt == "json":
        sys.stdout.write(text)
    else:
        render(report)
        if out:
            print(f"report written to {out}")


def _print_table(rows: list[dict], columns: list[str]) -> None:
    if not rows:
        print("(no rows)")
        return
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in columns}
    header = "  ".join(c.ljust(widths[c]) for c in columns)
    print(header)
    print("-" * len(header))
    for r in rows:
        print("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in columns))


def _render_necessity(report: dict) -> None:
    print(f"\nindistinguishability trials: row={report['row']}")
    _print_table(
        [
            {
                "architecture": report["architecture"],
                "pair": report["pair"],
                "param": report["param"],
                "depths": ",".join(str(d) for d in report["depths"]),
                "seeds": report["seeds"],
                "max distance": f"{report['max_distance']:.2e}",
                "verdict": report["verdict"],
            }
        ],
        ["architecture", "pair", "param", "depths", "seeds", "max distance", "verdict"],
    )


def _render_sufficiency(report: dict) -> None:
    print(f"\nconstruction check: row={report['row']}")
    _print_table(
        [
            {
                "construction": report["construction"],
                "param": report["param"],
                "y(G1)": report["y_g1"],
                "y(G2)": report["y_g2"],
                "expected": ",".join(str(x) for x in report["expected"]),
                "verdict": report["verdict"],
            }
        ],
        ["construction", "param", "y(G1)", "y(G2)", "expected", "verdict"],
    )


def _render_certificates(report: dict) -> None:
    print(f"\nrefinement certificates (depth bound {report['depth_bound']}):")
    _print_table(
        [
            {
                "certificate": c["name"],
                "architecture": c["architecture"],
                "check": c["check"],
                "depth": c["depth"],
                "verdict": c["verdict"],
            }
            for c in report["certificates"]
        ],
        ["certificate", "architecture", "check", "depth", "verdict"],
    )
    print(f"note: {report['note']}")
    print(f"overall: {report['verdict']}")


def _render_fuzz(report: dict) -> None:
    counts = report["counts"]
    print(
        f"\nfuzz: {counts['simple']} simple + {counts['multigraph']} multigraph "
        f"(x{counts['port_variants']} port tables) + {counts['walk']} walk graphs, "
        f"seed {report['master_seed']}"
    )
    n = len(report["counterexamples"])
    print(f"counterexamples: {n}")
    for c in report["counterexamples"][:5]:
        print(f"  {c['check']} inputs={c['inputs']} got={c['got']} want={c['want']}")
    print(f"overall: {report['verdict']}")


def _load_view(loaded, need_view: bool = True):
    if loaded.view is not None:
        return loaded.view
    view = EntityAttributeView.from_kinds(loaded.graph)
    if need_view and not view.entities and not view.attributes:
        raise TeagLabError(
            "graph file has no bipartition and no entity/attribute node kinds"
        )
    return view


def _cmd_gen(args) -> int:
    kwargs = {}
    if args.pair == "k2r":
        kwargs["r"] = args.r
    if args.pair == "cycle":
        kwargs["l"] = args.length
    pair = GENERATORS[args.pair](**kwargs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_graph(out / "g1.json", pair.g1, view=pair.view1, ports=pair.ports1)
    save_graph(out / "g2.json", pair.g2, view=pair.view2, ports=pair.ports2)
    (out / "manifest.json").write_text(
        json.dumps(pair.manifest(), indent=1, sort_keys=True) + "\n"
    )
    print(f"wrote {out}/g1.json, {out}/g2.json, {out}/manifest.json")
    return 0


def _cmd_oracle(args) -> int:
    loaded = load_graph(args.graph)
    g = loaded.graph
    if args.predicate == "dup":
        view = _load_view(loaded)
        value = oracles.dup_r(view, args.node, args.r)
        inputs = {"node": args.node, "r": args.r}
    elif args.predicate == "overlap":
        view = _load_view(loaded)
        value = oracles.overlap(view, args.u, args.v)
        inputs = {"u": args.u, "v": args.v}
    elif args.predicate == "soft-overlap":
        view = _load_view(loaded)
        sims = oracles.SimilarityTable(
            load_similarity_entries(args.sims) if args.sims else None
        )
        value = oracles.soft_overlap(view, args.u, args.v, sims)
        inputs = {"u": args.u, "v": args.v, "sims": args.sims}
    elif args.predicate == "cyc":
        value = oracles.cyc(g, args.node, args.length)
        inputs = {"node": args.node, "length": args.length}
    elif args.predicate == "walk":
        value = oracles.closed_walk(g, args.node, args.length)
        inputs = {"node": args.node, "length": args.length}
    else:  # validate
        view = _load_view(loaded)
        report = validate_entity_attribute(g, view)
        value = {
            "valid": report.is_valid,
            "simple": report.is_simple,
            "checks": {c.name: c.passed for c in report.checks},
        }
        inputs = {}
    result = {"predicate": args.predicate, "graph": args.graph, "inputs": inputs, "value": value}
    _dump(result, args.out, args.format, lambda r: print(json.dumps(r, indent=1, sort_keys=True)))
    return 0


def _cmd_construct(args) -> int:
    loaded = load_graph(args.graph)
    g = loaded.graph
    state = None
    if args.op == "dup1-simple":
        outputs = constructions.dup1_simple(_load_view(loaded))
        value = {str(u): y for u, y in sorted(outputs.items())}
    elif args.op == "dup1-multigraph":
        ports = loaded.ports or assign_canonical_ports(g)
        outputs = constructions.dup1_multigraph(_load_view(loaded), ports)
        value = {str(u): y for u, y in sorted(outputs.items())}
    elif args.op == "dupr-ego":
        trace = constructions.dupr_ego(_load_view(loaded), args.ego, args.r)
        value = trace.output
        state = trace.to_obj()
    elif args.op == "dupr-ego-multigraph":
        ports = loaded.ports or assign_canonical_ports(g)
        trace = constructions.dupr_ego_multigraph(_load_view(loaded), ports, args.ego, args.r)
        value = trace.output
        state = trace.to_obj()
    else:  # cyc-ego
        trace = constructions.cyc_ego(g, args.ego, args.length)
        value = trace.output
        state = trace.to_obj()
    result = {"op": args.op, "graph": args.graph, "output": value}
    if args.dump_state and state is not None:
        result["state"] = state
    _dump(result, args.out, args.format, lambda r: print(json.dumps(r, indent=1, sort_keys=True)))
    return 0


def _cmd_necessity(args) -> int:
    depths = tuple(int(d) for d in args.depths.split(",")) if args.depths else None
    report = harness.run_necessity(
        args.row,
        r=args.r,
        length=args.length,
        seeds=args.seeds,
        hidden_dim=args.hidden_dim,
        depths=depths,
        tolerance=args.tolerance,
        master_seed=_master_seed(args.master_seed),
        jobs=args.jobs,
    )
    _dump(report, args.out, args.format, _render_necessity)
    return 0 if report["verdict"] == harness.PASS else 1


def _cmd_sufficiency(args) -> int:
    rows: list[tuple[str, dict]]
    if args.row == "all":
        rows = [
            ("k21-simple", {}),
            ("k21-multigraph", {}),
            *[("k2r", {"r": r}) for r in (2, 3, 4)],
            *[("cycle", {"length": l}) for l in (3, 5, 7)],
        ]
    else:
        rows = [(args.row, {"r": args.r, "length": args.length})]
    reports = [harness.run_sufficiency(row, **kw) for row, kw in rows]
    merged = {
        "kind": "sufficiency-suite",
        "rows": reports,
        "verdict": harness.PASS
        if all(r["verdict"] == harness.PASS for r in reports)
        else harness.FAIL,
    }

    def render(m):
        print("\nconstruction checks:")
        _print_table(
            [
                {
                    "row": r["row"],
                    "construction": r["construction"],
                    "param": r["param"],
                    "y(G1)": r["y_g1"],
                    "y(G2)": r["y_g2"],
                    "verdict": r["verdict"],
                }
                for r in m["rows"]
            ],
            ["row", "construction", "param", "y(G1)", "y(G2)", "verdict"],
        )
        print(f"overall: {m['verdict']}")

    _dump(merged, args.out, args.format, render)
    return 0 if merged["verdict"] == harness.PASS else 1


def _cmd_certify(args) -> int:
    report = harness.run_certificates(depth_bound=args.depth_bound, r=args.r, length=args.length)
    _dump(report, args.out, args.format, _render_certificates)
    return 0 if report["verdict"] == harness.PASS else 1


def _cmd_fuzz(args) -> int:
    bounds = FuzzBounds(
        max_entities=args.max_entities,
        max_attributes=args.max_attributes,
        max_cycle_length=args.max_cycle_length,
    )
    try:
        report = harness.run_fuzz(
            master_seed=_master_seed(args.seed),
            n_simple=args.graphs,
            n_multigraph=args.multigraphs,
            n_walk=args.walk_graphs,
            bounds=bounds,
            port_variants=args.port_variants,
            jobs=args.jobs,
        )
    except ValueError as exc:
        print(f"refusing to fuzz: {exc}", file=sys.stderr)
        return 2
    _dump(report, args.out, args.format, _render_fuzz)
    return 0 if report["verdict"] == harness.PASS else 1


def _cmd_report(args) -> int:
    all_pass = True
    for path in args.files:
        obj = json.loads(Path(path).read_text())
        kind = obj.get("kind", "?")
        print(f"\n== {path} [{kind}]")
        if kind == "necessity":
            _render_necessity(obj)
        elif kind == "sufficiency":
            _render_sufficiency(obj)
        elif kind == "sufficiency-suite":
            for r in obj["rows"]:
                _render_sufficiency(r)
        elif kind == "certificates":
            _render_certificates(obj)
        elif kind == "fuzz":
            _render_fuzz(obj)
        else:
            print(json.dumps(obj, indent=1, sort_keys=True))
        verdict = obj.get("verdict", harness.PASS)
        all_pass = all_pass and verdict == harness.PASS
    print(f"\noverall: {harness.PASS if all_pass else harness.FAIL}")
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teag-lab",
        description="expressivity laboratory for typed entity-attribute graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p, default_out=None):
        help_text = "write the JSON report to this path"
        if default_out:
            help_text += f" (default: {default_out})"
        p.add_argument("--out", default=default_out, help=help_text)
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("gen", help="emit a separation pair as graph files plus a manifest")
    p.add_argument("--pair", choices=sorted(GENERATORS), required=True)
    p.add_argument("--r", type=int, default=2, help="overlap threshold for k2r")
    p.add_argument("--l", dest="length", type=int, default=3, help="cycle length for cycle")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("oracle", help="evaluate a ground-truth predicate on a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument(
        "--predicate",
        choices=("dup", "overlap", "soft-overlap", "cyc", "walk", "validate"),
        required=True,
    )
    p.add_argument("--node", type=int, default=0)
    p.add_argument("--u", type=int, default=0)
    p.add_argument("--v", type=int, default=0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--l", dest="length", type=int, default=3)
    p.add_argument("--sims", help="similarity table file for soft-overlap")
    add_output_flags(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("construct", help="run an exact construction on a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument(
        "--op",
        choices=(
            "dup1-simple",
            "dup1-multigraph",
            "dupr-ego",
            "dupr-ego-multigraph",
            "cyc-ego",
        ),
        required=True,
    )
    p.add_argument("--ego", type=int, default=0)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--l", dest="length", type=int, default=3)
    p.add_argument("--dump-state", action="store_true", help="include intermediate per-node state")
    add_output_flags(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("necessity", help="random-weight indistinguishability trials")
    p.add_argument("--row", choices=sorted(harness.NECESSITY_ROWS), required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--l", dest="length", type=int, default=3)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--hidden-dim", type=int, default=32)
    p.add_argument("--depths", help="comma-separated depth list, e.g. 2,4")
    p.add_argument("--tolerance", type=float, default=0.0)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    add_output_flags(p, default_out="necessity_report.json")
    p.set_defaults(func=_cmd_necessity)

    p = sub.add_parser("sufficiency", help="run the exact constructions on their pairs")
    p.add_argument("--row", choices=sorted(harness.NECESSITY_ROWS) + ["all"], default="all")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--l", dest="length", type=int, default=3)
    add_output_flags(p, default_out="sufficiency_report.json")
    p.set_defaults(func=_cmd_sufficiency)

    p = sub.add_parser("certify", help="refinement certificates for all rows")
    p.add_argument("--depth-bound", type=int, default=16)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--l", dest="length", type=int, default=3)
    add_output_flags(p, default_out="certify_report.json")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("fuzz", help="oracle-equivalence fuzzing")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graphs", type=int, default=500, help="simple graphs")
    p.add_argument("--multigraphs", type=int, default=200)
    p.add_argument("--walk-graphs", type=int, default=100)
    p.add_argument("--port-variants", type=int, default=3)
    p.add_argument("--max-entities", type=int, default=8)
    p.add_argument("--max-attributes", type=int, default=10)
    p.add_argument("--max-cycle-length", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    add_output_flags(p, default_out="fuzz_report.json")
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("report", help="merge saved JSON reports into one table")
    p.add_argument("files", nargs="+")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TeagLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
