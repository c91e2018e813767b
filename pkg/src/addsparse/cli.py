"""Command-line interface.

Subcommands: gen, cover, sparsify, verify, coeffs, sweep, optimality-demo.
Exit codes: 0 success/pass, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import experiment, fileio, optimality, verify
from . import sparsifier as sp
from .cover import cover
from .hypergraph import Assignment
from .predicates import BUILTIN_NAMES, Predicate, builtin_predicate, lambda_row_sum, reconstruct_basis

PASS, FAIL, INPUT_ERROR = 0, 1, 2


def _fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def _load_graph(path: str):
    return fileio.parse_hypergraph_labeled(Path(path).read_text())


def _load_predicate(spec: str, k: int, q: int) -> Predicate:
    if spec in BUILTIN_NAMES:
        return builtin_predicate(spec, k, q)
    return fileio.parse_predicate(Path(spec).read_text())


def _cmd_gen(args) -> int:
    graph = fileio.generate(args.n, args.k, args.m, seed=args.seed, directed=not args.undirected)
    Path(args.output).write_text(fileio.serialize_hypergraph(graph))
    print(f"wrote {args.output}: n={graph.n} k={graph.k} m={graph.edge_count}")
    return PASS


def _cmd_cover(args) -> int:
    graph, _ = _load_graph(args.input)
    cov = cover(graph)
    Path(args.output).write_text(fileio.serialize_hypergraph(cov.lifted))
    lines = [f"{ci}\t{bi}" for ci, bi in enumerate(cov.edge_map)]
    Path(args.map).write_text("\n".join(lines) + "\n")
    print(f"wrote {args.output} ({cov.lifted.edge_count} edges) and {args.map}")
    return PASS


def _sparsifier_report(result: sp.Sparsifier, args, domains) -> dict:
    certified = None
    if result.certified is not None:
        certified = {
            "mode": result.certified.mode,
            "max_margin": _fraction_str(result.certified.max_margin),
            "witness": list(result.certified.witness.values),
            "witness_q": result.certified.witness.q,
            "checked": result.certified.checked,
        }
    return {
        "base_edges": result.base_edge_count,
        "kept": len(result.kept),
        "kept_indices": list(result.kept),
        "scale": _fraction_str(result.scale),
        "epsilon": _fraction_str(result.epsilon),
        "attempts": result.attempts,
        "seed": args.seed,
        "strategy": args.strategy,
        "certify": args.certify,
        "domains": list(domains),
        "certified": certified,
    }


def _cmd_sparsify(args) -> int:
    graph, labels = _load_graph(args.input)
    domains = tuple(int(q) for q in args.domains.split(","))
    common = dict(
        seed=args.seed, strategy=args.strategy, certify=args.certify,
        domains=domains, constant=Fraction(args.constant),
        retry_limit=args.retry_limit, trials=args.trials,
    )
    if labels is not None:
        result, parts = sp.sparsify_per_label(graph, labels, args.epsilon, **common)
        report = _sparsifier_report(result, args, domains)
        report["labels"] = {
            name: {"kept": len(part.kept), "attempts": part.attempts} for name, part in parts.items()
        }
    else:
        result = sp.sparsify(graph, args.epsilon, **common)
        report = _sparsifier_report(result, args, domains)
    Path(args.output).write_text(fileio.serialize_sparsifier(graph, result))
    if args.report:
        Path(args.report).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    print(f"kept {len(result.kept)}/{result.base_edge_count} edges in {result.attempts} attempt(s)")
    return PASS


def _cmd_verify(args) -> int:
    graph, _ = _load_graph(args.graph)
    epsilon = sp.parse_epsilon(args.epsilon)
    predicate = _load_predicate(args.predicate, graph.k, args.q)
    sparsifier = fileio.parse_sparsifier(Path(args.sparsifier).read_text(), graph, epsilon)
    mode = verify.BOOLEAN if args.mode == "boolean" else verify.ALL_BUT_ONE
    spec = verify.BoundSpec(mode, epsilon)
    check_mode = "exhaustive" if args.certify == "exhaustive" else "sampled"
    report = verify.certify(
        graph, sparsifier, predicate, spec, mode=check_mode, trials=args.trials, seed=args.seed
    )
    feasible = verify.min_feasible_epsilon(
        graph, sparsifier, predicate, mode=check_mode, spec_mode=mode,
        trials=args.trials, seed=args.seed,
    )
    payload = {
        "verdict": "pass" if report.verdict else "fail",
        "max_margin": _fraction_str(report.max_margin),
        "witness": list(report.witness.values),
        "witness_q": report.witness.q,
        "checked": report.checked,
        "mode": report.mode,
        "bound": args.mode,
        "epsilon": _fraction_str(epsilon),
        "min_feasible_epsilon": "inf" if feasible is None else _fraction_str(feasible),
    }
    if args.json:
        Path(args.json).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    print(f"{payload['verdict']}: max margin {payload['max_margin']} over {report.checked} assignments")
    return PASS if report.verdict else FAIL


def _cmd_coeffs(args) -> int:
    k = args.k
    if k % 2 != 0:
        raise ValueError(f"reconstruction requires even k, got {k}")
    size = 1 << k
    bad = []
    for r in range(size - 1):
        vec = reconstruct_basis(k, r)
        target = tuple(1 if j == r else 0 for j in range(size))
        if vec != target or lambda_row_sum(k, r) != 0:
            bad.append(r)
    if bad:
        print(f"k={k}: reconstruction FAILED for r in {bad}")
        return FAIL
    print(f"k={k}: {size - 1}/{size - 1} basis vectors reconstructed exactly, coefficient sums all zero")
    return PASS


def _cmd_sweep(args) -> int:
    config = experiment.ExperimentConfig.from_toml(args.config)
    if args.output:
        config = dataclasses.replace(config, output=args.output)
    rows = experiment.run_sweep(config)
    Path(config.output).write_text(experiment.rows_to_csv(rows))
    failures = sum(1 for row in rows if row["error"] or row["verdict"] == "fail")
    print(f"wrote {config.output}: {len(rows)} rows, {failures} failures")
    return PASS


def _cmd_optimality(args) -> int:
    report = optimality.optimality_counterexample(args.n, args.q, seed=args.seed, samples=args.samples)
    if args.json:
        payload = {
            "n": report.n,
            "q": report.q,
            "mode": report.mode,
            "examined": report.examined,
            "all_violated": report.all_violated,
            "witnesses": [
                {
                    "kept": list(w.kept),
                    "case": w.case,
                    "assignment": list(w.assignment.values),
                    "deviation": _fraction_str(w.deviation),
                    "violated": w.violated,
                }
                for w in report.witnesses
            ],
        }
        Path(args.json).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    verdict = "every examined proper subgraph violated" if report.all_violated else "SOME SUBGRAPH SURVIVED"
    print(f"K_{report.n}, q={report.q}, {report.mode}: {report.examined} subgraphs examined; {verdict}")
    return PASS if report.all_violated else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="addsparse")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random hypergraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--undirected", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("cover", help="build the k-layer cover and its edge map")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(handler=_cmd_cover)

    p = sub.add_parser("sparsify", help="sparsify an instance for all predicates")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--constant", default="4")
    p.add_argument("--strategy", choices=sp.STRATEGIES, default="uniform")
    p.add_argument("--certify", choices=("exhaustive", "sample", "off"), default="exhaustive")
    p.add_argument("--domains", default="2", help="comma-separated domain sizes to certify")
    p.add_argument("--retry-limit", type=int, default=sp.DEFAULT_RETRY_LIMIT)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--output", required=True)
    p.add_argument("--report", default=None)
    p.set_defaults(handler=_cmd_sparsify)

    p = sub.add_parser("verify", help="check a sparsifier against the additive bound")
    p.add_argument("--graph", required=True)
    p.add_argument("--sparsifier", required=True)
    p.add_argument("--predicate", required=True, help="predicate file or builtin name")
    p.add_argument("--q", type=int, default=2, help="domain size for builtin predicates")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--mode", choices=("boolean", "all-but-one"), default="boolean")
    p.add_argument("--certify", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", default=None)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("coeffs", help="check the basis reconstruction identity")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.set_defaults(handler=_cmd_coeffs)

    p = sub.add_parser("sweep", help="run a configured experiment sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("optimality-demo", help="zero-bound counterexample on complete graphs")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=optimality.DEFAULT_SAMPLES)
    p.add_argument("--json", default=None)
    p.set_defaults(handler=_cmd_optimality)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except sp.CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return FAIL
    except (fileio.FormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
