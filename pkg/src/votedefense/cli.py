"""Command-line interface.

Subcommands: ``solve-defense`` and ``solve-attack`` decide instances loaded
from election files (exit status 0 = yes, 1 = no, 2 = error), ``experiment``
runs the greedy-defense harness into CSV files, and ``gadget`` generates
reduction-instance election files with provenance sidecars.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import EnumerationLimitError, InstanceParams
from .experiment import (
    ExperimentConfig,
    run_experiment,
    summary_path,
    write_csv,
    ROW_FIELDS,
    SUMMARY_FIELDS,
)
from .gadgets import (
    GadgetInstance,
    gadget_clique,
    gadget_hitting_set,
    gadget_ksum,
    gadget_set_cover,
)
from .io import ElectionFormatError, load_election, save_election
from .oracle import DEFAULT_SUBSET_CAP
from .rules import resolve_rule
from .solvers import (
    solve_attack_exact,
    solve_defense_brute,
    solve_defense_fpt,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part != ""]


def _k_d_values(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(_int_list(text))


def _print_result(result, kind: str, timings: bool) -> int:
    print("YES" if result.feasible else "NO")
    if result.feasible:
        if kind == "defense":
            indices = sorted(result.certificate.protected)
            print("protected:", " ".join(map(str, indices)) if indices else "(none)")
        else:
            print("attacked:", " ".join(map(str, sorted(result.certificate.deleted))))
    stats = f"stats: nodes={result.stats.nodes} oracle_calls={result.stats.oracle_calls}"
    if timings:
        stats += f" seconds={result.stats.seconds:.3f}"
    print(stats)
    return EXIT_YES if result.feasible else EXIT_NO


def _cmd_solve(args, kind: str) -> int:
    election = load_election(args.election)
    rule = resolve_rule(args.rule, election.num_candidates)
    params = InstanceParams(k_a=args.k_a, k_d=args.k_d)
    if kind == "defense":
        if args.solver == "brute":
            result = solve_defense_brute(election, rule, params, cap=args.cap)
        else:
            result = solve_defense_fpt(election, rule, params)
    else:
        result = solve_attack_exact(election, rule, params, cap=args.cap)
    return _print_result(result, kind, args.timings)


def _cmd_experiment(args) -> int:
    if args.model.startswith("two-top:"):
        a, b = _int_list(args.model[len("two-top:") :])
        model = "two_frontrunner"
        top_pair: tuple[int, int] | None = (a, b)
    elif args.model == "uniform":
        model, top_pair = "uniform", None
    else:
        raise ValueError(f"unknown model {args.model!r}")
    rules = tuple(spec for chunk in args.rule for spec in chunk.split(","))
    if not rules:
        raise ValueError("at least one --rule is required")
    config = ExperimentConfig(
        model=model,
        rules=rules,
        m=args.candidates,
        n=args.voters,
        g=args.classes,
        profiles=args.profiles,
        k_d_values=_k_d_values(args.k_d),
        k_a=args.k_a,
        seed=args.seed,
        greedy2_trials=args.trials,
        top_pair=top_pair,
        timings=args.timings,
    )
    rows, summary = run_experiment(config, jobs=args.jobs)
    write_csv(rows, ROW_FIELDS, args.out)
    write_csv(summary, SUMMARY_FIELDS, summary_path(args.out))
    print(f"wrote {len(rows)} rows to {args.out}")
    print(f"wrote {len(summary)} summary rows to {summary_path(args.out)}")
    return EXIT_YES


def _parse_sets(text: str) -> list[list[str]]:
    if text == "":
        return []
    return [[e for e in part.split(",") if e != ""] for part in text.split(";")]


def _parse_edges(text: str) -> list[tuple[int, int]]:
    edges = []
    if text:
        for part in text.split(","):
            u, v = part.split("-")
            edges.append((int(u), int(v)))
    return edges


def _load_edge_file(path: str) -> list[tuple[int, int]]:
    edges = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    return edges


def _write_gadget(instance: GadgetInstance, out: str) -> int:
    prefix = Path(out)
    election_path = prefix.with_suffix(".json")
    meta_path = prefix.with_suffix(".meta.json")
    save_election(instance.election, election_path)
    meta = {
        "problem": instance.problem,
        "rule": instance.rule.describe(),
        "k_a": instance.params.k_a,
        "k_d": instance.params.k_d,
        "expected_answer": instance.expected_answer,
        "provenance": instance.provenance,
    }
    meta_path.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {election_path} and {meta_path}")
    expected = instance.expected_answer
    print(f"expected: {'unknown' if expected is None else ('yes' if expected else 'no')}")
    print(f"budgets: k_a={instance.params.k_a} k_d={instance.params.k_d}")
    return EXIT_YES


def _cmd_gadget(args) -> int:
    if args.family == "ksum":
        instance = gadget_ksum(_int_list(args.weights), args.k, args.target, args.rule)
    elif args.family == "hittingset":
        instance = gadget_hitting_set(
            args.universe.split(","), _parse_sets(args.sets), args.k, args.rule
        )
    elif args.family == "setcover":
        instance = gadget_set_cover(
            args.universe.split(","), _parse_sets(args.sets), args.k, args.rule
        )
    else:
        edges = _load_edge_file(args.graph) if args.graph else _parse_edges(args.edges)
        vertices = args.vertices
        if vertices is None:
            vertices = max((max(u, v) for u, v in edges), default=-1) + 1
        instance = gadget_clique(vertices, edges, args.k, args.rule)
    return _write_gadget(instance, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votedefense",
        description="Solvers and experiments for protecting group-structured elections from deletion attacks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for kind in ("defense", "attack"):
        p = sub.add_parser(
            f"solve-{kind}",
            help=f"decide the optimal {kind} problem for an election file",
        )
        p.add_argument("--election", required=True, help="path to an election JSON file")
        p.add_argument("--rule", required=True, help="plurality|veto|borda|condorcet|vector:a1,a2,...")
        p.add_argument("--k-a", dest="k_a", type=int, required=True)
        p.add_argument("--k-d", dest="k_d", type=int, required=True)
        p.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP)
        p.add_argument("--timings", action="store_true", help="include wall time in stats")
        if kind == "defense":
            p.add_argument("--solver", choices=("fpt", "brute"), default="fpt")
        p.set_defaults(func=lambda a, kind=kind: _cmd_solve(a, kind))

    p = sub.add_parser("experiment", help="run the greedy-defense experiment harness")
    p.add_argument("--model", default="uniform", help="uniform | two-top:a,b")
    p.add_argument("--rule", action="append", required=True, help="rule spec; repeat or comma-separate")
    p.add_argument("--candidates", type=int, default=5)
    p.add_argument("--voters", type=int, default=12000)
    p.add_argument("--classes", type=int, default=12)
    p.add_argument("--profiles", type=int, default=1000)
    p.add_argument("--k-d", dest="k_d", default="2..10", help="single value, list, or range lo..hi")
    p.add_argument("--k-a", dest="k_a", type=int, default=None, help="fixed attacker budget; default classes - k_d")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100, help="random protections per category-3 instance")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="fill wall-clock columns (breaks byte-identical reruns)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("gadget", help="generate a reduction-instance election with provenance")
    gsub = p.add_subparsers(dest="family", required=True)

    g = gsub.add_parser("ksum", help="k-sum to 3-candidate defense")
    g.add_argument("--weights", required=True, help="comma-separated positive integers")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--target", type=int, required=True)

    g = gsub.add_parser("hittingset", help="hitting set to defense (defender budget)")
    g.add_argument("--universe", required=True, help="comma-separated elements")
    g.add_argument("--sets", required=True, help="semicolon-separated comma lists")
    g.add_argument("--k", type=int, required=True)

    g = gsub.add_parser("setcover", help="set cover to defense (attacker budget)")
    g.add_argument("--universe", required=True)
    g.add_argument("--sets", required=True)
    g.add_argument("--k", type=int, required=True)

    g = gsub.add_parser("clique", help="clique to attack")
    g.add_argument("--graph", help="edge-list file, one 'u v' pair per line")
    g.add_argument("--edges", default="", help="inline edges like 0-1,1-2")
    g.add_argument("--vertices", type=int, default=None)
    g.add_argument("--k", type=int, required=True)

    for g in gsub.choices.values():
        g.add_argument("--rule", default="plurality")
        g.add_argument("--out", required=True, help="output prefix for .json and .meta.json")
    p.set_defaults(func=_cmd_gadget)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ElectionFormatError, EnumerationLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
