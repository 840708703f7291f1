"""Experiment harness: greedy defense performance over generated profiles.

For every (profile, rule, defender budget) combination the harness runs the
frequency-greedy defense, classifies its outcome into the three optimality
categories, and, when the greedy failed although a defense exists, measures
how often uniformly random protected sets succeed.  Results go to a row CSV
plus an aggregate summary CSV.

Every profile draws its randomness from (master seed, profile index), so
output is identical whether profiles run serially or across workers.  Wall
clock columns are left blank unless explicitly requested: byte-identical
reruns are part of the output contract.
"""

from __future__ import annotations

import csv
import multiprocessing
import time
from dataclasses import dataclass
from pathlib import Path

from .core import InstanceParams
from .gen import GenConfig, derive_profile_seed, generate
from .heuristics import GreedyCategory, greedy1, greedy2
from .rules import resolve_rule

CSV_SCHEMA_VERSION = "1"

ROW_FIELDS = [
    "schema_version",
    "model",
    "rule",
    "k_d",
    "k_a",
    "profile_index",
    "seed",
    "category",
    "greedy2_fraction",
    "greedy1_ms",
    "classify_ms",
    "greedy2_ms",
]

SUMMARY_FIELDS = [
    "schema_version",
    "model",
    "rule",
    "k_d",
    "k_a",
    "profiles",
    "category1",
    "category2",
    "category3",
    "mean_greedy2_fraction",
]


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    rules: tuple[str, ...]
    m: int
    n: int
    g: int
    profiles: int
    k_d_values: tuple[int, ...]
    k_a: int | None  # None: replication mode, k_a = g - k_d
    seed: int
    greedy2_trials: int = 100
    top_pair: tuple[int, int] | None = None
    timings: bool = False

    def attacker_budget(self, k_d: int) -> int:
        return self.k_a if self.k_a is not None else self.g - k_d


def _model_label(config: ExperimentConfig) -> str:
    if config.model == "two_frontrunner":
        a, b = config.top_pair if config.top_pair else (0, 1)
        return f"two-top:{a},{b}"
    return config.model


def run_profile(config: ExperimentConfig, profile_index: int) -> list[dict[str, str]]:
    """All rows for one generated profile, in (rule, k_d) order."""
    profile_seed = derive_profile_seed(config.seed, profile_index)
    top_pair = config.top_pair
    if config.model == "two_frontrunner" and top_pair is None:
        top_pair = (0, 1)
    election = generate(
        GenConfig(config.m, config.n, config.g, config.model, profile_seed, top_pair)
    )
    rows = []
    for rule_index, rule_spec in enumerate(config.rules):
        rule = resolve_rule(rule_spec, config.m)
        for k_d in config.k_d_values:
            k_a = config.attacker_budget(k_d)
            params = InstanceParams(k_a=k_a, k_d=k_d)
            t0 = time.perf_counter()
            outcome = greedy1(election, rule, params)
            t1 = time.perf_counter()
            fraction = ""
            g2_ms = ""
            if outcome.category == GreedyCategory.DEFENSE_EXISTS:
                g2_seed = derive_profile_seed(
                    profile_seed, 10_000 + rule_index * 100 + k_d
                )
                t2 = time.perf_counter()
                value = greedy2(
                    election, rule, params, trials=config.greedy2_trials, seed=g2_seed
                )
                fraction = f"{value:.6f}"
                if config.timings:
                    g2_ms = f"{(time.perf_counter() - t2) * 1000:.3f}"
            rows.append(
                {
                    "schema_version": CSV_SCHEMA_VERSION,
                    "model": _model_label(config),
                    "rule": rule_spec,
                    "k_d": str(k_d),
                    "k_a": str(k_a),
                    "profile_index": str(profile_index),
                    "seed": str(profile_seed),
                    "category": str(int(outcome.category)),
                    "greedy2_fraction": fraction,
                    "greedy1_ms": f"{(t1 - t0) * 1000:.3f}" if config.timings else "",
                    "classify_ms": "",
                    "greedy2_ms": g2_ms,
                }
            )
    return rows


def run_experiment(
    config: ExperimentConfig, jobs: int = 1
) -> tuple[list[dict[str, str]], list[dict[str, str]]]:
    indices = list(range(config.profiles))
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            per_profile = pool.starmap(
                run_profile, [(config, i) for i in indices], chunksize=1
            )
    else:
        per_profile = [run_profile(config, i) for i in indices]
    rows = [row for profile_rows in per_profile for row in profile_rows]
    return rows, summarize_rows(rows)


def summarize_rows(rows: list[dict[str, str]]) -> list[dict[str, str]]:
    """Aggregate category counts and mean greedy2 fraction per (rule, k_d)."""
    buckets: dict[tuple[str, str], dict] = {}
    order: list[tuple[str, str]] = []
    for row in rows:
        key = (row["rule"], row["k_d"])
        if key not in buckets:
            buckets[key] = {
                "model": row["model"],
                "k_a": row["k_a"],
                "counts": [0, 0, 0],
                "fractions": [],
            }
            order.append(key)
        bucket = buckets[key]
        bucket["counts"][int(row["category"]) - 1] += 1
        if row["greedy2_fraction"]:
            bucket["fractions"].append(float(row["greedy2_fraction"]))
    summary = []
    for rule, k_d in order:
        bucket = buckets[(rule, k_d)]
        fractions = bucket["fractions"]
        mean = f"{sum(fractions) / len(fractions):.6f}" if fractions else ""
        summary.append(
            {
                "schema_version": CSV_SCHEMA_VERSION,
                "model": bucket["model"],
                "rule": rule,
                "k_d": k_d,
                "k_a": bucket["k_a"],
                "profiles": str(sum(bucket["counts"])),
                "category1": str(bucket["counts"][0]),
                "category2": str(bucket["counts"][1]),
                "category3": str(bucket["counts"][2]),
                "mean_greedy2_fraction": mean,
            }
        )
    return summary


def write_csv(rows: list[dict[str, str]], fields: list[str], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def summary_path(out_path: str | Path) -> Path:
    out = Path(out_path)
    return out.with_name(out.stem + ".summary" + (out.suffix or ".csv"))
