"""Read a greedy-defense experiment CSV and draw the two result figures.

The input is the versioned row CSV written by the experiment harness
(schema_version 1).  Figure one stacks the three greedy outcome categories
per defender budget, grouped by rule; figure two plots the mean fraction of
random protected sets that defend the category-3 profiles.  Everything on
the figures is computed here from raw rows, never resampled, so plotted
numbers match CSV aggregates exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SCHEMA_VERSION = "1"
REQUIRED_COLUMNS = (
    "schema_version",
    "model",
    "rule",
    "k_d",
    "k_a",
    "profile_index",
    "seed",
    "category",
    "greedy2_fraction",
)
CATEGORY_LABELS = (
    "greedy defends",
    "no defense exists",
    "defense exists, greedy fails",
)
CATEGORY_COLORS = ("#4c9f70", "#7a7a7a", "#c65353")


class SchemaError(ValueError):
    def __init__(self, column: str, message: str):
        super().__init__(message)
        self.column = column


@dataclass(frozen=True)
class FigureSpec:
    input_csv: Path
    categories_out: Path
    salvage_out: Path
    model_label: str | None = None


@dataclass
class Aggregates:
    rules: list[str]
    k_d_values: list[int]
    # (rule, k_d) -> [category1, category2, category3] counts
    category_counts: dict[tuple[str, int], list[int]]
    # (rule, k_d) -> mean greedy2 fraction over category-3 rows, or None
    salvage_means: dict[tuple[str, int], float | None]


@dataclass
class RenderResult:
    categories_path: Path
    salvage_path: Path
    aggregates: Aggregates
    categories_figure: plt.Figure
    salvage_figure: plt.Figure


def load_rows(path: Path | str) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise SchemaError(column, f"input CSV is missing column {column!r}")
        rows = list(reader)
    if not rows:
        raise SchemaError("schema_version", "input CSV has no data rows")
    for row in rows:
        if row["schema_version"] != SCHEMA_VERSION:
            raise SchemaError(
                "schema_version",
                f"unsupported schema_version {row['schema_version']!r}; expected {SCHEMA_VERSION}",
            )
        if row["category"] not in ("1", "2", "3"):
            raise SchemaError("category", f"bad category value {row['category']!r}")
        if row["category"] == "3" and row["greedy2_fraction"] == "":
            raise SchemaError(
                "greedy2_fraction", "category-3 row is missing its greedy2_fraction"
            )
    return rows


def aggregate(rows: list[dict[str, str]]) -> Aggregates:
    rules: list[str] = []
    k_d_values: list[int] = []
    counts: dict[tuple[str, int], list[int]] = {}
    fractions: dict[tuple[str, int], list[float]] = {}
    for row in rows:
        rule = row["rule"]
        k_d = int(row["k_d"])
        if rule not in rules:
            rules.append(rule)
        if k_d not in k_d_values:
            k_d_values.append(k_d)
        key = (rule, k_d)
        counts.setdefault(key, [0, 0, 0])[int(row["category"]) - 1] += 1
        if row["category"] == "3":
            fractions.setdefault(key, []).append(float(row["greedy2_fraction"]))
    k_d_values.sort()
    means: dict[tuple[str, int], float | None] = {}
    for rule in rules:
        for k_d in k_d_values:
            values = fractions.get((rule, k_d))
            means[(rule, k_d)] = sum(values) / len(values) if values else None
    return Aggregates(rules, k_d_values, counts, means)


def _draw_categories(agg: Aggregates, label: str | None) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(8, 4.5))
    width = 0.8 / len(agg.rules)
    for r_index, rule in enumerate(agg.rules):
        xs = [
            k_index + (r_index - (len(agg.rules) - 1) / 2) * width
            for k_index in range(len(agg.k_d_values))
        ]
        bottoms = [0] * len(agg.k_d_values)
        for cat in range(3):
            heights = [
                agg.category_counts.get((rule, k_d), [0, 0, 0])[cat]
                for k_d in agg.k_d_values
            ]
            ax.bar(
                xs,
                heights,
                width=width,
                bottom=bottoms,
                color=CATEGORY_COLORS[cat],
                edgecolor="white",
                linewidth=0.4,
                label=CATEGORY_LABELS[cat] if r_index == 0 else None,
            )
            bottoms = [b + h for b, h in zip(bottoms, heights)]
        for x, k_index in zip(xs, range(len(agg.k_d_values))):
            ax.text(x, bottoms[k_index] * 1.01, rule, rotation=90, ha="center", va="bottom", fontsize=6)
    ax.set_xticks(range(len(agg.k_d_values)))
    ax.set_xticklabels([str(k) for k in agg.k_d_values])
    ax.set_xlabel("defender budget $k_d$")
    ax.set_ylabel("profiles")
    title = "Greedy defense outcomes per defender budget"
    if label:
        title += f" ({label})"
    ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    return fig


def _draw_salvage(agg: Aggregates, label: str | None) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(8, 3.2))
    for rule in agg.rules:
        ys = [agg.salvage_means[(rule, k_d)] for k_d in agg.k_d_values]
        ax.plot(
            range(len(agg.k_d_values)),
            [float("nan") if y is None else y for y in ys],
            marker="o",
            label=rule,
        )
    ax.set_xticks(range(len(agg.k_d_values)))
    ax.set_xticklabels([str(k) for k in agg.k_d_values])
    ax.set_xlabel("defender budget $k_d$")
    ax.set_ylabel("mean random-defense success")
    ax.set_ylim(bottom=0)
    title = "Random protection salvage rate on category-3 profiles"
    if label:
        title += f" ({label})"
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def render_figures(spec: FigureSpec) -> RenderResult:
    rows = load_rows(spec.input_csv)
    agg = aggregate(rows)
    categories_figure = _draw_categories(agg, spec.model_label)
    salvage_figure = _draw_salvage(agg, spec.model_label)
    categories_figure.savefig(spec.categories_out)
    salvage_figure.savefig(spec.salvage_out)
    return RenderResult(
        Path(spec.categories_out),
        Path(spec.salvage_out),
        agg,
        categories_figure,
        salvage_figure,
    )
