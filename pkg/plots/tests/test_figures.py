import csv
import subprocess
import sys
from pathlib import Path

import pytest

from votedefense_plots import FigureSpec, SchemaError, aggregate, load_rows, render_figures
from votedefense_plots.cli import main

HEADER = (
    "schema_version,model,rule,k_d,k_a,profile_index,seed,category,"
    "greedy2_fraction,greedy1_ms,classify_ms,greedy2_ms"
)


def write_csv(path, rows):
    path.write_text(HEADER + "\n" + "\n".join(rows) + "\n", encoding="utf-8")
    return path


def sample_csv(tmp_path):
    rows = [
        "1,uniform,plurality,2,10,0,11,1,,,,",
        "1,uniform,plurality,2,10,1,12,3,0.250000,,,",
        "1,uniform,plurality,3,9,0,11,2,,,,",
        "1,uniform,plurality,3,9,1,12,3,0.500000,,,",
        "1,uniform,borda,2,10,0,11,1,,,,",
        "1,uniform,borda,2,10,1,12,1,,,,",
        "1,uniform,borda,3,9,0,11,3,0.100000,,,",
        "1,uniform,borda,3,9,1,12,3,0.300000,,,",
    ]
    return write_csv(tmp_path / "rows.csv", rows)


def test_aggregate_counts_and_means(tmp_path):
    rows = load_rows(sample_csv(tmp_path))
    agg = aggregate(rows)
    assert agg.rules == ["plurality", "borda"]
    assert agg.k_d_values == [2, 3]
    assert agg.category_counts[("plurality", 2)] == [1, 0, 1]
    assert agg.category_counts[("plurality", 3)] == [0, 1, 1]
    assert agg.category_counts[("borda", 2)] == [2, 0, 0]
    assert agg.salvage_means[("plurality", 2)] == 0.25
    assert agg.salvage_means[("borda", 2)] is None
    assert agg.salvage_means[("borda", 3)] == pytest.approx(0.2)


def test_render_produces_both_figures(tmp_path):
    spec = FigureSpec(
        input_csv=sample_csv(tmp_path),
        categories_out=tmp_path / "categories.png",
        salvage_out=tmp_path / "salvage.svg",
        model_label="uniform",
    )
    result = render_figures(spec)
    assert result.categories_path.stat().st_size > 0
    assert result.salvage_path.stat().st_size > 0


def test_plotted_bars_equal_csv_aggregates(tmp_path):
    spec = FigureSpec(
        input_csv=sample_csv(tmp_path),
        categories_out=tmp_path / "categories.png",
        salvage_out=tmp_path / "salvage.png",
    )
    result = render_figures(spec)
    agg = result.aggregates
    ax = result.categories_figure.axes[0]
    heights = sorted(patch.get_height() for patch in ax.patches)
    expected = sorted(
        float(count)
        for rule in agg.rules
        for k_d in agg.k_d_values
        for count in agg.category_counts.get((rule, k_d), [0, 0, 0])
    )
    assert heights == expected
    ax2 = result.salvage_figure.axes[0]
    for line, rule in zip(ax2.lines, agg.rules):
        for k_index, y in enumerate(line.get_ydata()):
            mean = agg.salvage_means[(rule, agg.k_d_values[k_index])]
            if mean is None:
                assert y != y  # NaN marks missing buckets
            else:
                assert y == mean


def test_missing_column_is_named(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("schema_version,model,rule\n1,uniform,plurality\n", encoding="utf-8")
    with pytest.raises(SchemaError) as info:
        load_rows(path)
    assert info.value.column == "k_d"


def test_wrong_schema_version(tmp_path):
    path = write_csv(tmp_path / "v2.csv", ["2,uniform,plurality,2,10,0,11,1,,,,"])
    with pytest.raises(SchemaError) as info:
        load_rows(path)
    assert info.value.column == "schema_version"


def test_bad_category_value(tmp_path):
    path = write_csv(tmp_path / "cat.csv", ["1,uniform,plurality,2,10,0,11,7,,,,"])
    with pytest.raises(SchemaError) as info:
        load_rows(path)
    assert info.value.column == "category"


def test_cli_exit_codes(tmp_path, capsys):
    good = sample_csv(tmp_path)
    code = main(
        [
            "--input", str(good),
            "--out-categories", str(tmp_path / "c.png"),
            "--out-salvage", str(tmp_path / "s.png"),
        ]
    )
    assert code == 0
    bad = tmp_path / "bad.csv"
    bad.write_text("model,rule\nuniform,plurality\n", encoding="utf-8")
    code = main(
        [
            "--input", str(bad),
            "--out-categories", str(tmp_path / "c2.png"),
            "--out-salvage", str(tmp_path / "s2.png"),
        ]
    )
    assert code == 2
    err = capsys.readouterr().err
    assert "schema_version" in err


def test_single_row_csv_renders(tmp_path):
    path = write_csv(tmp_path / "one.csv", ["1,uniform,plurality,2,10,0,11,1,,,,"])
    spec = FigureSpec(
        input_csv=path,
        categories_out=tmp_path / "c.png",
        salvage_out=tmp_path / "s.png",
    )
    result = render_figures(spec)
    assert result.categories_path.exists() and result.salvage_path.exists()


def test_consistency_against_harness_csv(tmp_path):
    """Figure data equals aggregates of a CSV produced by the real harness."""
    out = tmp_path / "results.csv"
    run = subprocess.run(
        [
            sys.executable, "-m", "votedefense.cli", "experiment",
            "--model", "uniform", "--rule", "plurality,veto,borda",
            "--candidates", "5", "--voters", "600", "--classes", "12",
            "--profiles", "6", "--k-d", "2..10", "--seed", "31", "--out", str(out),
        ],
        capture_output=True,
        text=True,
    )
    assert run.returncode == 0, run.stderr
    result = render_figures(
        FigureSpec(
            input_csv=out,
            categories_out=tmp_path / "categories.png",
            salvage_out=tmp_path / "salvage.png",
            model_label="uniform",
        )
    )
    agg = result.aggregates
    # Per (rule, k_d) the three category counts must sum to the profile count.
    with open(out, newline="") as handle:
        rows = list(csv.DictReader(handle))
    profiles = len({r["profile_index"] for r in rows})
    assert profiles == 6
    for rule in agg.rules:
        for k_d in agg.k_d_values:
            assert sum(agg.category_counts[(rule, k_d)]) == profiles
    # Independent tally equals the aggregates used for the figures.
    for rule in agg.rules:
        for k_d in agg.k_d_values:
            matching = [r for r in rows if r["rule"] == rule and int(r["k_d"]) == k_d]
            for cat in (1, 2, 3):
                count = sum(1 for r in matching if r["category"] == str(cat))
                assert agg.category_counts[(rule, k_d)][cat - 1] == count
            fractions = [
                float(r["greedy2_fraction"]) for r in matching if r["category"] == "3"
            ]
            mean = agg.salvage_means[(rule, k_d)]
            if fractions:
                assert mean == sum(fractions) / len(fractions)
            else:
                assert mean is None
    assert (tmp_path / "categories.png").stat().st_size > 0
    assert (tmp_path / "salvage.png").stat().st_size > 0
