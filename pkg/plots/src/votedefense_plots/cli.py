"""Command-line entry point: CSV in, two figure files out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FigureSpec, SchemaError, render_figures


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votedefense-plots",
        description="Render a greedy-defense experiment CSV into the category and salvage figures.",
    )
    parser.add_argument("--input", required=True, help="experiment row CSV (schema_version 1)")
    parser.add_argument("--model-label", default=None, help="label appended to figure titles")
    parser.add_argument("--out-categories", required=True, help="output image (.png or .svg)")
    parser.add_argument("--out-salvage", required=True, help="output image (.png or .svg)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        input_csv=Path(args.input),
        categories_out=Path(args.out_categories),
        salvage_out=Path(args.out_salvage),
        model_label=args.model_label,
    )
    try:
        result = render_figures(spec)
    except SchemaError as exc:
        print(f"error: column {exc.column!r}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {result.categories_path} and {result.salvage_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
