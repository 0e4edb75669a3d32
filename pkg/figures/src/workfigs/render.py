"""Render line figures from scan CSV files.

The input is a CSV with a header row, as produced by the ``quditwork fig``
subcommand: one numeric parameter column plus one or more numeric value
columns, optionally accompanied by ``mode``/``grid`` columns describing how
the values were computed.  The output is a fixed-size SVG or PNG in which
each requested value column is drawn against the parameter column.

Rendering is a pure function of the input bytes: the same CSV always yields
the same plotted series (and, for SVG, the same output bytes).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import matplotlib
from matplotlib.figure import Figure

#: Canvas geometry is fixed so that output images are comparable across runs.
CANVAS_SIZE = (6.4, 4.4)
CANVAS_DPI = 100

#: Vertical axis label; the figures always show work and/or entanglement.
Y_AXIS_LABEL = "W, G"

#: Legend names for the columns the scan CSV produces.
SERIES_LABELS = {"work": "W", "g_concurrence": "G"}

#: (linestyle, marker) per series position, cycled if more columns are given.
_SERIES_STYLES = (("-", "o"), ("--", "s"), (":", "^"), ("-.", "D"))

#: Hash salt pinned so SVG element ids do not vary between runs.
_SVG_HASHSALT = "workfigs"


class FigureDataError(ValueError):
    """The input CSV cannot be plotted (unreadable, empty, or missing data)."""


@dataclass(frozen=True)
class FigureSpec:
    """Everything needed to render one figure.

    ``y_columns`` are drawn in order against ``x_column``; every named column
    must exist in the CSV header.  ``output`` chooses the image format by
    extension (``.svg`` or ``.png``).  ``xlabel`` is the horizontal axis
    label (the vertical label is always ``W, G``).
    """

    input_csv: str | Path
    output: str | Path
    x_column: str = "param"
    y_columns: Sequence[str] = field(default=("work", "g_concurrence"))
    title: str = ""
    xlabel: str = "x"


def read_scan(path: str | Path) -> tuple[list[dict[str, str]], list[str]]:
    """Read a scan CSV; return (rows, header columns).

    Raises FigureDataError if the file is missing, unreadable as CSV, has no
    header, or has no data rows.
    """
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            fieldnames = reader.fieldnames
            rows = list(reader)
    except OSError as exc:
        raise FigureDataError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except (csv.Error, UnicodeDecodeError) as exc:
        raise FigureDataError(f"{path} is not a valid CSV file: {exc}") from exc
    if not fieldnames:
        raise FigureDataError(f"{path} is empty: no header row")
    if not rows:
        raise FigureDataError(f"{path} has a header but no data rows")
    return rows, list(fieldnames)


def _column(rows: list[dict[str, str]], name: str, path: str | Path) -> list[float]:
    values = []
    for index, row in enumerate(rows, start=2):  # header is line 1
        cell = row.get(name)
        if cell is None:
            raise FigureDataError(f"{path} line {index}: missing value for column {name!r}")
        try:
            values.append(float(cell))
        except ValueError as exc:
            raise FigureDataError(
                f"{path} line {index}: column {name!r} value {cell!r} is not a number"
            ) from exc
    return values


def _mode_annotation(rows: list[dict[str, str]], fieldnames: list[str]) -> str:
    parts = []
    for column in ("mode", "grid"):
        if column in fieldnames:
            seen = list(dict.fromkeys(row[column] for row in rows if row.get(column)))
            if seen:
                parts.append(f"{column} {'/'.join(seen)}")
    return ", ".join(parts)


def render(spec: FigureSpec) -> Figure:
    """Render ``spec`` and save it to ``spec.output``; return the figure.

    The returned figure's axes hold one line per entry of ``spec.y_columns``,
    in order, whose x/y data are exactly the parsed CSV values.
    """
    rows, fieldnames = read_scan(spec.input_csv)
    if not spec.y_columns:
        raise FigureDataError("at least one y column is required")
    for name in [spec.x_column, *spec.y_columns]:
        if name not in fieldnames:
            raise FigureDataError(
                f"{spec.input_csv}: column {name!r} not found (have: {', '.join(fieldnames)})"
            )

    x = _column(rows, spec.x_column, spec.input_csv)

    fig = Figure(figsize=CANVAS_SIZE, dpi=CANVAS_DPI)
    ax = fig.add_subplot(111)
    for position, name in enumerate(spec.y_columns):
        linestyle, marker = _SERIES_STYLES[position % len(_SERIES_STYLES)]
        ax.plot(
            x,
            _column(rows, name, spec.input_csv),
            linestyle=linestyle,
            marker=marker,
            markersize=4,
            label=SERIES_LABELS.get(name, name),
        )
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(Y_AXIS_LABEL)
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)

    annotation = _mode_annotation(rows, fieldnames)
    if annotation:
        ax.text(
            0.98,
            0.02,
            annotation,
            transform=ax.transAxes,
            ha="right",
            va="bottom",
            fontsize=8,
            color="0.35",
        )

    output = Path(spec.output)
    is_svg = output.suffix.lower() == ".svg"
    with matplotlib.rc_context({"svg.hashsalt": _SVG_HASHSALT}):
        # A null Date keeps SVG output byte-identical across runs.
        fig.savefig(output, metadata={"Date": None} if is_svg else None)
    return fig


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_fig",
        description="Render a work/entanglement scan CSV as a line figure.",
    )
    parser.add_argument("--in", dest="input_csv", required=True, help="input scan CSV")
    parser.add_argument("--out", dest="output", required=True, help="output .svg or .png")
    parser.add_argument("--x-column", default="param", help="parameter column (default: param)")
    parser.add_argument(
        "--y-columns",
        default="work,g_concurrence",
        help="comma-separated value columns (default: work,g_concurrence)",
    )
    parser.add_argument("--title", default="", help="figure title (default: none)")
    parser.add_argument("--xlabel", default="x", help="horizontal axis label (default: x)")
    args = parser.parse_args(argv)

    y_columns = tuple(name.strip() for name in args.y_columns.split(",") if name.strip())
    spec = FigureSpec(
        input_csv=args.input_csv,
        output=args.output,
        x_column=args.x_column,
        y_columns=y_columns,
        title=args.title,
        xlabel=args.xlabel,
    )
    try:
        render(spec)
    except FigureDataError as exc:
        print(f"render_fig: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.output} ({len(y_columns)} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
