"""Deterministic line-figure renderer for scan CSV files."""

from .render import (
    CANVAS_DPI,
    CANVAS_SIZE,
    Y_AXIS_LABEL,
    FigureDataError,
    FigureSpec,
    read_scan,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "CANVAS_DPI",
    "CANVAS_SIZE",
    "FigureDataError",
    "FigureSpec",
    "Y_AXIS_LABEL",
    "read_scan",
    "render",
]
