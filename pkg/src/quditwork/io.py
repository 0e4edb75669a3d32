"""JSON state files and scan CSV output.

State file schema: {"dimA": int, "dimB": int, "amplitudes": [[re, im], ...]}
with amplitudes flat in row-major order (index i*dimB + j). Density files use
{"dim": int, "matrix": [[re, im], ...]} in the same order. NaN and infinity
tokens are rejected.
"""
from __future__ import annotations

import csv
import json

import numpy as np

from .core import DensityMatrix, PureState, density_matrix, pure_state_from_amplitudes
from .errors import ParseError
from .work import AveragingMode, FamilyScanRow

SCAN_CSV_HEADER = ("param", "g_concurrence", "work", "mode", "grid")


def format_float(v: float) -> str:
    return f"{v:.10g}"


def _reject_constant(token: str):
    raise ParseError(f"non-finite number {token!r} is not allowed")


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fp:
            return json.load(fp, parse_constant=_reject_constant)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from exc


def _complex_entries(raw, count: int, path: str, key: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != count:
        raise ParseError(f"{path}: {key} must be a list of {count} [re, im] pairs")
    out = np.empty(count, dtype=complex)
    for k, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) for x in pair)
        ):
            raise ParseError(f"{path}: {key}[{k}] must be a [re, im] pair of numbers")
        if not all(np.isfinite(x) for x in pair):
            raise ParseError(f"{path}: {key}[{k}] is not finite")
        out[k] = complex(pair[0], pair[1])
    return out


def read_state(path: str) -> PureState:
    """Parse a pure-state JSON file; normalization is applied if needed."""
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    try:
        dim_a, dim_b = doc["dimA"], doc["dimB"]
    except KeyError as exc:
        raise ParseError(f"{path}: missing key {exc}") from exc
    if not isinstance(dim_a, int) or not isinstance(dim_b, int) or dim_a < 1 or dim_b < 1:
        raise ParseError(f"{path}: dimA and dimB must be positive integers")
    if "amplitudes" not in doc:
        raise ParseError(f"{path}: missing key 'amplitudes'")
    amps = _complex_entries(doc["amplitudes"], dim_a * dim_b, path, "amplitudes")
    return pure_state_from_amplitudes(dim_a, dim_b, amps)


def write_state(state: PureState, path: str) -> None:
    flat = state.amplitudes.reshape(-1)
    doc = {
        "dimA": state.dim_a,
        "dimB": state.dim_b,
        "amplitudes": [[float(z.real), float(z.imag)] for z in flat],
    }
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(doc, fp, indent=2)
        fp.write("\n")


def read_density(path: str) -> DensityMatrix:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"{path}: dim must be a positive integer")
    if "matrix" not in doc:
        raise ParseError(f"{path}: missing key 'matrix'")
    entries = _complex_entries(doc["matrix"], dim * dim, path, "matrix")
    return density_matrix(entries.reshape(dim, dim))


def write_scan_csv(path: str, rows: list[FamilyScanRow], mode: AveragingMode, grid: int) -> None:
    """Family scan table with the schema param,g_concurrence,work,mode,grid."""
    with open(path, "w", newline="", encoding="utf-8") as fp:
        writer = csv.writer(fp)
        writer.writerow(SCAN_CSV_HEADER)
        for row in rows:
            writer.writerow(
                [
                    format_float(row.param),
                    format_float(row.g_concurrence),
                    format_float(row.work),
                    mode.name,
                    grid,
                ]
            )
