"""Command line interface.

Exit codes: 0 success, 2 input parse failure, 3 invariant violation in a
parsed object, 4 unsupported parameters (grid too small, mode/dimension
mismatch, out-of-range values).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import io
from .core import (
    DEFAULT_RANK_TOL,
    computational_basis,
    computational_product,
    density_of,
    max_entangled,
    qubit_basis,
    qutrit_basis,
    rank_deficient_qutrit,
    schmidt,
)
from .entanglement import MixedFamily, concurrence, concurrence_monotones, criterion_check
from .errors import (
    InvalidConfig,
    InvalidDistribution,
    InvalidParameter,
    InvalidState,
    InvalidUnitary,
    ParseError,
    UnsupportedShape,
)
from .protocol import Direction, ProtocolConfig, run_protocol
from .work import AveragingMode, _separable_bound_detail, scan_family, work

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_VALIDATION = 4

DEFAULT_SEED = 42
DEFAULT_GRID = 64
REFERENCE_BOUND_D3 = 0.65  # documented reference point for the d = 3 bound

_MODES = {m.value: m for m in AveragingMode}


def _fmt(v: float) -> str:
    return io.format_float(v)


def _parse_preset(text: str):
    name, _, argstr = text.partition(":")
    try:
        if name == "omega_max":
            return max_entangled(3)
        if name == "phi_me":
            return max_entangled(2)
        if name == "omega_tilde":
            if argstr:
                parts = argstr.split(",")
                if len(parts) != 2:
                    raise ParseError(f"omega_tilde wants r,s, got {argstr!r}")
                r, s = (float(p) for p in parts)
            else:
                r = s = 1.0 / 3.0
            return rank_deficient_qutrit(r, s)
        if name == "prod00":
            dim = int(argstr) if argstr else 2
            return computational_product(0, 0, dim)
    except ValueError as exc:
        raise ParseError(f"bad preset arguments in {text!r}: {exc}") from exc
    raise ParseError(
        f"unknown preset {name!r} (expected omega_max, omega_tilde[:r,s], phi_me, prod00[:dim])"
    )


def _state_from_args(args):
    if getattr(args, "state", None):
        return io.read_state(args.state)
    if getattr(args, "preset", None):
        return _parse_preset(args.preset)
    raise ParseError("one of --state or --preset is required")


def _mode_from_args(args) -> AveragingMode | None:
    name = getattr(args, "mode", None)
    return _MODES[name] if name else None


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


# ---- subcommands ------------------------------------------------------------

def cmd_monotones(args) -> int:
    state = _state_from_args(args)
    sd = schmidt(state)
    mv = concurrence_monotones(state)
    rep = criterion_check(state, args.tolerance)
    payload = {
        "schmidt_coefficients": [float(c) for c in sd.coefficients],
        "monotones": {f"e_{k + 1}": v for k, v in enumerate(mv.raw)},
        "concurrence": concurrence(state),
        "g_concurrence": mv.g_concurrence,
        "criterion": {
            "passes": rep.passes,
            "schmidt_rank": rep.schmidt_rank,
            "dim": mv.dim,
            "column_gram_deviation": rep.column_gram_deviation,
        },
        "tolerance": rep.tolerance,
    }
    verdict = "PASS" if rep.passes else "FAIL"
    lines = [
        "schmidt_coefficients: " + " ".join(_fmt(c) for c in sd.coefficients),
        *[f"e_{k + 1}: {_fmt(v)}" for k, v in enumerate(mv.raw)],
        f"concurrence: {_fmt(payload['concurrence'])}",
        f"g_concurrence: {_fmt(mv.g_concurrence)}",
        f"criterion: {verdict} (schmidt_rank {rep.schmidt_rank}/{mv.dim}, "
        f"tolerance {_fmt(rep.tolerance)}, column_gram_deviation {_fmt(rep.column_gram_deviation)})",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_criterion(args) -> int:
    state = _state_from_args(args)
    rep = criterion_check(state, args.tolerance)
    payload = {
        "passes": rep.passes,
        "schmidt_rank": rep.schmidt_rank,
        "g_concurrence": rep.g_concurrence,
        "column_gram_deviation": rep.column_gram_deviation,
        "tolerance": rep.tolerance,
    }
    verdict = "PASS" if rep.passes else "FAIL"
    lines = [
        f"criterion: {verdict}",
        f"schmidt_rank: {rep.schmidt_rank}",
        f"g_concurrence: {_fmt(rep.g_concurrence)}",
        f"column_gram_deviation: {_fmt(rep.column_gram_deviation)}",
        f"tolerance: {_fmt(rep.tolerance)}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_work(args) -> int:
    state = _state_from_args(args)
    res = work(density_of(state), _mode_from_args(args), args.grid)
    payload = {
        "work": res.work,
        "mode": res.mode.name,
        "grid": res.grid_points,
        "converged": res.converged,
    }
    if args.out:
        _write_work_out(args.out, res)
        payload["out"] = args.out
    lines = [
        f"work: {_fmt(res.work)}",
        f"mode: {res.mode.name}",
        f"grid: {res.grid_points}",
        f"converged: {str(res.converged).lower()}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def _write_work_out(path: str, res) -> None:
    if path.endswith(".csv"):
        import csv

        zg = np.asarray(res.zeta_grid)
        with open(path, "w", newline="", encoding="utf-8") as fp:
            writer = csv.writer(fp)
            if zg.ndim == 1:
                writer.writerow(("theta_index", "zeta"))
                for i, z in enumerate(zg):
                    writer.writerow((i, _fmt(float(z))))
            else:
                writer.writerow(("theta_index", "phi_index", "zeta"))
                for i in range(zg.shape[0]):
                    for j in range(zg.shape[1]):
                        writer.writerow((i, j, _fmt(float(zg[i, j]))))
    else:
        doc = {
            "work": res.work,
            "mode": res.mode.name,
            "grid": res.grid_points,
            "converged": res.converged,
            "zeta_grid": np.asarray(res.zeta_grid).tolist(),
        }
        with open(path, "w", encoding="utf-8") as fp:
            json.dump(doc, fp, indent=2)
            fp.write("\n")


def cmd_bound(args) -> int:
    detail = _separable_bound_detail(
        args.dim, _mode_from_args(args), args.restarts, args.seed, args.grid
    )
    payload = {
        "bound": detail.value,
        "mode": detail.mode.name,
        "grid": detail.grid,
        "restarts": args.restarts,
        "seed": args.seed,
        "product_state_a": [[float(z.real), float(z.imag)] for z in detail.vector_a],
        "product_state_b": [[float(z.real), float(z.imag)] for z in detail.vector_b],
    }
    lines = [
        f"separable_bound: {_fmt(detail.value)}",
        f"mode: {detail.mode.name}",
        f"grid: {detail.grid}",
        f"restarts: {args.restarts}",
        f"seed: {args.seed}",
        "product_state_a: " + " ".join(_fmt(abs(z)) for z in detail.vector_a),
        "product_state_b: " + " ".join(_fmt(abs(z)) for z in detail.vector_b),
    ]
    if args.dim == 3:
        delta = detail.value - REFERENCE_BOUND_D3
        payload["reference"] = {"value": REFERENCE_BOUND_D3, "delta": delta}
        lines.append(f"reference: {_fmt(REFERENCE_BOUND_D3)} (delta {_fmt(delta)})")
    _emit(args, payload, lines)
    return EXIT_OK


def _protocol_basis(args, measured_dim: int):
    if args.theta is None:
        return computational_basis(measured_dim)
    if measured_dim == 2:
        return qubit_basis(args.theta)
    return qutrit_basis(args.theta, args.phi if args.phi is not None else 0.0)


def cmd_protocol(args) -> int:
    state = _state_from_args(args)
    direction = Direction.A_MEASURES if args.direction == "a" else Direction.B_MEASURES
    measured_dim = state.dim_a if direction is Direction.A_MEASURES else state.dim_b
    basis = _protocol_basis(args, measured_dim)
    config = ProtocolConfig(
        direction=direction,
        basis=basis,
        corrections=None,
        seed=args.seed,
        rounds=args.rounds,
    )
    stats = run_protocol(state, config)
    basis_doc = {"kind": "computational", "dim": basis.dim}
    if basis.params is not None:
        basis_doc = {"kind": f"rotated_{basis.dim}", "dim": basis.dim}
        basis_doc.update(
            {
                k: v
                for k, v in (
                    ("theta", basis.params.theta),
                    ("phi", basis.params.phi),
                    ("chi1", basis.params.chi1),
                    ("chi2", basis.params.chi2),
                )
                if v is not None
            }
        )
    report = {
        "config": {
            "direction": direction.value,
            "basis": basis_doc,
            "corrections": "auto",
            "success_fidelity_threshold": config.success_fidelity_threshold,
            "seed": config.seed,
            "rounds": config.rounds,
        },
        "stats": {
            "rounds_requested": stats.rounds_requested,
            "successes": stats.successes,
            "outcome_counts": list(stats.outcome_counts),
            "per_outcome_fidelity": [
                None if math.isnan(f) else f for f in stats.per_outcome_fidelity
            ],
            "success_ratio": stats.success_ratio,
            "feasible": stats.feasible,
        },
        "generator": {"name": stats.generator, "seed": stats.seed},
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            json.dump(report, fp, indent=2)
            fp.write("\n")
    lines = [
        f"rounds: {stats.rounds_requested}",
        f"successes: {stats.successes}",
        f"success_ratio: {_fmt(stats.success_ratio)}",
        "outcome_counts: " + " ".join(str(c) for c in stats.outcome_counts),
        "per_outcome_fidelity: "
        + " ".join("nan" if math.isnan(f) else _fmt(f) for f in stats.per_outcome_fidelity),
        f"feasible: {str(stats.feasible).lower()}",
        f"seed: {stats.seed}",
    ]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_fig(args) -> int:
    if args.steps < 2:
        raise InvalidParameter(f"need at least 2 steps, got {args.steps}")
    family = MixedFamily(args.family)
    mode = _mode_from_args(args) or AveragingMode.GRID_AVERAGE
    params = np.linspace(0.0, 1.0, args.steps)
    rows = scan_family(family, params, mode, args.grid)
    io.write_scan_csv(args.out, rows, mode, args.grid)
    print(f"wrote {args.out} ({len(rows)} rows, mode {mode.name}, grid {args.grid})")
    return EXIT_OK


# ---- parser -------------------------------------------------------------------

def _add_state_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", help="pure-state JSON file")
    p.add_argument(
        "--preset",
        help="omega_max | omega_tilde[:r,s] | phi_me | prod00[:dim]",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditwork",
        description="Entanglement monotones and LOCC work extraction for bipartite qudits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monotones", help="Schmidt spectrum, monotones, G, criterion")
    _add_state_args(p)
    p.add_argument("--tolerance", type=float, default=DEFAULT_RANK_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_monotones)

    p = sub.add_parser("criterion", help="full-Schmidt-rank resource check")
    _add_state_args(p)
    p.add_argument("--tolerance", type=float, default=DEFAULT_RANK_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("work", help="average work W over a measurement family")
    _add_state_args(p)
    p.add_argument("--mode", choices=sorted(_MODES))
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--out", help="write the zeta grid (.csv) or full result (.json)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_work)

    p = sub.add_parser("bound", help="maximum W over pure product states")
    p.add_argument("--dim", type=int, required=True, choices=(2, 3))
    p.add_argument("--mode", choices=sorted(_MODES))
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("protocol", help="simulate the measure-and-correct filter")
    _add_state_args(p)
    p.add_argument("--direction", choices=("a", "b"), default="a")
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--theta", type=float, help="measurement basis angle (default: computational)")
    p.add_argument("--phi", type=float, help="second basis angle for qutrits")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("fig", help="scan a mixture family to CSV")
    p.add_argument("family", choices=[f.value for f in MixedFamily])
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--mode", choices=sorted(_MODES))
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fig)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidState, InvalidDistribution, InvalidUnitary, InvalidConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvalidParameter, UnsupportedShape) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
