"""LOCC filter simulation: measure one side, steer the partner to a reference.

One party measures its subsystem in a fixed basis and announces the outcome;
the other applies a per-outcome correction unitary intended to land its
collapsed state on the reference vector |0>. A round succeeds when the
corrected state's fidelity with the reference clears the threshold. The
protocol covers every outcome exactly when the state has full Schmidt rank.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    DEFAULT_RANK_TOL,
    MeasurementBasis,
    PureState,
    _fix_global_phase,
    schmidt,
    unitarity_deviation,
)
from .errors import InvalidConfig, InvalidParameter, InvalidUnitary

GENERATOR_NAME = "philox"


class Direction(Enum):
    A_MEASURES = "a"
    B_MEASURES = "b"


@dataclass(frozen=True, eq=False)
class CorrectionSet:
    """Per-outcome steering unitaries for the non-measuring party."""

    dim: int
    unitaries: tuple[np.ndarray, ...]
    reference_index: int = 0
    uncovered: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.unitaries) != self.dim:
            raise InvalidConfig(
                f"need {self.dim} correction unitaries, got {len(self.unitaries)}"
            )
        if not (0 <= self.reference_index < self.dim):
            raise InvalidConfig(f"reference index {self.reference_index} outside dim {self.dim}")
        for k, u in enumerate(self.unitaries):
            u = np.asarray(u, dtype=complex)
            if u.shape != (self.dim, self.dim):
                raise InvalidConfig(f"correction {k} has shape {u.shape}, expected square dim {self.dim}")
            dev = unitarity_deviation(u)
            if dev > 1e-10:
                raise InvalidUnitary(f"correction {k} deviates from unitarity by {dev:.3e}")


@dataclass(frozen=True, eq=False)
class ProtocolConfig:
    direction: Direction
    basis: MeasurementBasis
    corrections: CorrectionSet | None = None  # None: build them from the state
    success_fidelity_threshold: float = 1.0 - 1e-6
    seed: int = 42
    rounds: int = 100_000


@dataclass(frozen=True, eq=False)
class ProtocolStats:
    rounds_requested: int
    successes: int
    outcome_counts: tuple[int, ...]
    per_outcome_fidelity: tuple[float, ...]  # nan where the outcome has ~zero probability
    success_ratio: float
    feasible: bool
    generator: str
    seed: int


# ---- corrections -----------------------------------------------------------------

def _steering_unitary(b: np.ndarray, reference_index: int) -> np.ndarray:
    """Unitary mapping the unit vector b exactly onto the reference basis vector."""
    dim = b.size
    ref = np.zeros(dim, dtype=complex)
    ref[reference_index] = 1.0
    overlap = b[reference_index]
    phase = overlap / abs(overlap) if abs(overlap) > 1e-12 else 1.0
    w = b - phase * ref
    wn = float(np.real(w.conj() @ w))
    if wn < 1e-24:
        householder = np.eye(dim, dtype=complex)
    else:
        householder = np.eye(dim, dtype=complex) - 2.0 * np.outer(w, w.conj()) / wn
    # householder sends b to phase*ref; cancel that phase on the reference axis
    cancel = np.eye(dim, dtype=complex) + (np.conj(phase) - 1.0) * np.outer(ref, ref.conj())
    return _fix_global_phase(cancel @ householder)


def _outcome_table(state: PureState, basis: MeasurementBasis, direction: Direction):
    """Outcome probabilities and collapsed partner vectors for the measured side."""
    a = state.amplitudes if direction is Direction.A_MEASURES else state.amplitudes.T
    if basis.dim != a.shape[0]:
        raise InvalidConfig(
            f"basis dimension {basis.dim} does not match the measured side {a.shape[0]}"
        )
    rows = basis.vectors.conj() @ a  # row i: unnormalized partner state for outcome i
    probs = np.sum(np.abs(rows) ** 2, axis=1)
    return probs, rows


def auto_corrections(
    state: PureState,
    basis: MeasurementBasis,
    reference_index: int = 0,
    direction: Direction = Direction.A_MEASURES,
    tol: float = DEFAULT_RANK_TOL,
) -> CorrectionSet:
    """Steering unitaries for each outcome with probability above ``tol``.

    Outcomes that (numerically) never occur get the identity and are listed in
    the result's ``uncovered`` field.
    """
    probs, rows = _outcome_table(state, basis, direction)
    partner_dim = rows.shape[1]
    if not (0 <= reference_index < partner_dim):
        raise InvalidParameter(f"reference index {reference_index} outside dim {partner_dim}")
    unitaries, uncovered = [], []
    for i, p in enumerate(probs):
        if p > tol:
            unitaries.append(_steering_unitary(rows[i] / np.sqrt(p), reference_index))
        else:
            unitaries.append(np.eye(partner_dim, dtype=complex))
            uncovered.append(i)
    return CorrectionSet(
        dim=partner_dim,
        unitaries=tuple(unitaries),
        reference_index=reference_index,
        uncovered=tuple(uncovered),
    )


def qutrit_shift_corrections() -> CorrectionSet:
    """Explicit qutrit set {identity, shift down, shift up} steering |i> to |0>.

    The down shift sends |1> -> |0> and the up shift sends |2> -> |0>, so the
    set filters any state whose collapse lands on the computational vectors.
    """
    down = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
    return CorrectionSet(
        dim=3,
        unitaries=(np.eye(3, dtype=complex), down, down.T.copy()),
        reference_index=0,
    )


def nonunitary_filter_example() -> tuple[np.ndarray, float]:
    """A filter candidate that fails the unitarity check, with its deviation.

    Kept as a diagnostics vector: its columns are not orthonormal, so building
    a CorrectionSet from it raises InvalidUnitary.
    """
    m = np.array([[0, 0, 1], [1, 1, 0], [0, 1, -1]], dtype=complex)
    return m, unitarity_deviation(m)


# ---- simulation -------------------------------------------------------------------

def feasibility(state: PureState, tolerance: float = DEFAULT_RANK_TOL) -> bool:
    """True when measuring in the Schmidt basis covers all d outcomes.

    The outcome probabilities of a Schmidt-basis measurement are the squared
    Schmidt coefficients, so this is exactly the full-rank condition.
    """
    if tolerance <= 0.0:
        raise InvalidParameter(f"tolerance must be positive, got {tolerance}")
    coeffs = schmidt(state).coefficients
    return bool(np.all(coeffs * coeffs > tolerance))


def run_protocol(state: PureState, config: ProtocolConfig) -> ProtocolStats:
    """Monte Carlo rounds of the measure-announce-correct protocol.

    Sampling uses a Philox generator seeded by ``config.seed``; round k
    consumes the k-th uniform variate, so totals are independent of batching.
    """
    if config.rounds < 1:
        raise InvalidConfig(f"rounds must be positive, got {config.rounds}")
    if not (0.0 < config.success_fidelity_threshold <= 1.0):
        raise InvalidConfig(
            f"success threshold must be in (0, 1], got {config.success_fidelity_threshold}"
        )
    probs, rows = _outcome_table(state, config.basis, config.direction)
    partner_dim = rows.shape[1]
    corrections = config.corrections
    if corrections is None:
        corrections = auto_corrections(
            state, config.basis, direction=config.direction
        )
    if corrections.dim != partner_dim:
        raise InvalidConfig(
            f"corrections act on dim {corrections.dim}, partner side has dim {partner_dim}"
        )
    if len(corrections.unitaries) != probs.size:
        raise InvalidConfig(
            f"{probs.size} outcomes but {len(corrections.unitaries)} corrections"
        )

    cover_tol = DEFAULT_RANK_TOL
    fidelities = np.full(probs.size, math.nan)
    for i, p in enumerate(probs):
        if p > cover_tol:
            corrected = corrections.unitaries[i] @ (rows[i] / np.sqrt(p))
            fidelities[i] = float(np.abs(corrected[corrections.reference_index]) ** 2)

    rng = np.random.Generator(np.random.Philox(config.seed))
    edges = np.cumsum(probs / probs.sum())
    outcomes = np.searchsorted(edges, rng.random(config.rounds), side="right")
    outcomes = np.minimum(outcomes, probs.size - 1)
    counts = np.bincount(outcomes, minlength=probs.size)

    succeeding = np.zeros(probs.size, dtype=bool)
    for i in range(probs.size):
        succeeding[i] = (
            not math.isnan(fidelities[i])
            and fidelities[i] >= config.success_fidelity_threshold
        )
    successes = int(counts[succeeding].sum())

    return ProtocolStats(
        rounds_requested=config.rounds,
        successes=successes,
        outcome_counts=tuple(int(c) for c in counts),
        per_outcome_fidelity=tuple(float(f) for f in fidelities),
        success_ratio=successes / config.rounds,
        feasible=bool(np.all(probs > cover_tol)),
        generator=GENERATOR_NAME,
        seed=config.seed,
    )
