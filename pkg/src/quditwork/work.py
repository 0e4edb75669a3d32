"""Average extractable work over parameterized measurement families.

For a joint outcome distribution p(i, j) obtained when both parties measure in
the same rotated basis, the per-setting figure of merit is

    zeta = (2 - 2 H(A, B) + H(A) + H(B)) / 2        [bits]

and W is zeta averaged over the basis parameters: the full circle for qubits,
a uniform (theta, phi) in [0, pi/2]^2 midpoint grid for qutrits, or the
average over theta of the best phi. zeta <= 1 always; the maximally entangled
state attains W = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .core import (
    DensityMatrix,
    OutcomeDistribution,
    _entropy_bits,
    _readonly,
    density_of,
    pure_state_from_amplitudes,
)
from .entanglement import MixedFamily, family_density, g_concurrence_family
from .errors import InvalidDistribution, InvalidParameter, UnsupportedShape

BOLTZMANN_J_PER_K = 1.380649e-23
CONVERGENCE_TOL = 1e-4
MIN_GRID = 8


class AveragingMode(Enum):
    GRID_AVERAGE = "grid"              # qutrit: uniform midpoint average on [0, pi/2]^2
    THETA_AVERAGE_PHI_MAX = "theta-max"  # qutrit: max over phi, then average over theta
    QUBIT_CIRCLE = "circle"            # qubit: average over theta in [0, 2 pi)


@dataclass(frozen=True, eq=False)
class WorkScanResult:
    mode: AveragingMode
    grid_points: int
    zeta_grid: np.ndarray
    work: float
    converged: bool


@dataclass(frozen=True)
class WorkUnits:
    temperature: float
    bits: float
    joules: float


@dataclass(frozen=True)
class FamilyScanRow:
    param: float
    g_concurrence: float
    work: float


# ---- single-setting quantities ------------------------------------------------

def _require_joint(dist: OutcomeDistribution) -> np.ndarray:
    p = dist.probabilities
    if p.ndim != 2:
        raise InvalidDistribution("a joint (2-d) distribution is required")
    return p


def zeta(joint: OutcomeDistribution) -> float:
    """Work figure of merit, in bits, for one joint outcome distribution."""
    p = _require_joint(joint)
    h_ab = float(_entropy_bits(p))
    h_a = float(_entropy_bits(p.sum(axis=1)))
    h_b = float(_entropy_bits(p.sum(axis=0)))
    return 0.5 * (2.0 - 2.0 * h_ab + h_a + h_b)


def extractable_bits(joint: OutcomeDistribution) -> float:
    """1 - H(B|A): bits the A side's outcome record is worth about B."""
    p = _require_joint(joint)
    h_ab = float(_entropy_bits(p))
    h_a = float(_entropy_bits(p.sum(axis=1)))
    return 1.0 - (h_ab - h_a)


def bits_to_joules(bits: float, temperature: float) -> WorkUnits:
    """Convert bits to joules at the given temperature: E = bits * k_B * T * ln 2."""
    if temperature <= 0.0:
        raise InvalidParameter(f"temperature must be positive, got {temperature}")
    joules = bits * BOLTZMANN_J_PER_K * temperature * math.log(2.0)
    return WorkUnits(temperature=float(temperature), bits=float(bits), joules=joules)


# ---- basis batches --------------------------------------------------------------

def _midpoints(span: float, n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) * (span / n)


def _qubit_bases(thetas: np.ndarray) -> np.ndarray:
    c, s = np.cos(thetas), np.sin(thetas)
    m = np.zeros((thetas.size, 2, 2), dtype=complex)
    m[:, 0, 0] = c
    m[:, 0, 1] = s
    m[:, 1, 0] = -s
    m[:, 1, 1] = c
    return m


def _qutrit_bases(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Vectorized real (chi = 0) qutrit bases; matches qutrit_basis pointwise."""
    st, ct = np.sin(thetas), np.cos(thetas)
    sp, cp = np.sin(phis), np.cos(phis)
    m = np.zeros((thetas.size, 3, 3), dtype=complex)
    m[:, 0, 0] = st * cp
    m[:, 0, 1] = st * sp
    m[:, 0, 2] = ct
    m[:, 1, 0] = ct * cp
    m[:, 1, 1] = ct * sp
    m[:, 1, 2] = -st
    # complement (-sin p, cos p, 0), sign-flipped so the first nonzero entry is positive
    flip = np.where(sp > 1e-14, -1.0, 1.0)
    m[:, 2, 0] = -sp * flip
    m[:, 2, 1] = cp * flip
    return m


def _mode_bases(mode: AveragingMode, grid: int) -> np.ndarray:
    """Stacked measurement bases for every grid point of the mode's domain."""
    if mode is AveragingMode.QUBIT_CIRCLE:
        return _qubit_bases(_midpoints(2.0 * np.pi, grid))
    t = _midpoints(np.pi / 2.0, grid)
    tt, pp = np.meshgrid(t, t, indexing="ij")
    return _qutrit_bases(tt.ravel(), pp.ravel())


def _mode_dim(mode: AveragingMode) -> int:
    return 2 if mode is AveragingMode.QUBIT_CIRCLE else 3


def _default_mode(dim: int) -> AveragingMode:
    return AveragingMode.QUBIT_CIRCLE if dim == 2 else AveragingMode.GRID_AVERAGE


def _reduce(zgrid: np.ndarray, mode: AveragingMode) -> float:
    if mode is AveragingMode.THETA_AVERAGE_PHI_MAX:
        return float(zgrid.max(axis=1).mean())
    return float(zgrid.mean())


# ---- the work functional ---------------------------------------------------------

def _zeta_surface(rho: DensityMatrix, mode: AveragingMode, grid: int) -> np.ndarray:
    """zeta at every grid point, shaped (grid,) for the circle, (grid, grid) otherwise."""
    d = _mode_dim(mode)
    m = _mode_bases(mode, grid)
    w, vecs = np.linalg.eigh(rho.matrix)
    keep = w > 1e-12
    w = w[keep]
    comps = vecs[:, keep].T.reshape(-1, d, d)  # each eigenvector as an amplitude matrix
    mc = m.conj()
    amps = np.einsum("kia,kjb,nab->knij", mc, mc, comps, optimize=True)
    p = np.einsum("n,knij->kij", w, np.abs(amps) ** 2, optimize=True)
    h_ab = _entropy_bits(p.reshape(p.shape[0], -1), axis=1)
    h_a = _entropy_bits(p.sum(axis=2), axis=1)
    h_b = _entropy_bits(p.sum(axis=1), axis=1)
    z = 0.5 * (2.0 - 2.0 * h_ab + h_a + h_b)
    if mode is AveragingMode.QUBIT_CIRCLE:
        return z
    return z.reshape(grid, grid)


def _check_work_args(rho: DensityMatrix, mode: AveragingMode | None, grid: int):
    d = math.isqrt(rho.dim)
    if d * d != rho.dim or d not in (2, 3):
        raise UnsupportedShape(f"work is defined on 2x2 or 3x3 systems, got dim {rho.dim}")
    if mode is None:
        mode = _default_mode(d)
    if _mode_dim(mode) != d:
        raise UnsupportedShape(f"mode {mode.name} does not apply to a {d}x{d} system")
    if not isinstance(grid, int) or grid < MIN_GRID:
        raise InvalidParameter(f"grid too small: need at least {MIN_GRID}, got {grid}")
    return d, mode


def work(
    rho: DensityMatrix, mode: AveragingMode | None = None, grid: int = 64
) -> WorkScanResult:
    """Average zeta over the mode's parameter domain via the midpoint rule.

    The result's ``converged`` flag compares against a doubled grid; the
    reported value is the base-grid average. mode defaults to QUBIT_CIRCLE for
    qubits and GRID_AVERAGE for qutrits.
    """
    _, mode = _check_work_args(rho, mode, grid)
    zg = _zeta_surface(rho, mode, grid)
    value = _reduce(zg, mode)
    value2 = _reduce(_zeta_surface(rho, mode, 2 * grid), mode)
    return WorkScanResult(
        mode=mode,
        grid_points=grid,
        zeta_grid=_readonly(zg),
        work=value,
        converged=abs(value - value2) < CONVERGENCE_TOL,
    )


def scan_family(
    family: MixedFamily,
    params,
    mode: AveragingMode | None = None,
    grid: int = 64,
) -> list[FamilyScanRow]:
    """Work and closed-form G along a one-parameter family of qutrit mixtures."""
    rows = []
    for param in params:
        rho = family_density(family, float(param))
        res = work(rho, mode, grid)
        rows.append(
            FamilyScanRow(
                param=float(param),
                g_concurrence=g_concurrence_family(family, float(param)),
                work=res.work,
            )
        )
    return rows


# ---- separable bound --------------------------------------------------------------

def _unit_vector(params: np.ndarray, dim: int) -> np.ndarray:
    """Hyperspherical parameterization of a unit vector up to global phase."""
    if dim == 2:
        a, p1 = params
        return np.array([np.cos(a), np.exp(1j * p1) * np.sin(a)])
    a, b, p1, p2 = params
    return np.array(
        [
            np.cos(a),
            np.exp(1j * p1) * np.sin(a) * np.cos(b),
            np.exp(1j * p2) * np.sin(a) * np.sin(b),
        ]
    )


def _basis_index_params(index: int, dim: int) -> np.ndarray:
    """Parameter vector putting _unit_vector on the computational vector |index>."""
    half = np.pi / 2.0
    if dim == 2:
        return np.array([0.0 if index == 0 else half, 0.0])
    table = {0: (0.0, 0.0), 1: (half, 0.0), 2: (half, half)}
    a, b = table[index]
    return np.array([a, b, 0.0, 0.0])


@dataclass(frozen=True, eq=False)
class SeparableBoundResult:
    """Best product state found and its work value (internal detail carrier)."""

    value: float
    mode: AveragingMode
    grid: int
    vector_a: np.ndarray
    vector_b: np.ndarray


def _separable_bound_detail(
    dim: int,
    mode: AveragingMode | None = None,
    restarts: int = 32,
    seed: int = 42,
    grid: int = 64,
) -> SeparableBoundResult:
    if dim not in (2, 3):
        raise UnsupportedShape(f"separable bound is implemented for dim 2 and 3, got {dim}")
    if mode is None:
        mode = _default_mode(dim)
    if _mode_dim(mode) != dim:
        raise UnsupportedShape(f"mode {mode.name} does not apply to dimension {dim}")
    if grid < MIN_GRID:
        raise InvalidParameter(f"grid too small: need at least {MIN_GRID}, got {grid}")
    if restarts < 1:
        raise InvalidParameter("restarts must be at least 1")

    m = _mode_bases(mode, grid)
    mc_flat = m.conj().reshape(-1, dim)  # (grid_points*dim, dim)
    n_side = 2 * (dim - 1)

    def neg_work(x: np.ndarray) -> float:
        # product state: H(A,B) = H(A) + H(B), so zeta = 1 - (H_A + H_B)/2
        va = _unit_vector(x[:n_side], dim)
        vb = _unit_vector(x[n_side:], dim)
        pa = np.abs(mc_flat @ va).reshape(-1, dim) ** 2
        pb = np.abs(mc_flat @ vb).reshape(-1, dim) ** 2
        z = 1.0 - 0.5 * (_entropy_bits(pa, axis=1) + _entropy_bits(pb, axis=1))
        if mode is not AveragingMode.QUBIT_CIRCLE:
            z = z.reshape(grid, grid)
        return -_reduce(z, mode)

    rng = np.random.default_rng(seed)
    starts = [
        np.concatenate([_basis_index_params(i, dim), _basis_index_params(j, dim)])
        for i in range(dim)
        for j in range(dim)
    ]
    for _ in range(restarts):
        angles = rng.uniform(0.0, np.pi / 2.0, size=dim - 1)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=dim - 1)
        side_a = np.concatenate([angles, phases])
        angles = rng.uniform(0.0, np.pi / 2.0, size=dim - 1)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=dim - 1)
        starts.append(np.concatenate([side_a, np.concatenate([angles, phases])]))

    best_x, best_val = None, np.inf
    for x0 in starts:
        res = minimize(neg_work, x0, method="Powell")
        if res.fun < best_val:
            best_val, best_x = float(res.fun), np.asarray(res.x)

    va = _unit_vector(best_x[:n_side], dim)
    vb = _unit_vector(best_x[n_side:], dim)
    product = pure_state_from_amplitudes(dim, dim, np.outer(va, vb))
    checked = work(density_of(product), mode, grid)
    return SeparableBoundResult(
        value=checked.work, mode=mode, grid=grid, vector_a=va, vector_b=vb
    )


def separable_bound(
    dim: int,
    mode: AveragingMode | None = None,
    restarts: int = 32,
    seed: int = 42,
    grid: int = 64,
) -> float:
    """Maximum of W over pure product states, by seeded multi-start Powell search.

    Deterministic starts on every computational product |i>|j> guarantee the
    result is at least the best of those feasible points.
    """
    return _separable_bound_detail(dim, mode, restarts, seed, grid).value
