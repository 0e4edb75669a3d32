"""Entanglement monotones built from the reduced-state spectrum.

The monotone family C_k is the k-th elementary symmetric polynomial of the
reduced-density eigenvalues (squared Schmidt coefficients); the geometric-mean
member G = d (prod lambda_i)^(1/d) vanishes exactly when the Schmidt rank
drops below d, which is the resource criterion checked here.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    DEFAULT_RANK_TOL,
    DensityMatrix,
    PureState,
    computational_product,
    max_entangled,
    mix,
    rank_deficient_qutrit,
    reduced_density,
)
from .errors import InvalidParameter, UnsupportedShape


@dataclass(frozen=True)
class MonotoneVector:
    """Elementary symmetric polynomials e_1..e_d of the marginal spectrum, plus G."""

    dim: int
    raw: tuple[float, ...]
    g_concurrence: float


@dataclass(frozen=True)
class CriterionReport:
    """Schmidt-rank resource check for a square pure state."""

    schmidt_rank: int
    g_concurrence: float
    passes: bool
    tolerance: float
    column_gram_deviation: float


def _marginal_spectrum(state: PureState) -> np.ndarray:
    """Eigenvalues of the A-side reduced density, via SVD of the amplitudes."""
    s = np.linalg.svd(state.amplitudes, compute_uv=False)
    return s * s


def _require_square(state: PureState) -> int:
    if state.dim_a != state.dim_b:
        raise UnsupportedShape(
            f"monotones are defined for square systems, got {state.dim_a}x{state.dim_b}"
        )
    return state.dim_a


def concurrence_monotones(state: PureState) -> MonotoneVector:
    """All d elementary symmetric polynomials of the spectrum, e_1 = 1 first."""
    d = _require_square(state)
    lam = _marginal_spectrum(state)
    # coeffs[k] accumulates e_k through the product expansion prod_i (1 + lam_i x)
    coeffs = np.zeros(d + 1)
    coeffs[0] = 1.0
    for x in lam:
        coeffs[1:] = coeffs[1:] + x * coeffs[:-1]
    e_d = float(coeffs[d])
    g = d * e_d ** (1.0 / d) if e_d > 0.0 else 0.0
    return MonotoneVector(dim=d, raw=tuple(float(c) for c in coeffs[1:]), g_concurrence=g)


def concurrence(state: PureState) -> float:
    """sqrt(2 (1 - Tr rho_A^2)); for qubit pure states this is the usual concurrence."""
    lam = _marginal_spectrum(state)
    return float(np.sqrt(2.0 * max(1.0 - float(np.sum(lam * lam)), 0.0)))


def g_concurrence(state: PureState) -> float:
    """G = d det(rho_A)^(1/d) with the determinant taken as the product of
    squared singular values of the amplitude matrix.

    Going through the singular values instead of an LU determinant keeps the
    noise floor for rank-deficient states at machine-epsilon squared, so the
    d-th root stays far below any sensible rank tolerance.
    """
    d = _require_square(state)
    lam = _marginal_spectrum(state)
    det = float(np.prod(lam))
    if det <= 0.0:
        return 0.0
    return d * det ** (1.0 / d)


def criterion_check(state: PureState, tolerance: float = DEFAULT_RANK_TOL) -> CriterionReport:
    """Full-Schmidt-rank check plus the column-gram diagnostic.

    passes is True exactly when all d squared Schmidt coefficients exceed
    ``tolerance``. column_gram_deviation reports max |A^dag A - c I| with
    c = Tr(A^dag A)/d, the off-diagonal/imbalance of the amplitude columns
    (0 for the maximally entangled state).
    """
    if tolerance <= 0.0:
        raise InvalidParameter(f"tolerance must be positive, got {tolerance}")
    d = _require_square(state)
    lam = _marginal_spectrum(state)
    rank = int(np.count_nonzero(lam > tolerance))
    a = state.amplitudes
    gram = a.conj().T @ a
    c = float(np.real(np.trace(gram))) / d
    deviation = float(np.max(np.abs(gram - c * np.eye(d))))
    return CriterionReport(
        schmidt_rank=rank,
        g_concurrence=g_concurrence(state),
        passes=rank == d,
        tolerance=tolerance,
        column_gram_deviation=deviation,
    )


# ---- one-parameter mixed families -------------------------------------------

class MixedFamily(Enum):
    """Qutrit density-matrix families scanned by the work functional."""

    # x * (rank-2 blend) + (1-x) * (maximally entangled); G drops linearly as 1 - x
    RANK2_MIX = "rank2-mix"
    # alpha * (maximally entangled) + (1-alpha) * |01><01|; G grows linearly as alpha
    PRODUCT_MIX = "product-mix"


def _check_unit_interval(param: float) -> float:
    if not (0.0 <= param <= 1.0):
        raise InvalidParameter(f"family parameter must lie in [0, 1], got {param}")
    return float(param)


def family_density(family: MixedFamily, param: float) -> DensityMatrix:
    """Density matrix of the family member at the given mixing parameter."""
    x = _check_unit_interval(param)
    if family is MixedFamily.RANK2_MIX:
        return mix([(x, rank_deficient_qutrit()), (1.0 - x, max_entangled(3))])
    if family is MixedFamily.PRODUCT_MIX:
        return mix([(x, max_entangled(3)), (1.0 - x, computational_product(0, 1, 3))])
    raise InvalidParameter(f"unknown family {family!r}")


def g_concurrence_family(family: MixedFamily, param: float) -> float:
    """Closed-form G along the family: 1 - x for RANK2_MIX, alpha for PRODUCT_MIX."""
    x = _check_unit_interval(param)
    if family is MixedFamily.RANK2_MIX:
        return 1.0 - x
    if family is MixedFamily.PRODUCT_MIX:
        return x
    raise InvalidParameter(f"unknown family {family!r}")
