"""Bipartite qudit pure states, density matrices, measurements, entropies.

Amplitude matrices are indexed ``a[i, j]`` for the component on |i>_A |j>_B,
so the flat vector layout is row-major (index i*dim_b + j). All operations
are pure: inputs are never mutated and the arrays held by the dataclasses
are marked read-only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidDistribution,
    InvalidParameter,
    InvalidState,
    InvalidUnitary,
    UnsupportedShape,
)

# Tolerance ladder. Structural checks on objects the library builds itself sit
# at 1e-10; user-supplied unitaries get a looser 1e-8; probability vectors are
# renormalized once accumulated rounding drifts past 1e-12.
STRUCTURAL_TOL = 1e-10
UNITARY_INPUT_TOL = 1e-8
PROB_DRIFT_TOL = 1e-12
DEFAULT_RANK_TOL = 1e-7


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _as_complex_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise UnsupportedShape(f"expected a 2-d matrix, got ndim={m.ndim}")
    return m


# ---- matrix predicates ------------------------------------------------------

def is_hermitian(m, tol: float = STRUCTURAL_TOL) -> bool:
    m = _as_complex_matrix(m)
    return m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T)) <= tol


def unitarity_deviation(m) -> float:
    """Max absolute deviation of m^dag m from the identity (0 for unitary m)."""
    m = _as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise UnsupportedShape("unitarity is defined for square matrices only")
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def is_unitary(m, tol: float = STRUCTURAL_TOL) -> bool:
    m = _as_complex_matrix(m)
    return m.shape[0] == m.shape[1] and unitarity_deviation(m) <= tol


def is_projector(m, tol: float = STRUCTURAL_TOL) -> bool:
    m = _as_complex_matrix(m)
    return is_hermitian(m, tol) and np.max(np.abs(m @ m - m)) <= tol


def _fix_global_phase(m: np.ndarray) -> np.ndarray:
    """Multiply by a global phase so the first nonzero entry (row-major) is real positive."""
    flat = m.reshape(-1)
    idx = np.flatnonzero(np.abs(flat) > 1e-12)
    if idx.size == 0:
        return m
    pivot = flat[idx[0]]
    return m * (np.abs(pivot) / pivot)


# ---- state types -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PureState:
    """Pure bipartite state with a (dim_a, dim_b) amplitude matrix of unit norm."""

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray
    renormalized: bool = False


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on a dim-dimensional space."""

    dim: int
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """Schmidt form of a square bipartite pure state.

    coefficients are nonnegative and sorted descending; columns of basis_a and
    basis_b are the local Schmidt vectors, and
    sum_k coefficients[k] * basis_a[:, k] x basis_b[:, k] reconstructs the state.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray


@dataclass(frozen=True)
class BasisParams:
    """Angles that generated a measurement basis (None when not applicable)."""

    theta: float
    phi: float | None = None
    chi1: float | None = None
    chi2: float | None = None


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Orthonormal basis stored as rows of ``vectors``; resolves the identity."""

    dim: int
    vectors: np.ndarray
    params: BasisParams | None = None


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Measurement outcome probabilities, 1-d (marginal) or 2-d (joint)."""

    probabilities: np.ndarray


# ---- constructors ------------------------------------------------------------

def pure_state_from_amplitudes(dim_a: int, dim_b: int, amplitudes) -> PureState:
    """Build a PureState from raw amplitudes, normalizing if necessary.

    Parameters
    ----------
    dim_a, dim_b : int
        Local dimensions.
    amplitudes : array_like
        Either a (dim_a, dim_b) matrix or a flat length dim_a*dim_b sequence in
        row-major order (index i*dim_b + j).

    Raises
    ------
    InvalidState
        If every amplitude is (numerically) zero.
    """
    if dim_a < 1 or dim_b < 1:
        raise UnsupportedShape(f"dimensions must be positive, got {dim_a}x{dim_b}")
    a = np.asarray(amplitudes, dtype=complex)
    if a.ndim == 1:
        if a.size != dim_a * dim_b:
            raise UnsupportedShape(
                f"expected {dim_a * dim_b} amplitudes, got {a.size}"
            )
        a = a.reshape(dim_a, dim_b)
    elif a.shape != (dim_a, dim_b):
        raise UnsupportedShape(f"expected shape ({dim_a}, {dim_b}), got {a.shape}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise InvalidState("amplitudes must be finite")
    norm = float(np.linalg.norm(a))
    if norm < 1e-12:
        raise InvalidState("state has zero norm")
    renorm = abs(norm - 1.0) > STRUCTURAL_TOL
    if renorm:
        a = a / norm
    return PureState(dim_a, dim_b, _readonly(a), renormalized=renorm)


def density_matrix(matrix) -> DensityMatrix:
    """Validate and wrap a density matrix (hermitian, trace 1, eigenvalues >= -1e-10)."""
    m = _as_complex_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        raise UnsupportedShape(f"density matrix must be square, got {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise InvalidState("density matrix must be finite")
    if not is_hermitian(m, STRUCTURAL_TOL):
        raise InvalidState("density matrix is not hermitian")
    tr = float(np.real(np.trace(m)))
    if abs(tr - 1.0) > STRUCTURAL_TOL:
        raise InvalidState(f"density matrix trace is {tr}, expected 1")
    if float(np.min(np.linalg.eigvalsh(m))) < -STRUCTURAL_TOL:
        raise InvalidState("density matrix has a negative eigenvalue")
    return DensityMatrix(m.shape[0], _readonly(m))


def density_of(state: PureState) -> DensityMatrix:
    """Projector |psi><psi| on the dim_a*dim_b joint space."""
    v = state.amplitudes.reshape(-1)
    return DensityMatrix(v.size, _readonly(np.outer(v, v.conj())))


def _component_matrix(comp) -> np.ndarray:
    if isinstance(comp, DensityMatrix):
        return comp.matrix
    v = comp.amplitudes.reshape(-1)
    return np.outer(v, v.conj())


def mix(components) -> DensityMatrix:
    """Convex mixture from (weight, state) pairs; states may be pure or density."""
    components = [(w, _component_matrix(c)) for w, c in components]
    if not components:
        raise InvalidParameter("mixture needs at least one component")
    weights = np.array([w for w, _ in components], dtype=float)
    if np.any(weights < -1e-12):
        raise InvalidParameter("mixture weights must be nonnegative")
    if abs(weights.sum() - 1.0) > 1e-9:
        raise InvalidParameter(f"mixture weights sum to {weights.sum()}, expected 1")
    dim = components[0][1].shape[0]
    rho = np.zeros((dim, dim), dtype=complex)
    for w, mat in components:
        if mat.shape[0] != dim:
            raise UnsupportedShape("mixture components must share dimensions")
        rho += w * mat
    return density_matrix(rho)


def outcome_distribution(probabilities) -> OutcomeDistribution:
    """Validate probabilities (1-d or 2-d): finite, >= -1e-9, summing to 1 +- 1e-9."""
    p = np.asarray(probabilities, dtype=float)
    if p.ndim not in (1, 2):
        raise InvalidDistribution(f"expected 1-d or 2-d probabilities, got ndim={p.ndim}")
    if not np.all(np.isfinite(p)):
        raise InvalidDistribution("probabilities must be finite")
    if np.min(p) < -1e-9:
        raise InvalidDistribution(f"negative probability {np.min(p)}")
    p = np.clip(p, 0.0, None)
    total = float(p.sum())
    if abs(total - 1.0) > 1e-9:
        raise InvalidDistribution(f"probabilities sum to {total}, expected 1")
    return OutcomeDistribution(_readonly(p))


# ---- preset states -----------------------------------------------------------

def max_entangled(dim: int) -> PureState:
    """(1/sqrt(d)) sum_k |kk>, the state with uniform Schmidt spectrum."""
    if dim < 2:
        raise UnsupportedShape("maximally entangled state needs dim >= 2")
    return pure_state_from_amplitudes(dim, dim, np.eye(dim) / np.sqrt(dim))


def rank_deficient_qutrit(r: float = 1.0 / 3.0, s: float = 1.0 / 3.0) -> PureState:
    """sqrt(r)|00> + sqrt(s)|11> + sqrt(1-r-s)|12>: entangled but Schmidt rank <= 2."""
    if r < 0 or s < 0 or r + s > 1 + 1e-12:
        raise InvalidParameter(f"need r, s >= 0 and r + s <= 1, got r={r}, s={s}")
    a = np.zeros((3, 3), dtype=complex)
    a[0, 0] = np.sqrt(r)
    a[1, 1] = np.sqrt(s)
    a[1, 2] = np.sqrt(max(1.0 - r - s, 0.0))
    return pure_state_from_amplitudes(3, 3, a)


def computational_product(i: int, j: int, dim: int) -> PureState:
    """Product basis state |ij> on a dim x dim system."""
    if not (0 <= i < dim and 0 <= j < dim):
        raise InvalidParameter(f"indices ({i}, {j}) outside dimension {dim}")
    a = np.zeros((dim, dim), dtype=complex)
    a[i, j] = 1.0
    return pure_state_from_amplitudes(dim, dim, a)


# ---- reductions and decompositions --------------------------------------------

def reduced_density(state: PureState, side: str = "A") -> DensityMatrix:
    """Partial trace of |psi><psi| onto one side.

    With amplitude matrix A, side A gives A A^dag and side B gives A^T A^*.
    """
    a = state.amplitudes
    if side.upper() == "A":
        rho = a @ a.conj().T
    elif side.upper() == "B":
        rho = a.T @ a.conj()
    else:
        raise InvalidParameter(f"side must be 'A' or 'B', got {side!r}")
    return density_matrix(rho)


def schmidt(state: PureState) -> SchmidtDecomposition:
    """Schmidt decomposition via SVD of the amplitude matrix.

    Row k of basis_a / basis_b holds the k-th Schmidt vector of each side, so
    amplitudes == sum_k c_k outer(basis_a[k], basis_b[k]). Phases are fixed so
    the first nonzero component of each A-side vector is real positive, and
    ties between equal coefficients are broken by lexicographic order of the
    A-side vectors so the output is deterministic.
    """
    if state.dim_a != state.dim_b:
        raise UnsupportedShape(
            f"schmidt decomposition needs dim_a == dim_b, got {state.dim_a}x{state.dim_b}"
        )
    u, s, vh = np.linalg.svd(state.amplitudes)
    basis_a = u.T  # rows are left singular vectors
    basis_b = vh
    for k in range(s.size):
        row = basis_a[k]
        idx = np.flatnonzero(np.abs(row) > 1e-12)
        if idx.size:
            phase = row[idx[0]] / abs(row[idx[0]])
            basis_a[k] = row / phase
            basis_b[k] = basis_b[k] * phase
    # stable order inside groups of (numerically) equal coefficients
    order = list(range(s.size))
    k = 0
    while k < s.size:
        m = k
        while m + 1 < s.size and abs(s[m + 1] - s[k]) < 1e-12:
            m += 1
        if m > k:
            group = sorted(
                range(k, m + 1),
                key=lambda c: tuple(
                    (round(x.real, 12), round(x.imag, 12)) for x in basis_a[c]
                ),
            )
            order[k : m + 1] = group
        k = m + 1
    return SchmidtDecomposition(
        coefficients=_readonly(s[order]),
        basis_a=_readonly(basis_a[order]),
        basis_b=_readonly(basis_b[order]),
    )


def apply_local_unitary(state: PureState, u_a, u_b) -> PureState:
    """Transform amplitudes as u_a A u_b^T, i.e. apply u_a x u_b to the joint ket."""
    u_a = _as_complex_matrix(u_a)
    u_b = _as_complex_matrix(u_b)
    if u_a.shape != (state.dim_a, state.dim_a) or u_b.shape != (state.dim_b, state.dim_b):
        raise UnsupportedShape("local unitary dimensions do not match the state")
    for name, u in (("u_a", u_a), ("u_b", u_b)):
        dev = unitarity_deviation(u)
        if dev > UNITARY_INPUT_TOL:
            raise InvalidUnitary(f"{name} deviates from unitarity by {dev:.3e}")
    a = u_a @ state.amplitudes @ u_b.T
    return PureState(state.dim_a, state.dim_b, _readonly(a))


# ---- entropy and distributions -------------------------------------------------

def _entropy_bits(p: np.ndarray, axis=None) -> np.ndarray | float:
    """Shannon entropy in bits along ``axis``; 0 log 0 taken as 0."""
    p = np.clip(p, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return -np.sum(terms, axis=axis)


def shannon_entropy(dist) -> float:
    """Entropy in bits of an OutcomeDistribution (or raw probability array)."""
    if isinstance(dist, OutcomeDistribution):
        p = dist.probabilities
    else:
        p = np.asarray(dist, dtype=float)
        if np.min(p) < -1e-9:
            raise InvalidDistribution(f"negative probability {np.min(p)}")
    return float(_entropy_bits(p))


def joint_distribution(
    rho: DensityMatrix, basis_a: MeasurementBasis, basis_b: MeasurementBasis
) -> OutcomeDistribution:
    """Joint outcome probabilities p_ij = Tr[(M_i x M_j) rho].

    Tiny negatives from rounding are clipped; the matrix is renormalized only
    if the total drifts from 1 by more than 1e-12.
    """
    da, db = basis_a.dim, basis_b.dim
    if rho.dim != da * db:
        raise UnsupportedShape(
            f"density matrix dim {rho.dim} != basis product {da}x{db}"
        )
    rho4 = rho.matrix.reshape(da, db, da, db)
    ma, mb = basis_a.vectors, basis_b.vectors
    p = np.einsum(
        "ia,jb,abcd,ic,jd->ij", ma.conj(), mb.conj(), rho4, ma, mb, optimize=True
    ).real
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if abs(total - 1.0) > PROB_DRIFT_TOL:
        p = p / total
    return outcome_distribution(p)


# ---- measurement bases ----------------------------------------------------------

def measurement_basis(vectors, params: BasisParams | None = None) -> MeasurementBasis:
    """Wrap basis vectors (rows), checking orthonormality and completeness."""
    v = _as_complex_matrix(vectors)
    if v.shape[0] != v.shape[1]:
        raise UnsupportedShape("measurement basis must have dim vectors of length dim")
    gram_dev = float(np.max(np.abs(v @ v.conj().T - np.eye(v.shape[0]))))
    if gram_dev > STRUCTURAL_TOL:
        raise InvalidUnitary(f"basis vectors deviate from orthonormality by {gram_dev:.3e}")
    # rows orthonormal => sum_i |m_i><m_i| = V^T V^* = identity
    return MeasurementBasis(v.shape[0], _readonly(v), params)


def computational_basis(dim: int) -> MeasurementBasis:
    return measurement_basis(np.eye(dim, dtype=complex))


def qubit_basis(theta: float) -> MeasurementBasis:
    """Rotated qubit basis (cos t |0> + sin t |1>, -sin t |0> + cos t |1>)."""
    c, s = np.cos(theta), np.sin(theta)
    v = np.array([[c, s], [-s, c]], dtype=complex)
    return measurement_basis(v, BasisParams(theta=float(theta)))


def qutrit_basis(
    theta: float, phi: float, chi1: float = 0.0, chi2: float = 0.0
) -> MeasurementBasis:
    """Two-parameter qutrit basis (plus optional phases on the first two components).

    m_0 = (e^{i chi1} sin t cos p, e^{i chi2} sin t sin p, cos t)
    m_1 = (e^{i chi1} cos t cos p, e^{i chi2} cos t sin p, -sin t)
    m_2 = orthogonal complement of the pair, built by Gram-Schmidt from the
          least-covered computational vector, with its first nonzero component
          made real positive.
    """
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    e1, e2 = np.exp(1j * chi1), np.exp(1j * chi2)
    m0 = np.array([e1 * st * cp, e2 * st * sp, ct], dtype=complex)
    m1 = np.array([e1 * ct * cp, e2 * ct * sp, -st], dtype=complex)
    coverage = np.abs(m0) ** 2 + np.abs(m1) ** 2
    seed = np.zeros(3, dtype=complex)
    seed[int(np.argmin(coverage))] = 1.0
    m2 = seed - m0 * (m0.conj() @ seed) - m1 * (m1.conj() @ seed)
    m2 = m2 / np.linalg.norm(m2)
    m2 = _fix_global_phase(m2.reshape(1, 3)).reshape(3)
    return measurement_basis(
        np.stack([m0, m1, m2]),
        BasisParams(theta=float(theta), phi=float(phi), chi1=float(chi1), chi2=float(chi2)),
    )
