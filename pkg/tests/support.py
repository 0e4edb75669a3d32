"""Shared random-state helpers and the acceptance-line buffer."""
import numpy as np

from quditwork import pure_state_from_amplitudes

ACCEPTANCE_LINES = []


def haar_unitary(dim, rng):
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    # Fix the phase ambiguity of QR so the distribution is Haar.
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_state(dim_a, dim_b, rng):
    amps = rng.normal(size=(dim_a, dim_b)) + 1j * rng.normal(size=(dim_a, dim_b))
    return pure_state_from_amplitudes(dim_a, dim_b, amps / np.linalg.norm(amps))


def rank_deficient_state(dim, rank, rng):
    """Square bipartite pure state whose Schmidt rank is exactly ``rank``."""
    coeffs = rng.uniform(0.2, 1.0, size=rank)
    coeffs = np.sqrt(coeffs / coeffs.sum())
    ua = haar_unitary(dim, rng)
    ub = haar_unitary(dim, rng)
    amps = (ua[:, :rank] * coeffs) @ ub[:, :rank].conj().T
    return pure_state_from_amplitudes(dim, dim, amps)
