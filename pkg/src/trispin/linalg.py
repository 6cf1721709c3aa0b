"""Dense complex matrix helpers for the 8-dimensional three-spin Hilbert space.

Everything here works on plain numpy arrays. Generators (Hamiltonians) are
carried in rad/s; propagators are dimensionless unitaries.
"""
from __future__ import annotations

import numpy as np

# All operator matrices entering expm_generator are exact sums of Pauli
# products scaled by physical constants, so a tight absolute tolerance is safe.
HERMITIAN_TOL = 1e-10


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product (a ⊗ b)."""
    return np.kron(np.asarray(a), np.asarray(b))


def hermiticity_defect(a: np.ndarray) -> float:
    """Largest entrywise deviation of a from its conjugate transpose."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T)))


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entrywise deviation of u†u from the identity."""
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def expm_generator(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for a Hermitian generator h (rad/s) and duration t (s).

    Uses a Hermitian eigendecomposition; the matrices are at most 8x8 so
    cost is negligible. Raises ValueError if h is not Hermitian within
    HERMITIAN_TOL, reporting the measured asymmetry.
    """
    h = np.asarray(h, dtype=complex)
    defect = hermiticity_defect(h)
    if defect > HERMITIAN_TOL:
        raise ValueError(
            f"generator is not Hermitian: max |H - H†| = {defect:.3e} "
            f"(tolerance {HERMITIAN_TOL:.0e})"
        )
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T
