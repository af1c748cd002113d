"""Dense Hermitian linear-algebra primitives.

All operations work on plain complex numpy arrays and validate hermiticity on
entry.  Eigenvalues that fall below a scale-relative cutoff count as zero when
support decisions are needed (fractional powers, projectors): near-pure states
must not acquire spurious rank from rounding noise.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

HERMITIAN_ATOL = 1e-12
SUPPORT_RTOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral factorization H = U diag(w) U^dag with ascending eigenvalues."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def require_hermitian(a, name: str = "matrix") -> np.ndarray:
    """Validate that ``a`` is square and Hermitian; return it as complex128."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_ATOL * scale:
        raise ValidationError(f"{name} is not Hermitian within tolerance")
    return a


def eig_hermitian(h) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Deterministic for a fixed input (LAPACK divide-and-conquer on a fixed
    build); dimensions here never exceed a few dozen.
    """
    h = require_hermitian(h)
    w, u = np.linalg.eigh(h)
    return EigenDecomposition(eigenvalues=w, eigenvectors=u)


def support_cutoff(eigenvalues) -> float:
    """Threshold below which an eigenvalue counts as zero."""
    top = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    return SUPPORT_RTOL * top


def matrix_power(rho, s: float) -> np.ndarray:
    """Fractional power ``rho**s`` of a PSD matrix for s in [0, 1].

    Convention: ``0**s = 0`` for s > 0, and ``rho**0`` is the projector onto
    the support (eigenvalues above the scale-relative cutoff).
    """
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"power must lie in [0, 1], got {s}")
    dec = eig_hermitian(rho)
    w = dec.eigenvalues
    cut = support_cutoff(w)
    if np.min(w) < -max(cut, 1e-12):
        raise ValidationError("matrix_power requires a PSD matrix")
    u = dec.eigenvectors
    if s == 0.0:
        pw = (w > cut).astype(np.float64)
    else:
        # eigenvalues below the cutoff are rank noise; fractional powers
        # amplify them (sqrt of 1e-17 is 3e-9), so zero them out first
        pw = np.where(w > cut, np.clip(w, 0.0, None) ** s, 0.0)
    return (u * pw) @ u.conj().T


def trace_norm(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    a = require_hermitian(a)
    return float(np.sum(np.abs(np.linalg.eigvalsh(a))))


def positive_part(a) -> np.ndarray:
    """Projection of ``a`` onto its strictly-positive eigenspace, times ``a``.

    For traceless input, ``tr positive_part(a) = trace_norm(a) / 2``.
    """
    dec = eig_hermitian(a)
    w = np.clip(dec.eigenvalues, 0.0, None)
    u = dec.eigenvectors
    return (u * w) @ u.conj().T
