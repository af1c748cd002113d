"""Validated state representations and conversions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .matcore import require_hermitian

TRACE_ATOL = 1e-10
EIG_ATOL = 1e-10
DIST_ATOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, PSD matrix.  Construct via :meth:`from_matrix`
    (or the bloch/ket variants), which validate and normalize."""

    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def from_matrix(cls, mat) -> "DensityMatrix":
        mat = require_hermitian(mat, "density matrix")
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValidationError(f"density matrix trace is {tr}, expected 1")
        w, u = np.linalg.eigh(mat)
        if np.min(w) < -EIG_ATOL:
            raise ValidationError(
                f"density matrix has negative eigenvalue {np.min(w):.3e}"
            )
        if np.min(w) < 0.0:
            # accept states from lossy round-trips: clip and renormalize
            w = np.clip(w, 0.0, None)
            mat = (u * w) @ u.conj().T
            mat = mat / np.trace(mat).real
        return cls(mat=_freeze(np.ascontiguousarray(mat)))

    @classmethod
    def from_bloch(cls, bloch) -> "DensityMatrix":
        q = QubitState.from_vector(bloch)
        return q.to_density()

    @classmethod
    def from_ket(cls, amplitudes) -> "DensityMatrix":
        psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
        if psi.size < 2:
            raise ValidationError("ket needs at least two amplitudes")
        norm2 = float(np.vdot(psi, psi).real)
        if abs(norm2 - 1.0) > TRACE_ATOL:
            raise ValidationError(f"ket norm^2 is {norm2}, expected 1")
        psi = psi / np.sqrt(norm2)
        return cls(mat=_freeze(np.outer(psi, psi.conj())))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(mat=_freeze(np.eye(dim, dtype=np.complex128) / dim))

    def purity(self) -> float:
        return float(np.trace(self.mat @ self.mat).real)

    def is_pure(self, atol: float = 1e-9) -> bool:
        return self.purity() >= 1.0 - atol

    def eigenvalues(self) -> np.ndarray:
        return np.clip(np.linalg.eigvalsh(self.mat), 0.0, None)


@dataclass(frozen=True)
class QubitState:
    """Qubit in Bloch form: rho = (Id + bloch . sigma) / 2."""

    bloch: np.ndarray

    @classmethod
    def from_vector(cls, bloch) -> "QubitState":
        b = np.asarray(bloch, dtype=np.float64).ravel()
        if b.shape != (3,):
            raise ValidationError("bloch vector must have three components")
        if np.linalg.norm(b) > 1.0 + DIST_ATOL:
            raise ValidationError(f"bloch vector length {np.linalg.norm(b)} > 1")
        return cls(bloch=_freeze(b))

    @property
    def r(self) -> float:
        return float(np.linalg.norm(self.bloch))

    def is_pure(self, atol: float = 1e-9) -> bool:
        return self.r >= 1.0 - atol

    def to_density(self) -> DensityMatrix:
        mat = np.eye(2, dtype=np.complex128)
        for component, pauli in zip(self.bloch, PAULIS):
            mat = mat + component * pauli
        return DensityMatrix.from_matrix(mat / 2.0)


@dataclass(frozen=True)
class DiscreteDistribution:
    """Nonnegative probabilities over a finite outcome alphabet, summing to 1."""

    probs: np.ndarray

    @classmethod
    def from_probs(cls, probs) -> "DiscreteDistribution":
        p = np.asarray(probs, dtype=np.float64).ravel()
        if p.size == 0:
            raise ValidationError("distribution needs at least one outcome")
        if np.min(p) < -DIST_ATOL:
            raise ValidationError("probabilities must be nonnegative")
        p = np.clip(p, 0.0, None)
        if abs(p.sum() - 1.0) > DIST_ATOL:
            raise ValidationError(f"probabilities sum to {p.sum()}, expected 1")
        return cls(probs=_freeze(p / p.sum()))

    @property
    def size(self) -> int:
        return self.probs.size


def density_from_spec(spec) -> DensityMatrix:
    """Build a state from a description dict.

    Exactly one of the keys must be present:

    * ``"matrix"``: ``{"re": rows, "im": rows}`` (``"im"`` optional);
    * ``"bloch"``: ``[x, y, z]``;
    * ``"ket"``: ``{"re": [...], "im": [...]}`` (``"im"`` optional).
    """
    if not isinstance(spec, dict):
        raise ValidationError("state spec must be a mapping")
    keys = [k for k in ("matrix", "bloch", "ket") if k in spec]
    if len(keys) != 1:
        raise ValidationError(
            "state spec must contain exactly one of 'matrix', 'bloch', 'ket'"
        )
    kind = keys[0]
    body = spec[kind]
    if kind == "bloch":
        return DensityMatrix.from_bloch(body)
    if kind == "ket":
        return DensityMatrix.from_ket(_complex_from_parts(body, "ket"))
    mat = _complex_from_parts(body, "matrix")
    if mat.ndim != 2:
        raise ValidationError("matrix spec must be two-dimensional")
    if "dim" in body and int(body["dim"]) != mat.shape[0]:
        raise ValidationError("matrix spec 'dim' disagrees with row count")
    return DensityMatrix.from_matrix(mat)


def _complex_from_parts(body, name: str) -> np.ndarray:
    if not isinstance(body, dict) or "re" not in body:
        raise ValidationError(f"{name} spec must be a mapping with 're'")
    re = np.asarray(body["re"], dtype=np.float64)
    im = np.asarray(body.get("im", np.zeros_like(re)), dtype=np.float64)
    if re.shape != im.shape:
        raise ValidationError(f"{name} spec 're' and 'im' shapes differ")
    return re + 1j * im


def to_bloch(rho: DensityMatrix) -> QubitState:
    """Bloch vector r_k = tr(rho sigma_k); dimension-2 states only."""
    if rho.dim != 2:
        raise ValidationError("bloch conversion needs a qubit state")
    b = np.array([float(np.trace(rho.mat @ p).real) for p in PAULIS])
    return QubitState.from_vector(b)


def tensor_power_small(rho: DensityMatrix, n: int) -> DensityMatrix:
    """Kronecker power rho^(x n), guarded to total dimension <= 4096."""
    if n < 1:
        raise ValidationError("tensor power needs n >= 1")
    if rho.dim**n > 4096:
        raise ValidationError(f"tensor power dimension {rho.dim ** n} exceeds 4096")
    out = rho.mat
    for _ in range(n - 1):
        out = np.kron(out, rho.mat)
    return DensityMatrix.from_matrix(out)
