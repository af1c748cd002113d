"""Single-copy discrimination quantities.

Classical and quantum Chernoff bounds, the Helstrom minimum error
probability, fidelity, and the ordered chain of bounds relating them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NumericDomainError, ValidationError
from .matcore import eig_hermitian, matrix_power, trace_norm
from .states import DensityMatrix, DiscreteDistribution, QubitState

IDENTICAL_ATOL = 1e-14


@dataclass(frozen=True)
class ChernoffResult:
    """Minimized overlap q = inf_s Q_s, its minimizer, and the rate
    exponent -log q (infinite for states with disjoint support)."""

    q: float
    s_star: float

    @property
    def exponent(self) -> float:
        if self.q <= 0.0:
            return np.inf
        return -float(np.log(self.q))


@dataclass(frozen=True)
class BinaryChernoff:
    """Closed-form two-outcome Chernoff data: decision threshold xi (the
    fraction of 0-outcomes above which hypothesis 0 wins) and exponent c."""

    xi: float
    c: float


@dataclass(frozen=True)
class BoundsReport:
    helstrom_pe: float
    p_qc: float
    half_overlap_root: float
    fidelity: float
    fid_upper_pe: float
    fid_lower_pe: float


def _check_same_dim(rho0: DensityMatrix, rho1: DensityMatrix) -> None:
    if rho0.dim != rho1.dim:
        raise ValidationError(f"dimension mismatch: {rho0.dim} vs {rho1.dim}")


def _spectral_pair(rho0: DensityMatrix, rho1: DensityMatrix):
    """Eigenvalues of both states plus squared eigenvector overlaps."""
    dec0 = eig_hermitian(rho0.mat)
    dec1 = eig_hermitian(rho1.mat)
    lam0 = np.clip(dec0.eigenvalues, 0.0, None)
    lam1 = np.clip(dec1.eigenvalues, 0.0, None)
    w = np.abs(dec0.eigenvectors.conj().T @ dec1.eigenvectors) ** 2
    return lam0, lam1, np.ascontiguousarray(w)


def classical_chernoff(
    p0: DiscreteDistribution, p1: DiscreteDistribution
) -> ChernoffResult:
    """Chernoff bound data for two distributions on a common alphabet.

    Minimizes ``sum_b p0(b)^s p1(b)^(1-s)`` over s via golden-section search
    on the open interval (the objective is convex) plus explicit endpoint
    limits, which take over when the supports differ.  Identical
    distributions short-circuit to exponent 0 with ``s_star = 0.5``.
    """
    if p0.size != p1.size:
        raise ValidationError("distributions must share an outcome alphabet")
    if np.max(np.abs(p0.probs - p1.probs)) <= IDENTICAL_ATOL:
        return ChernoffResult(q=1.0, s_star=0.5)
    w = np.eye(p0.size)
    q, s_star = kernels.min_q_s_spectral(p0.probs, p1.probs, w)
    return ChernoffResult(q=min(float(q), 1.0), s_star=float(s_star))


def binary_chernoff_closed(p: float, q: float) -> BinaryChernoff:
    """Closed-form Chernoff data for a pair of biased coins.

    ``p`` and ``q`` are the head probabilities under the two hypotheses; both
    must be interior (use :func:`classical_chernoff` for degenerate coins).
    """
    if not (0.0 < p < 1.0 and 0.0 < q < 1.0):
        raise ValidationError(
            "binary closed form needs p, q in (0, 1); "
            "use classical_chernoff for degenerate coins"
        )
    if p == q:
        raise ValidationError("closed form needs p != q")
    pb, qb = 1.0 - p, 1.0 - q
    xi = np.log(qb / pb) / (np.log(p / pb) + np.log(qb / q))
    xb = 1.0 - xi
    c = xi * np.log(xi / p) + xb * np.log(xb / pb)
    return BinaryChernoff(xi=float(xi), c=float(c))


def hellinger_arc(
    p0: DiscreteDistribution, p1: DiscreteDistribution, s: float
) -> DiscreteDistribution:
    """The interpolating family p_s(b) proportional to p0(b)^s p1(b)^(1-s).

    At the minimizing s of :func:`classical_chernoff`, p_s is equidistant
    (in relative entropy) from both endpoints.
    """
    if p0.size != p1.size:
        raise ValidationError("distributions must share an outcome alphabet")
    if s == 0.0:
        return p1
    if s == 1.0:
        return p0
    with np.errstate(invalid="ignore"):
        raw = np.where(
            (p0.probs > 0.0) & (p1.probs > 0.0),
            p0.probs**s * p1.probs ** (1.0 - s),
            0.0,
        )
    total = raw.sum()
    if total <= 0.0:
        raise NumericDomainError("distributions have empty common support")
    return DiscreteDistribution.from_probs(raw / total)


def kl_divergence(p: DiscreteDistribution, q: DiscreteDistribution) -> float:
    """Relative entropy sum p log(p/q), with 0 log 0 = 0; +inf when p charges
    an outcome of q-probability zero."""
    if p.size != q.size:
        raise ValidationError("distributions must share an outcome alphabet")
    mask = p.probs > 0.0
    if np.any(q.probs[mask] <= 0.0):
        return np.inf
    pm = p.probs[mask]
    return float(np.sum(pm * np.log(pm / q.probs[mask])))


def helstrom_error(
    rho0: DensityMatrix, rho1: DensityMatrix, pi0: float = 0.5
) -> float:
    """Minimum single-shot error probability (1 - tr|pi1 rho1 - pi0 rho0|)/2."""
    _check_same_dim(rho0, rho1)
    if not 0.0 < pi0 < 1.0:
        raise ValidationError("prior must lie strictly inside (0, 1)")
    gamma = (1.0 - pi0) * rho1.mat - pi0 * rho0.mat
    return float((1.0 - trace_norm(gamma)) / 2.0)


def quantum_q_s(rho0: DensityMatrix, rho1: DensityMatrix, s: float) -> float:
    """Overlap trace tr(rho0^s rho1^(1-s)) for s in [0, 1].

    The endpoints use the support-projector convention, matching the s -> 0,1
    limits from inside the interval.
    """
    _check_same_dim(rho0, rho1)
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"s must lie in [0, 1], got {s}")
    lam0, lam1, w = _spectral_pair(rho0, rho1)
    if s == 0.0 or s == 1.0:
        q0, q1 = kernels.q_s_endpoints(lam0, lam1, w)
        return float(q0 if s == 0.0 else q1)
    return float(kernels.q_s_spectral(lam0, lam1, w, float(s)))


def quantum_chernoff(rho0: DensityMatrix, rho1: DensityMatrix) -> ChernoffResult:
    """Minimize Q_s = tr(rho0^s rho1^(1-s)) over s in [0, 1].

    Golden-section search exploits convexity of Q_s; the endpoint limits are
    compared separately since for degenerate supports the infimum may sit
    there.  Identical states short-circuit to exponent 0, s_star = 0.5.
    """
    _check_same_dim(rho0, rho1)
    if np.max(np.abs(rho0.mat - rho1.mat)) <= IDENTICAL_ATOL:
        return ChernoffResult(q=1.0, s_star=0.5)
    lam0, lam1, w = _spectral_pair(rho0, rho1)
    q, s_star = kernels.min_q_s_spectral(lam0, lam1, w)
    return ChernoffResult(q=min(float(q), 1.0), s_star=float(s_star))


def quantum_chernoff_weighted(
    rho0: DensityMatrix, rho1: DensityMatrix, pi0: float
) -> float:
    """Prior-weighted bound min_s pi0^s pi1^(1-s) tr(rho0^s rho1^(1-s)).

    Upper-bounds :func:`helstrom_error` at the same priors.
    """
    _check_same_dim(rho0, rho1)
    if not 0.0 < pi0 < 1.0:
        raise ValidationError("prior must lie strictly inside (0, 1)")
    if np.max(np.abs(rho0.mat - rho1.mat)) <= IDENTICAL_ATOL:
        return float(min(pi0, 1.0 - pi0))
    lam0, lam1, w = _spectral_pair(rho0, rho1)
    return float(kernels.min_weighted_q_s_spectral(lam0, lam1, w, float(pi0)))


def fidelity(rho0: DensityMatrix, rho1: DensityMatrix) -> float:
    """Uhlmann fidelity (tr sqrt(sqrt(rho0) rho1 sqrt(rho0)))^2."""
    _check_same_dim(rho0, rho1)
    root = matrix_power(rho0.mat, 0.5)
    inner = root @ rho1.mat @ root
    w = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    # sub-cutoff eigenvalues are rank noise whose square roots would pollute
    # the trace; drop them before summing
    cut = 1e-12 * max(float(np.max(np.abs(w))), 1e-300)
    w = np.where(w > cut, w, 0.0)
    return float(min(np.sum(np.sqrt(w)) ** 2, 1.0))


def bounds_report(rho0: DensityMatrix, rho1: DensityMatrix) -> BoundsReport:
    """All single-copy error bounds for a pair of states.

    The chain fid_lower_pe <= helstrom_pe <= p_qc <= half_overlap_root <=
    fid_upper_pe holds up to solver tolerance and is checked here.
    """
    _check_same_dim(rho0, rho1)
    pe = helstrom_error(rho0, rho1, 0.5)
    p_qc = quantum_chernoff(rho0, rho1).q / 2.0
    half_overlap = float(
        np.trace(matrix_power(rho0.mat, 0.5) @ matrix_power(rho1.mat, 0.5)).real / 2.0
    )
    fid = fidelity(rho0, rho1)
    upper = float(np.sqrt(fid) / 2.0)
    lower = float((1.0 - np.sqrt(max(1.0 - fid, 0.0))) / 2.0)
    chain = (lower, pe, p_qc, half_overlap, upper)
    for left, right in zip(chain, chain[1:]):
        if left > right + 1e-9:
            raise ArithmeticError(
                f"bound chain violated: {chain} (this indicates a numerics bug)"
            )
    return BoundsReport(
        helstrom_pe=pe,
        p_qc=p_qc,
        half_overlap_root=half_overlap,
        fidelity=fid,
        fid_upper_pe=upper,
        fid_lower_pe=lower,
    )


def _bloch_angle_cos(q0: QubitState, q1: QubitState) -> float:
    r0, r1 = q0.r, q1.r
    if r0 == 0.0 or r1 == 0.0:
        return 1.0
    c = float(np.dot(q0.bloch, q1.bloch) / (r0 * r1))
    return float(np.clip(c, -1.0, 1.0))


def qubit_q_s_closed(q0: QubitState, q1: QubitState, s: float) -> float:
    """Closed-form Q_s for two qubits in terms of their purities and the
    angle between their Bloch vectors; agrees with :func:`quantum_q_s`."""
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"s must lie in [0, 1], got {s}")
    cos_half_sq = (1.0 + _bloch_angle_cos(q0, q1)) / 2.0
    w0 = (1.0 + q0.r) / 2.0
    w1 = (1.0 + q1.r) / 2.0
    return float(kernels.qubit_q_s(w0, w1, cos_half_sq, float(s)))


def half_power_measurement_error(rho0: DensityMatrix, rho1: DensityMatrix) -> float:
    """Equal-prior error of the projective test onto the negative eigenspace
    of sqrt(rho0) - sqrt(rho1).

    Sandwiched between the Helstrom error and half the s = 1/2 overlap trace.
    """
    _check_same_dim(rho0, rho1)
    diff = matrix_power(rho0.mat, 0.5) - matrix_power(rho1.mat, 0.5)
    dec = eig_hermitian(diff)
    neg = dec.eigenvalues < 0.0
    u = dec.eigenvectors
    e1 = (u[:, neg]) @ (u[:, neg]).conj().T
    e0 = np.eye(rho0.dim) - e1
    err = 0.5 * (np.trace(rho0.mat @ e1).real + np.trace(rho1.mat @ e0).real)
    return float(err)
