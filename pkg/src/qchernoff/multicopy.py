"""Exact N-copy error probabilities and asymptotic-rate extrapolation.

The collective qubit computation exploits permutation invariance: the N-fold
product of a qubit state acts inside each total-spin block as a rescaled
exponential of the spin generator along the state's Bloch axis, so the error
probability needs only blocks of size 2j+1 instead of the full 2^N space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .errors import NumericDomainError, ValidationError
from .states import DensityMatrix, QubitState

MIXEDNESS_ATOL = 1e-9


@dataclass(frozen=True)
class SpinBlock:
    """One total-spin sector of the N-qubit permutation decomposition."""

    j: float
    multiplicity: int

    @property
    def dim(self) -> int:
        return int(round(2 * self.j)) + 1


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit of -log pe against n; slope estimates the exponent."""

    slope: float
    intercept: float
    residual: float


def classical_ncopy_error(p: float, q: float, n: int, pi0: float = 0.5) -> float:
    """Exact n-toss error probability for two biased coins.

    Sums ``min(pi0 P0(k), pi1 P1(k))`` over the binomial head counts.
    """
    if n < 1:
        raise ValidationError("need at least one observation")
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise ValidationError("head probabilities must lie in [0, 1]")
    if not 0.0 < pi0 < 1.0:
        raise ValidationError("prior must lie strictly inside (0, 1)")
    k = np.arange(n + 1)
    p0 = binom.pmf(k, n, p)
    p1 = binom.pmf(k, n, q)
    return float(np.sum(np.minimum(pi0 * p0, (1.0 - pi0) * p1)))


def spin_blocks(n: int) -> list[SpinBlock]:
    """Total-spin content of n qubits: blocks (j, multiplicity) with j from
    n/2 down to 0 or 1/2, satisfying sum multiplicity*(2j+1) = 2^n."""
    if n < 1:
        raise ValidationError("need at least one qubit")
    # multiplicities by the spin-addition recursion on doubled j
    mult = {1: 1}
    for _ in range(n - 1):
        nxt: dict[int, int] = {}
        for tj, m in mult.items():
            nxt[tj + 1] = nxt.get(tj + 1, 0) + m
            if tj >= 1:
                nxt[tj - 1] = nxt.get(tj - 1, 0) + m
        mult = nxt
    return [
        SpinBlock(j=tj / 2.0, multiplicity=mult[tj]) for tj in sorted(mult, reverse=True)
    ]


def _spin_x_z(two_j: int):
    """Spin matrices J_x, J_z for total spin j = two_j/2, basis m = j..-j."""
    j = two_j / 2.0
    m = j - np.arange(two_j + 1)
    jz = np.diag(m)
    # raising operator connects m to m+1: nonzero on the superdiagonal here
    amp = np.sqrt(j * (j + 1.0) - m[1:] * (m[1:] + 1.0))
    jplus = np.zeros((two_j + 1, two_j + 1))
    jplus[np.arange(two_j), np.arange(1, two_j + 1)] = amp
    jx = (jplus + jplus.T) / 2.0
    return jx, jz, m


def _qubit_axis_angle(q0: QubitState, q1: QubitState) -> float:
    r0, r1 = q0.r, q1.r
    if r0 == 0.0 or r1 == 0.0:
        return 0.0
    c = float(np.clip(np.dot(q0.bloch, q1.bloch) / (r0 * r1), -1.0, 1.0))
    return float(np.arccos(c))


def helstrom_ncopy_qubit(
    q0: QubitState, q1: QubitState, n: int, pi0: float = 0.5
) -> float:
    """Exact collective error probability for n copies of two mixed qubits.

    Within the spin-j block the n-copy state is
    ``exp(beta * axis.J + (n/2) log(w wbar))`` with ``e^beta = w/wbar`` and
    ``w = (1+r)/2``; the error probability is assembled from the blockwise
    trace norms of the weighted difference.  Exponents are kept in log form
    so near-pure states neither overflow nor underflow.
    """
    if n < 1:
        raise ValidationError("need at least one copy")
    if n > 64:
        raise ValidationError("collective evaluation limited to n <= 64")
    if not 0.0 < pi0 < 1.0:
        raise ValidationError("prior must lie strictly inside (0, 1)")
    if q0.r > 1.0 - MIXEDNESS_ATOL or q1.r > 1.0 - MIXEDNESS_ATOL:
        raise ValidationError(
            "states must be strictly mixed; use pure_ncopy_error for pure pairs"
        )
    pi1 = 1.0 - pi0
    theta = _qubit_axis_angle(q0, q1)
    w0 = (1.0 + q0.r) / 2.0
    w1 = (1.0 + q1.r) / 2.0
    beta0 = np.log(w0 / (1.0 - w0))
    beta1 = np.log(w1 / (1.0 - w1))
    logpref0 = 0.5 * n * (np.log(w0) + np.log1p(-w0))
    logpref1 = 0.5 * n * (np.log(w1) + np.log1p(-w1))
    total = 0.0
    for block in spin_blocks(n):
        two_j = int(round(2 * block.j))
        jx, jz, m = _spin_x_z(two_j)
        b0 = np.diag(np.exp(beta0 * m + logpref0))
        gen1 = np.cos(theta) * jz + np.sin(theta) * jx
        mu, v = np.linalg.eigh(gen1)
        b1 = (v * np.exp(beta1 * mu + logpref1)) @ v.T
        gamma = pi1 * b1 - pi0 * b0
        total += block.multiplicity * float(np.sum(np.abs(np.linalg.eigvalsh(gamma))))
    return float(max((1.0 - total) / 2.0, 0.0))


def _pure_overlap(state) -> np.ndarray:
    """Normalized ket from either a pure QubitState or explicit amplitudes."""
    if isinstance(state, QubitState):
        if not state.is_pure(MIXEDNESS_ATOL):
            raise ValidationError("state is not pure")
        theta = np.arccos(np.clip(state.bloch[2] / state.r, -1.0, 1.0))
        phi = np.arctan2(state.bloch[1], state.bloch[0])
        return np.array(
            [np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)],
            dtype=np.complex128,
        )
    psi = np.asarray(state, dtype=np.complex128).ravel()
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-9:
        raise ValidationError("ket is not normalized")
    return psi / norm


def pure_ncopy_error(q0, q1, n: int, pi0: float = 0.5) -> float:
    """Exact n-copy error for two pure states with squared overlap c:
    (1 - sqrt(1 - 4 pi0 pi1 c^n)) / 2."""
    if n < 1:
        raise ValidationError("need at least one copy")
    if not 0.0 < pi0 < 1.0:
        raise ValidationError("prior must lie strictly inside (0, 1)")
    psi0 = _pure_overlap(q0)
    psi1 = _pure_overlap(q1)
    if psi0.shape != psi1.shape:
        raise ValidationError("kets must share a dimension")
    c = float(np.abs(np.vdot(psi0, psi1)) ** 2)
    pi1 = 1.0 - pi0
    inner = max(1.0 - 4.0 * pi0 * pi1 * c**n, 0.0)
    return float((1.0 - np.sqrt(inner)) / 2.0)


def local_ncopy_error(povm, rho0: DensityMatrix, rho1: DensityMatrix, n: int,
                      pi0: float = 0.5) -> float:
    """n-copy error of repeating one fixed two-outcome measurement.

    Reduces to :func:`classical_ncopy_error` on the induced outcome
    probabilities p_i = tr(E0 rho_i).
    """
    from .localdisc import TwoOutcomePovm

    if not isinstance(povm, TwoOutcomePovm):
        povm = TwoOutcomePovm.from_matrix(povm)
    p = float(np.clip(np.trace(povm.e0 @ rho0.mat).real, 0.0, 1.0))
    q = float(np.clip(np.trace(povm.e0 @ rho1.mat).real, 0.0, 1.0))
    return classical_ncopy_error(p, q, n, pi0)


def rate_extrapolate(points) -> RateFit:
    """Fit -log pe = slope*n + intercept by least squares.

    ``points`` is a sequence of (n, pe) pairs with pe > 0; a zero error
    probability means an infinite exponent and is rejected explicitly.
    The root-mean-square fit residual is reported alongside the slope.
    """
    pts = [(float(n), float(pe)) for n, pe in points]
    if len(pts) < 3:
        raise ValidationError("need at least three points to extrapolate")
    if any(pe <= 0.0 for _, pe in pts):
        raise NumericDomainError(
            "zero error probability among points: exponent is infinite"
        )
    ns = np.array([n for n, _ in pts])
    ys = -np.log(np.array([pe for _, pe in pts]))
    coeffs = np.polyfit(ns, ys, 1)
    fitted = np.polyval(coeffs, ns)
    residual = float(np.sqrt(np.mean((ys - fitted) ** 2)))
    return RateFit(slope=float(coeffs[0]), intercept=float(coeffs[1]),
                   residual=residual)
