"""Metrics induced by the distinguishability measures, the associated priors
and eigenvalue densities, normalization constants, and samplers of random
density matrices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

from .errors import NumericDomainError, RejectionBudgetError, ValidationError
from .matcore import eig_hermitian, require_hermitian, support_cutoff
from .states import DensityMatrix, QubitState

TRACELESS_ATOL = 1e-12
PURITY_ATOL = 1e-9
CD_MAX_DIM = 10
_MP_DPS = 60


# ---------------------------------------------------------------------------
# infinitesimal metrics


def validate_tangent(drho, name: str = "tangent") -> np.ndarray:
    """A tangent direction is a traceless Hermitian matrix."""
    drho = require_hermitian(drho, name)
    scale = max(1.0, float(np.max(np.abs(drho))))
    if abs(np.trace(drho).real) > TRACELESS_ATOL * scale:
        raise ValidationError(f"{name} must be traceless")
    return drho


def _metric_sum(rho: DensityMatrix, drho, denom_fn) -> float:
    """Shared core of the eigenbasis metric sums.

    ``denom_fn(li, lj)`` supplies the denominator; pairs with both
    eigenvalues at zero must have vanishing matrix elements, otherwise the
    direction leaves the state space and the metric is singular there.
    """
    drho = validate_tangent(drho)
    if drho.shape != rho.mat.shape:
        raise ValidationError("state and tangent dimensions differ")
    dec = eig_hermitian(rho.mat)
    lam = np.clip(dec.eigenvalues, 0.0, None)
    cut = support_cutoff(lam)
    m = dec.eigenvectors.conj().T @ drho @ dec.eigenvectors
    el_tol = 1e-12 * max(1.0, float(np.max(np.abs(m))))
    total = 0.0
    d = lam.size
    for i in range(d):
        for j in range(d):
            mij = abs(m[i, j])
            if lam[i] <= cut and lam[j] <= cut:
                if mij > el_tol:
                    raise NumericDomainError(
                        "singular direction: tangent couples two zero "
                        "eigenvalues and leaves the state space"
                    )
                continue
            total += mij * mij / denom_fn(lam[i], lam[j])
    return 0.5 * total


def ds2_qc(rho: DensityMatrix, drho) -> float:
    """Quadratic line element of the collective-measurement metric:
    (1/2) sum_ij |<i|drho|j>|^2 / (sqrt(li) + sqrt(lj))^2."""
    return _metric_sum(rho, drho, lambda a, b: (np.sqrt(a) + np.sqrt(b)) ** 2)


def ds2_bures(rho: DensityMatrix, drho) -> float:
    """Bures-Uhlmann line element: (1/2) sum_ij |<i|drho|j>|^2 / (li + lj)."""
    return _metric_sum(rho, drho, lambda a, b: a + b)


def ds2_cc(rho: DensityMatrix, drho) -> float:
    """Local-measurement line element: half the Bures value on strictly mixed
    states; the full (Fubini-Study) value on pure states.

    On a pure state the direction must stay inside the pure manifold: the
    block of ``drho`` on the orthogonal complement of the state vector has to
    vanish.
    """
    if rho.is_pure(PURITY_ATOL):
        drho = validate_tangent(drho)
        dec = eig_hermitian(rho.mat)
        m = dec.eigenvectors.conj().T @ drho @ dec.eigenvectors
        # state vector is the top eigenvector (last column, ascending order)
        perp = m[:-1, :-1]
        if np.max(np.abs(perp)) > 1e-9 * max(1.0, float(np.max(np.abs(m)))):
            raise NumericDomainError(
                "direction changes the rank: the pure-state metric only "
                "covers unitary directions"
            )
        return ds2_bures(rho, drho)
    return 0.5 * ds2_bures(rho, drho)


def ds2_spectral_qc(lambdas, dlambda, generator) -> float:
    """Collective metric in spectral coordinates.

    ``sum_i dl_i^2/(8 l_i) + sum_{i<j} (sqrt(l_i) - sqrt(l_j))^2 |g_ij|^2``
    where ``generator`` holds the anti-Hermitian basis rotation.  Equals
    :func:`ds2_qc` on the reconstructed matrix direction.
    """
    lam = np.asarray(lambdas, dtype=np.float64)
    dl = np.asarray(dlambda, dtype=np.float64)
    gen = np.asarray(generator, dtype=np.complex128)
    if lam.shape != dl.shape or gen.shape != (lam.size, lam.size):
        raise ValidationError("shape mismatch between spectrum and tangent")
    if abs(dl.sum()) > TRACELESS_ATOL * max(1.0, float(np.max(np.abs(dl))) if dl.size else 1.0):
        raise ValidationError("eigenvalue differentials must sum to zero")
    if np.max(np.abs(gen + gen.conj().T)) > 1e-12 * max(1.0, float(np.max(np.abs(gen)))):
        raise ValidationError("generator must be anti-Hermitian")
    for li, dli in zip(lam, dl):
        if li <= 0.0 and dli != 0.0:
            raise NumericDomainError(
                "eigenvalue differential on a zero eigenvalue leaves the simplex"
            )
    fisher = float(np.sum(np.where(lam > 0.0, dl * dl / (8.0 * np.where(lam > 0, lam, 1.0)), 0.0)))
    rot = 0.0
    for i in range(lam.size):
        for j in range(i + 1, lam.size):
            rot += (np.sqrt(lam[i]) - np.sqrt(lam[j])) ** 2 * abs(gen[i, j]) ** 2
    return fisher + float(rot)


def fisher_simplex_metric(lambdas) -> np.ndarray:
    """Fisher metric on the eigenvalue simplex in the first d-1 coordinates:
    g_ij = delta_ij / l_i + 1 / l_d; det g = 1/(l_1 ... l_d)."""
    lam = np.asarray(lambdas, dtype=np.float64)
    if lam.size < 2:
        raise ValidationError("need at least two eigenvalues")
    if np.min(lam) <= 0.0:
        raise NumericDomainError("metric undefined on the simplex boundary")
    d = lam.size
    return np.diag(1.0 / lam[: d - 1]) + np.full((d - 1, d - 1), 1.0 / lam[d - 1])


def eigen_density_qc(lambdas) -> float:
    """Eigenvalue density of the collective-metric volume element, up to the
    simplex delta: (1/C_d) prod l_i^(-1/2) prod_{i<j} (sqrt l_i - sqrt l_j)^2.

    Returns +inf on the simplex boundary, where the density diverges
    (integrably).
    """
    lam = np.asarray(lambdas, dtype=np.float64)
    d = lam.size
    if d < 2:
        raise ValidationError("need at least two eigenvalues")
    if np.min(lam) < 0.0 or abs(lam.sum() - 1.0) > 1e-9:
        raise ValidationError("eigenvalues must form a probability vector")
    if np.min(lam) == 0.0:
        return np.inf
    root = np.sqrt(lam)
    vander = 1.0
    for i in range(d):
        for j in range(i + 1, d):
            vander *= (root[i] - root[j]) ** 2
    return float(vander / (np.prod(root) * cd_constant(d)))


# ---------------------------------------------------------------------------
# normalization constants via orthonormal polynomials


@dataclass(frozen=True)
class PolynomialBasis:
    """Polynomials orthonormal for the weight e^(-t^2) on [0, inf).

    ``coefficients[k, :k+1]`` are the monomial coefficients of the degree-k
    member; ``leading_coeffs[k]`` is its leading coefficient.
    """

    degree: int
    leading_coeffs: np.ndarray
    coefficients: np.ndarray


@lru_cache(maxsize=None)
def _moment_cholesky(degree: int):
    """Extended-precision Cholesky factor of the half-range Hermite moment
    matrix M[m, n] = Gamma((m+n+1)/2)/2.

    Gram-Schmidt on monomials is badly conditioned in double precision (the
    closed forms of the normalization constants suffer massive cancellation),
    so everything runs at 60 significant digits.
    """
    with mp.workdps(_MP_DPS):
        m = mp.matrix(degree + 1, degree + 1)
        for a in range(degree + 1):
            for b in range(degree + 1):
                m[a, b] = mp.gamma(mp.mpf(a + b + 1) / 2) / 2
        return mp.cholesky(m)


def half_gaussian_polynomial_basis(degree: int) -> PolynomialBasis:
    """Orthonormal polynomial basis up to ``degree`` for the half-range
    Gaussian weight; coefficients returned in double precision."""
    if degree < 0:
        raise ValidationError("degree must be nonnegative")
    if degree > 2 * CD_MAX_DIM:
        raise ValidationError("degree too large for reliable evaluation")
    low = _moment_cholesky(degree)
    with mp.workdps(_MP_DPS):
        inv = mp.inverse(low)
        coeff = np.zeros((degree + 1, degree + 1))
        for k in range(degree + 1):
            for j in range(k + 1):
                coeff[k, j] = float(inv[k, j])
    return PolynomialBasis(
        degree=degree,
        leading_coeffs=np.diag(coeff).copy(),
        coefficients=coeff,
    )


@lru_cache(maxsize=None)
def cd_constant(d: int) -> float:
    """Normalization constant of :func:`eigen_density_qc`:
    2^d d! / Gamma(d^2/2) times the product of the inverse squared leading
    coefficients of the half-range orthonormal polynomials."""
    if d < 2:
        raise ValidationError("dimension must be at least 2")
    if d > CD_MAX_DIM:
        raise ValidationError(f"dimension above {CD_MAX_DIM}: result would be unreliable")
    low = _moment_cholesky(d - 1)
    with mp.workdps(_MP_DPS):
        prod = mp.mpf(1)
        for k in range(d):
            prod *= low[k, k] ** 2  # = a_k^(-2)
        value = 2**d * mp.factorial(d) / mp.gamma(mp.mpf(d * d) / 2) * prod
        return float(value)


# ---------------------------------------------------------------------------
# samplers


def sample_haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed d x d unitary: QR of a complex Ginibre matrix with
    the R-diagonal phases folded in."""
    if d < 1:
        raise ValidationError("dimension must be positive")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def _sqrt_vandermonde(lams: np.ndarray) -> np.ndarray:
    """prod_{i<j} (sqrt l_i - sqrt l_j)^2 for a batch of simplex rows."""
    root = np.sqrt(lams)
    d = lams.shape[1]
    out = np.ones(lams.shape[0])
    for i in range(d):
        for j in range(i + 1, d):
            out *= (root[:, i] - root[:, j]) ** 2
    return out


@lru_cache(maxsize=None)
def _vandermonde_envelope(d: int) -> float:
    """Upper bound for the sqrt-Vandermonde factor on the simplex.

    d = 2 is exactly 1 (vertex); otherwise a deterministic search plus a
    10 percent safety margin.
    """
    if d == 2:
        return 1.0
    rng = np.random.default_rng(20240815)
    best = float(np.max(_sqrt_vandermonde(rng.dirichlet(np.ones(d), size=200_000))))
    from scipy.optimize import minimize

    x0_candidates = rng.dirichlet(np.ones(d), size=64)
    for x0 in x0_candidates:
        res = minimize(
            lambda y: -_sqrt_vandermonde(np.abs(y[None, :]) / np.sum(np.abs(y)))[0],
            x0,
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000},
        )
        best = max(best, float(-res.fun))
    return 1.1 * best


def sample_eigenvalues_qc(
    d: int,
    count: int,
    rng: np.random.Generator,
    max_proposals: int | None = None,
) -> np.ndarray:
    """Eigenvalue samples of :func:`eigen_density_qc` by rejection sampling.

    The proposal is Dirichlet(1/2), which carries exactly the l^(-1/2)
    singularities of the target so the accept ratio is the bounded
    sqrt-Vandermonde factor over its precomputed envelope.  Returns an array
    of shape (count, d); exchangeable (unsorted) components.
    """
    if d < 2:
        raise ValidationError("dimension must be at least 2")
    if count < 1:
        raise ValidationError("need a positive sample count")
    if max_proposals is None:
        max_proposals = max(4_000_000, 64 * count)
    envelope = _vandermonde_envelope(d)
    chunk = min(max(2048, 4 * count), 1 << 18)
    rows = []
    collected = 0
    used = 0
    while collected < count and used < max_proposals:
        props = rng.dirichlet(np.full(d, 0.5), size=chunk)
        ratio = _sqrt_vandermonde(props) / envelope
        hits = props[rng.uniform(size=chunk) < ratio]
        used += chunk
        if hits.shape[0]:
            rows.append(hits)
            collected += hits.shape[0]
    if collected < count:
        raise RejectionBudgetError(
            f"collected {collected}/{count} samples within {used} proposals",
            acceptance_rate=collected / used,
        )
    return np.concatenate(rows, axis=0)[:count]


def sample_density_qc(
    d: int,
    rng: np.random.Generator,
    max_proposals: int = 4_000_000,
) -> DensityMatrix:
    """Random density matrix from the collective-metric volume element:
    rejection-sampled eigenvalues combined with a Haar-random eigenbasis."""
    lam = sample_eigenvalues_qc(d, 1, rng, max_proposals=max_proposals)[0]
    u = sample_haar_unitary(d, rng)
    mat = (u * lam) @ u.conj().T
    return DensityMatrix.from_matrix(mat)


# ---------------------------------------------------------------------------
# qubit specializations


@dataclass(frozen=True)
class QubitPriorDensities:
    """Radial prior densities on the Bloch ball (angular part integrated)."""

    p_cc: float
    p_qc: float


def qubit_priors(r: float) -> QubitPriorDensities:
    """Radial densities of the local and collective volume elements:
    p_cc = (4/pi) r^2/sqrt(1-r^2), p_qc = (2/(pi-2)) (1-sqrt(1-r^2))/sqrt(1-r^2)."""
    if not 0.0 <= r < 1.0:
        raise NumericDomainError("radial density defined for 0 <= r < 1")
    sq = np.sqrt(1.0 - r * r)
    return QubitPriorDensities(
        p_cc=float(4.0 / np.pi * r * r / sq),
        p_qc=float(2.0 / (np.pi - 2.0) * (1.0 - sq) / sq),
    )


@dataclass(frozen=True)
class QubitMetricCoefficients:
    """Radial and angular coefficients: ds^2 = g_rr dr^2 + g_angular dOmega^2.
    g_rr is None on the pure-state component (no radial direction there)."""

    g_rr: float | None
    g_angular: float


def qubit_metric_coeffs(which: str, r: float) -> QubitMetricCoefficients:
    """Closed-form qubit metric coefficients.

    ``which`` is one of ``qc`` (collective), ``cc-mixed`` (local, r < 1), or
    ``cc-pure`` (local on the pure 2-sphere, angular only).
    """
    if which == "cc-pure":
        return QubitMetricCoefficients(g_rr=None, g_angular=0.25)
    if not 0.0 <= r < 1.0:
        raise NumericDomainError("radial coefficient singular at r = 1")
    g_rr = 1.0 / (8.0 * (1.0 - r * r))
    if which == "qc":
        return QubitMetricCoefficients(
            g_rr=g_rr, g_angular=float((1.0 - np.sqrt(1.0 - r * r)) / 4.0)
        )
    if which == "cc-mixed":
        return QubitMetricCoefficients(g_rr=g_rr, g_angular=r * r / 8.0)
    raise ValidationError(f"unknown metric family {which!r}")


def geodesic_qc_qubit(q0: QubitState, q1: QubitState) -> float:
    """Geodesic distance of the collective metric between two qubits.

    With r = sin(2 tau), the state space is a spherical cap of radius
    1/sqrt(2); the distance is the arc length on that cap, evaluated in
    haversine form (angles here never exceed pi/2, so this is uniformly
    accurate, unlike the arccos of the cosine rule near zero separation).
    """
    tau0 = 0.5 * np.arcsin(np.clip(q0.r, 0.0, 1.0))
    tau1 = 0.5 * np.arcsin(np.clip(q1.r, 0.0, 1.0))
    if q0.r == 0.0 or q1.r == 0.0:
        cos_theta = 1.0
    else:
        cos_theta = float(
            np.clip(np.dot(q0.bloch, q1.bloch) / (q0.r * q1.r), -1.0, 1.0)
        )
    haversine = np.sin(0.5 * (tau0 - tau1)) ** 2 + np.cos(tau0) * np.cos(
        tau1
    ) * (1.0 - cos_theta) / 2.0
    angle = 2.0 * np.arcsin(min(np.sqrt(max(haversine, 0.0)), 1.0))
    return float(angle / np.sqrt(2.0))
