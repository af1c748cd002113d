"""Distinguishability under repeated identical local measurements (qubits).

The exponent is maximized over two-outcome tests E0 = a*Id + b*(m . sigma);
general M-outcome measurements are outside the search space, so the returned
value is a certified lower bound on the unrestricted optimum.  The search is
a deterministic multi-start local optimization: the objective is smooth in
the test parameters but not concave.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .errors import ValidationError
from .matcore import require_hermitian
from .states import PAULIS, DensityMatrix, DiscreteDistribution, QubitState

PURITY_ATOL = 1e-9
REGIME_S_TOL = 1e-2
DEFAULT_STARTS = 32


@dataclass(frozen=True)
class TwoOutcomePovm:
    """Two-outcome measurement; e1 is implied as Id - e0."""

    e0: np.ndarray

    @classmethod
    def from_matrix(cls, e0) -> "TwoOutcomePovm":
        e0 = require_hermitian(e0, "POVM element")
        w = np.linalg.eigvalsh(e0)
        if np.min(w) < -1e-10 or np.max(w) > 1.0 + 1e-10:
            raise ValidationError("POVM element must satisfy 0 <= E0 <= Id")
        return cls(e0=e0)

    @classmethod
    def from_bloch_form(cls, a: float, b: float, axis) -> "TwoOutcomePovm":
        axis = np.asarray(axis, dtype=np.float64)
        axis = axis / np.linalg.norm(axis)
        e0 = a * np.eye(2, dtype=np.complex128)
        for component, pauli in zip(axis, PAULIS):
            e0 = e0 + b * component * pauli
        return cls.from_matrix(e0)

    @property
    def e1(self) -> np.ndarray:
        return np.eye(self.e0.shape[0], dtype=np.complex128) - self.e0


@dataclass(frozen=True)
class LocalExponentResult:
    d_cc: float
    s_star: float
    povm: TwoOutcomePovm
    regime: str  # majority | intermediate | unanimity


def induced_distributions(
    povm: TwoOutcomePovm, rho0: DensityMatrix, rho1: DensityMatrix
):
    """Outcome distributions p_i(b) = tr(E_b rho_i) for both hypotheses."""
    if rho0.dim != rho1.dim or rho0.dim != povm.e0.shape[0]:
        raise ValidationError("POVM and states must share a dimension")
    out = []
    for rho in (rho0, rho1):
        p = float(np.clip(np.trace(povm.e0 @ rho.mat).real, 0.0, 1.0))
        out.append(DiscreteDistribution.from_probs([p, 1.0 - p]))
    return out[0], out[1]


def _classify_regime(s_star: float) -> str:
    if abs(s_star - 0.5) <= REGIME_S_TOL:
        return "majority"
    if min(s_star, 1.0 - s_star) <= REGIME_S_TOL:
        return "unanimity"
    return "intermediate"


def _unit(v):
    norm = np.linalg.norm(v)
    if norm < 1e-14:
        return None
    return v / norm


def _fibonacci_sphere(count: int) -> np.ndarray:
    k = np.arange(count)
    z = 1.0 - 2.0 * (k + 0.5) / count
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    s = np.sqrt(1.0 - z * z)
    return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=1)


def _start_points(r0: np.ndarray, r1: np.ndarray, count: int) -> list[np.ndarray]:
    """Deterministic start list in the unconstrained parameterization.

    The list is prefix-stable: the first k entries do not depend on `count`,
    so enlarging the start budget can only improve the optimum.
    """
    axes = []
    for cand in (_unit(r0 - r1), _unit(r0), _unit(r1), _unit(r0 + r1)):
        if cand is not None:
            axes.append(cand)
    axes.extend(_fibonacci_sphere(12))
    starts = []
    # sin-parameterization: x0 -> a, x1 -> b/min(a, 1-a), (x2, x3) -> axis
    for a, c in ((0.5, 1.0), (0.5, 0.6), (0.35, 0.9), (0.65, 0.9)):
        for axis in axes:
            polar = float(np.arccos(np.clip(axis[2], -1.0, 1.0)))
            azim = float(np.arctan2(axis[1], axis[0]))
            starts.append(
                np.array([np.arcsin(2.0 * a - 1.0), np.arcsin(c), polar, azim])
            )
            if len(starts) >= count:
                return starts
    return starts


def _povm_from_params(x) -> TwoOutcomePovm:
    a = 0.5 + 0.5 * np.sin(x[0])
    b = np.sin(x[1]) * min(a, 1.0 - a)
    axis = np.array(
        [
            np.sin(x[2]) * np.cos(x[3]),
            np.sin(x[2]) * np.sin(x[3]),
            np.cos(x[2]),
        ]
    )
    return TwoOutcomePovm.from_bloch_form(a, b, axis)


def d_cc_qubit(
    q0: QubitState, q1: QubitState, starts: int = DEFAULT_STARTS
) -> LocalExponentResult:
    """Best classical Chernoff exponent over two-outcome qubit tests.

    Multi-start Nelder-Mead over the measurement parameters with the exact
    stationary-point solution of the inner (convex) s-minimization.  At least
    one state must be strictly mixed; pure pairs go to :func:`d_cc_pure`.
    """
    if q0.is_pure(PURITY_ATOL) and q1.is_pure(PURITY_ATOL):
        raise ValidationError("both states are pure; use d_cc_pure")
    if starts < 1:
        raise ValidationError("need at least one start")
    r0 = np.ascontiguousarray(q0.bloch, dtype=np.float64)
    r1 = np.ascontiguousarray(q1.bloch, dtype=np.float64)
    if np.max(np.abs(r0 - r1)) <= 1e-14:
        povm = TwoOutcomePovm.from_bloch_form(0.5, 0.5, (0.0, 0.0, 1.0))
        return LocalExponentResult(d_cc=0.0, s_star=0.5, povm=povm, regime="majority")
    best_val = np.inf
    best_x = None
    for x0 in _start_points(r0, r1, starts):
        res = minimize(
            kernels.dcc_objective,
            x0,
            args=(r0, r1),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000},
        )
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = res.x
    povm = _povm_from_params(best_x)
    p0, p1 = induced_distributions(povm, q0.to_density(), q1.to_density())
    exponent, s_star = kernels.bernoulli_chernoff(
        float(p0.probs[0]), float(p1.probs[0])
    )
    # report the (equivalent) exponent recomputed from the recovered POVM
    return LocalExponentResult(
        d_cc=float(exponent),
        s_star=float(s_star),
        povm=povm,
        regime=_classify_regime(float(s_star)),
    )


def d_cc_pure(psi0, psi1) -> float:
    """Local exponent for two pure states: -log of the squared overlap.

    Equals the collective exponent for such pairs (a unanimity-vote protocol
    attains it); orthogonal states give an infinite exponent.
    """
    from .multicopy import _pure_overlap

    if isinstance(psi0, QubitState) and isinstance(psi1, QubitState):
        for q in (psi0, psi1):
            if not q.is_pure(PURITY_ATOL):
                raise ValidationError("state is not pure")
        # overlap from the Bloch angle; exact at antipodal vectors where the
        # ket construction would leave rounding residue
        cos_theta = float(np.dot(psi0.bloch, psi1.bloch) / (psi0.r * psi1.r))
        c = max((1.0 + np.clip(cos_theta, -1.0, 1.0)) / 2.0, 0.0)
    else:
        k0 = _pure_overlap(psi0)
        k1 = _pure_overlap(psi1)
        if k0.shape != k1.shape:
            raise ValidationError("states must share a dimension")
        c = float(np.abs(np.vdot(k0, k1)) ** 2)
    if c == 0.0:
        return np.inf
    return float(-np.log(c))


def r_star(
    theta: float,
    r_tol: float = 1e-4,
    saturation_tol: float = 1e-6,
    starts: int = DEFAULT_STARTS,
) -> float:
    """Majority-vote boundary for equal-purity qubits at relative angle theta.

    The largest purity r at which the local exponent still equals the
    fidelity lower bound -(1/2) log F; located by bisection.  Approaches 1 as
    theta -> 0.
    """
    if not 0.0 < theta <= np.pi:
        raise ValidationError("theta must lie in (0, pi]")

    def saturated(r: float) -> bool:
        q0 = QubitState.from_vector((0.0, 0.0, r))
        q1 = QubitState.from_vector(
            (r * np.sin(theta), 0.0, r * np.cos(theta))
        )
        bound = -0.5 * np.log(1.0 - (r * np.sin(theta / 2.0)) ** 2)
        val = d_cc_qubit(q0, q1, starts=starts).d_cc
        return val <= bound + saturation_tol

    lo, hi = 0.05, 1.0 - 1e-6
    if not saturated(lo):
        return lo
    if saturated(hi):
        return hi
    while hi - lo > r_tol:
        mid = 0.5 * (lo + hi)
        if saturated(mid):
            lo = mid
        else:
            hi = mid
    return lo
