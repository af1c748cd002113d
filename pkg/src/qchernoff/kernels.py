"""Hot numeric kernels.

Everything here is written in nopython-compatible numpy so a single source
serves both execution paths: the public names (``bernoulli_chernoff``,
``q_s_spectral``, ...) are numba-compiled when available and plain functions
otherwise (``QCHERNOFF_NO_NUMBA=1`` forces the plain path).  The undecorated
implementations stay importable via ``PY_IMPLS`` for equivalence tests, and
``benchmarks/bench_kernels.py`` times the two paths against each other.

Conventions shared by all kernels:

* eigenvalues are nonnegative float64 arrays, overlap weights ``w[i, j]`` are
  the squared moduli of eigenvector overlaps, so
  ``Q_s = sum_ij lam0_i**s * lam1_j**(1-s) * w[i, j]``;
* ``0**s = 0`` for ``s > 0``; at the endpoints ``s = 0, 1`` a zeroth power is
  the support indicator;
* the scalar minimizations exploit convexity of ``Q_s`` in ``s``.
"""

import numpy as np

from ._accel import maybe_jit

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0

# Interior search bracket and tolerance for the s-minimizations.  The bracket
# stays off the endpoints, whose limits are compared separately: for states
# with degenerate support the infimum may sit at s = 0 or s = 1.
S_LO = 1e-6
S_HI = 1.0 - 1e-6
S_TOL = 1e-9

SUPPORT_RTOL = 1e-12


def _bernoulli_chernoff(p, q):
    """Chernoff rate exponent for a pair of two-outcome distributions.

    ``p`` and ``q`` are the probabilities of outcome 0 under each hypothesis.
    Returns ``(exponent, s_star)`` where ``exponent = -log inf_s [p^s q^(1-s)
    + (1-p)^s (1-q)^(1-s)]``.  Degenerate supports are resolved by the
    endpoint limits; disjoint supports give an infinite exponent.
    """
    if p < 0.0:
        p = 0.0
    if p > 1.0:
        p = 1.0
    if q < 0.0:
        q = 0.0
    if q > 1.0:
        q = 1.0
    if p == q:
        return 0.0, 0.5
    pb = 1.0 - p
    qb = 1.0 - q
    if (p == 1.0 and q == 0.0) or (p == 0.0 and q == 1.0):
        return np.inf, 0.5
    # one degenerate hypothesis: the infimum sits at an endpoint
    if p == 1.0:
        return -np.log(q), 0.0
    if p == 0.0:
        return -np.log(qb), 0.0
    if q == 1.0:
        return -np.log(p), 1.0
    if q == 0.0:
        return -np.log(pb), 1.0
    if abs(p - q) < 1e-9:
        # quadratic (Fisher) approximation; avoids cancellation in the logs
        return (p - q) * (p - q) / (8.0 * p * pb), 0.5
    u = np.log(p / q)
    v = np.log(pb / qb)
    # stationary point of q*e^{s u} + qb*e^{s v}; u and v have opposite signs
    s = np.log(-qb * v / (q * u)) / (u - v)
    if s < 0.0:
        s = 0.0
    if s > 1.0:
        s = 1.0
    qs = q * np.exp(s * u) + qb * np.exp(s * v)
    return -np.log(qs), s


bernoulli_chernoff = maybe_jit(_bernoulli_chernoff)


def _pow_support_impl(x, s):
    # x >= 0; zeroth power is the support indicator (qubit spectra have max
    # eigenvalue >= 1/2, so an absolute cutoff matches SUPPORT_RTOL here)
    if s <= 0.0:
        if x > 1e-12:
            return 1.0
        return 0.0
    if s >= 1.0:
        return x
    if x <= 0.0:
        return 0.0
    return x**s


_pow_support = maybe_jit(_pow_support_impl)


def _qubit_q_s(w0, w1, cos_half_sq, s):
    """Closed-form overlap trace for two qubits from their spectra.

    ``w0``, ``w1`` are the larger eigenvalues (1 + r)/2 of the two states and
    ``cos_half_sq`` is cos^2 of half the angle between their Bloch vectors.
    """
    sin_half_sq = 1.0 - cos_half_sq
    a0 = _pow_support(w0, s)
    b0 = _pow_support(1.0 - w0, s)
    a1 = _pow_support(w1, 1.0 - s)
    b1 = _pow_support(1.0 - w1, 1.0 - s)
    return (a0 * a1 + b0 * b1) * cos_half_sq + (a0 * b1 + b0 * a1) * sin_half_sq


qubit_q_s = maybe_jit(_qubit_q_s)


def _q_s_spectral(lam0, lam1, w, s):
    """``tr(rho0^s rho1^(1-s))`` from spectra and overlap weights, 0 < s < 1."""
    d0 = lam0.shape[0]
    d1 = lam1.shape[0]
    total = 0.0
    for i in range(d0):
        li = lam0[i]
        if li <= 0.0:
            continue
        ps = li**s
        row = 0.0
        for j in range(d1):
            lj = lam1[j]
            if lj <= 0.0:
                continue
            row += w[i, j] * lj ** (1.0 - s)
        total += ps * row
    return total


q_s_spectral = maybe_jit(_q_s_spectral)


def _q_s_spectral_deriv(lam0, lam1, w, s):
    """d/ds of the overlap trace; exact from the spectral data."""
    d0 = lam0.shape[0]
    d1 = lam1.shape[0]
    total = 0.0
    for i in range(d0):
        li = lam0[i]
        if li <= 0.0:
            continue
        for j in range(d1):
            lj = lam1[j]
            if lj <= 0.0:
                continue
            total += w[i, j] * li**s * lj ** (1.0 - s) * (np.log(li) - np.log(lj))
    return total


q_s_spectral_deriv = maybe_jit(_q_s_spectral_deriv)


def _q_s_endpoints(lam0, lam1, w):
    """Endpoint limits of ``Q_s``: (s -> 0+, s -> 1-).

    These are the traces of one state against the support projector of the
    other.
    """
    cut0 = SUPPORT_RTOL * np.max(lam0)
    cut1 = SUPPORT_RTOL * np.max(lam1)
    q0 = 0.0
    q1 = 0.0
    for i in range(lam0.shape[0]):
        for j in range(lam1.shape[0]):
            if lam0[i] > cut0:
                q0 += w[i, j] * lam1[j]
            if lam1[j] > cut1:
                q1 += w[i, j] * lam0[i]
    return q0, q1


q_s_endpoints = maybe_jit(_q_s_endpoints)


def _min_q_s_spectral(lam0, lam1, w):
    """Minimize ``Q_s`` over s in [0, 1].

    Golden-section search on the interior bracket (valid because ``Q_s`` is
    convex), a derivative-bisection polish (value comparisons alone cannot
    place a flat minimum better than sqrt(machine eps)), then comparison
    against both endpoint limits.  Returns ``(q_min, s_star)``.
    """
    a = S_LO
    b = S_HI
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = q_s_spectral(lam0, lam1, w, c)
    fd = q_s_spectral(lam0, lam1, w, d)
    while b - a > S_TOL:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = q_s_spectral(lam0, lam1, w, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = q_s_spectral(lam0, lam1, w, d)
    if fc < fd:
        s_star, q_min = c, fc
    else:
        s_star, q_min = d, fd
    lo = max(S_LO, a - 1e-6)
    hi = min(S_HI, b + 1e-6)
    if (
        q_s_spectral_deriv(lam0, lam1, w, lo) < 0.0
        and q_s_spectral_deriv(lam0, lam1, w, hi) > 0.0
    ):
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if q_s_spectral_deriv(lam0, lam1, w, mid) < 0.0:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-15:
                break
        # the sign change brackets the true minimizer, so the polished point
        # wins regardless of value noise at the flat bottom
        s_star = 0.5 * (lo + hi)
        q_min = min(q_s_spectral(lam0, lam1, w, s_star), q_min)
    q0, q1 = q_s_endpoints(lam0, lam1, w)
    if q0 < q_min:
        q_min, s_star = q0, 0.0
    if q1 < q_min:
        q_min, s_star = q1, 1.0
    return q_min, s_star


min_q_s_spectral = maybe_jit(_min_q_s_spectral)


def _min_weighted_q_s_spectral(lam0, lam1, w, pi0):
    """Minimize ``pi0^s pi1^(1-s) Q_s`` over s (still log-convex in s)."""
    pi1 = 1.0 - pi0
    a = S_LO
    b = S_HI
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = pi0**c * pi1 ** (1.0 - c) * q_s_spectral(lam0, lam1, w, c)
    fd = pi0**d * pi1 ** (1.0 - d) * q_s_spectral(lam0, lam1, w, d)
    while b - a > S_TOL:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = pi0**c * pi1 ** (1.0 - c) * q_s_spectral(lam0, lam1, w, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = pi0**d * pi1 ** (1.0 - d) * q_s_spectral(lam0, lam1, w, d)
    val = min(fc, fd)
    q0, q1 = q_s_endpoints(lam0, lam1, w)
    val = min(val, pi1 * q0, pi0 * q1)
    return val


min_weighted_q_s_spectral = maybe_jit(_min_weighted_q_s_spectral)


def _dcc_objective(x, r0, r1):
    """Negated classical Chernoff exponent of the distributions induced by a
    two-outcome qubit test.

    The test ``E0 = a*Id + b*(m . sigma)`` is parameterized smoothly and
    without constraints: ``a = (1 + sin x0)/2``, ``b = sin(x1) * min(a, 1-a)``
    and ``m`` from spherical angles ``(x2, x3)``.  Minimizing this over ``x``
    maximizes the exponent.
    """
    a = 0.5 + 0.5 * np.sin(x[0])
    c = np.sin(x[1])
    half_width = a if a < 1.0 - a else 1.0 - a
    b = c * half_width
    sp = np.sin(x[2])
    mx = sp * np.cos(x[3])
    my = sp * np.sin(x[3])
    mz = np.cos(x[2])
    p = a + b * (mx * r0[0] + my * r0[1] + mz * r0[2])
    q = a + b * (mx * r1[0] + my * r1[1] + mz * r1[2])
    exponent, _ = bernoulli_chernoff(p, q)
    return -exponent


dcc_objective = maybe_jit(_dcc_objective)

# Raw (never-compiled) implementations, keyed by public name.  Note the raw
# functions still dispatch to the public names internally, so these are for
# single-kernel equivalence checks and benchmarks, not a fully independent
# code path; the fully interpreted path is selected with QCHERNOFF_NO_NUMBA.
PY_IMPLS = {
    "bernoulli_chernoff": _bernoulli_chernoff,
    "qubit_q_s": _qubit_q_s,
    "q_s_spectral": _q_s_spectral,
    "q_s_spectral_deriv": _q_s_spectral_deriv,
    "q_s_endpoints": _q_s_endpoints,
    "min_q_s_spectral": _min_q_s_spectral,
    "min_weighted_q_s_spectral": _min_weighted_q_s_spectral,
    "dcc_objective": _dcc_objective,
}

JIT_IMPLS = {
    "bernoulli_chernoff": bernoulli_chernoff,
    "qubit_q_s": qubit_q_s,
    "q_s_spectral": q_s_spectral,
    "q_s_spectral_deriv": q_s_spectral_deriv,
    "q_s_endpoints": q_s_endpoints,
    "min_q_s_spectral": min_q_s_spectral,
    "min_weighted_q_s_spectral": min_weighted_q_s_spectral,
    "dcc_objective": dcc_objective,
}
