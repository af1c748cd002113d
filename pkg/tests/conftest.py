"""Shared generators for randomized tests; everything takes an explicit rng."""

import numpy as np
import pytest

from qchernoff.states import DensityMatrix, QubitState


def random_psd(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g @ g.conj().T


def random_density(rng, d, mix=0.0):
    """Ginibre-induced random state, optionally mixed toward Id/d."""
    m = random_psd(rng, d)
    m = m / np.trace(m).real
    if mix:
        m = (1.0 - mix) * m + mix * np.eye(d) / d
    return DensityMatrix.from_matrix(m)


def random_qubit(rng, r_max=1.0):
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    return QubitState.from_vector(v * rng.uniform(0.0, r_max))


def random_tangent(rng, d, unit=True):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = (g + g.conj().T) / 2.0
    h -= np.trace(h).real * np.eye(d) / d
    if unit:
        h /= np.max(np.abs(np.linalg.eigvalsh(h)))
    return h


@pytest.fixture
def rng():
    return np.random.default_rng(20240815)
