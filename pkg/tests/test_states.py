"""Tests for state representations and conversions."""

import numpy as np
import pytest

from qchernoff.errors import ValidationError
from qchernoff.states import (
    DensityMatrix,
    DiscreteDistribution,
    QubitState,
    density_from_spec,
    tensor_power_small,
    to_bloch,
)

from conftest import random_density, random_qubit


class TestDensityFromSpec:
    def test_bloch_origin_is_maximally_mixed(self):
        rho = density_from_spec({"bloch": [0, 0, 0]})
        np.testing.assert_allclose(rho.mat, np.eye(2) / 2)

    def test_bloch_north_pole(self):
        rho = density_from_spec({"bloch": [0, 0, 1]})
        np.testing.assert_allclose(rho.mat, np.diag([1.0, 0.0]), atol=1e-12)

    def test_ket_plus(self):
        rho = density_from_spec({"ket": {"re": [2**-0.5, 2**-0.5]}})
        np.testing.assert_allclose(rho.mat, np.full((2, 2), 0.5), atol=1e-12)

    def test_matrix_variant(self):
        rho = density_from_spec(
            {"matrix": {"dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]]}}
        )
        np.testing.assert_allclose(rho.mat, np.eye(2) / 2)

    @pytest.mark.parametrize(
        "bad",
        [
            {},
            {"bloch": [0, 0, 0], "ket": {"re": [1, 0]}},
            {"bloch": [0, 0, 1.1]},
            {"ket": {"re": [1.0, 1.0]}},  # norm != 1
            {"matrix": {"re": [[0.9, 0.0], [0.0, 0.0]]}},  # trace != 1
            {"matrix": {"re": [[1.2, 0.0], [0.0, -0.2]]}},  # negative
            "not a mapping",
        ],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValidationError):
            density_from_spec(bad)


class TestBlochRoundTrip:
    def test_maximally_mixed(self):
        assert np.allclose(to_bloch(DensityMatrix.maximally_mixed(2)).bloch, 0.0)

    def test_diagonal(self):
        rho = DensityMatrix.from_matrix(np.diag([0.9, 0.1]))
        np.testing.assert_allclose(to_bloch(rho).bloch, [0, 0, 0.8], atol=1e-12)

    def test_round_trip(self, rng):
        for _ in range(50):
            q = random_qubit(rng, r_max=0.999)
            back = to_bloch(q.to_density())
            np.testing.assert_allclose(back.bloch, q.bloch, atol=1e-12)

    def test_rejects_higher_dimension(self, rng):
        with pytest.raises(ValidationError):
            to_bloch(random_density(rng, 3))


class TestTensorPower:
    def test_single_copy(self, rng):
        rho = random_density(rng, 2)
        np.testing.assert_allclose(tensor_power_small(rho, 1).mat, rho.mat)

    def test_maximally_mixed(self):
        out = tensor_power_small(DensityMatrix.maximally_mixed(2), 3)
        np.testing.assert_allclose(out.mat, np.eye(8) / 8)

    def test_diagonal_product_distribution(self):
        p = 0.3
        out = tensor_power_small(DensityMatrix.from_matrix(np.diag([p, 1 - p])), 2)
        expected = np.diag([p * p, p * (1 - p), (1 - p) * p, (1 - p) ** 2])
        np.testing.assert_allclose(out.mat, expected, atol=1e-14)

    def test_spectrum_is_product_spectrum(self, rng):
        rho = random_density(rng, 2)
        base = np.linalg.eigvalsh(rho.mat)
        out = np.sort(np.linalg.eigvalsh(tensor_power_small(rho, 3).mat))
        expected = np.sort([a * b * c for a in base for b in base for c in base])
        np.testing.assert_allclose(out, expected, atol=1e-12)

    def test_size_limit(self):
        with pytest.raises(ValidationError):
            tensor_power_small(DensityMatrix.maximally_mixed(4), 7)


class TestInvariants:
    def test_purity_range(self, rng):
        for _ in range(30):
            d = rng.integers(2, 6)
            rho = random_density(rng, d)
            assert 1.0 / d - 1e-12 <= rho.purity() <= 1.0 + 1e-12

    def test_qubit_purity_from_bloch(self, rng):
        for _ in range(30):
            q = random_qubit(rng)
            assert q.to_density().purity() == pytest.approx(
                (1.0 + q.r**2) / 2.0, abs=1e-12
            )

    def test_small_negative_eigenvalue_clipped(self):
        rho = DensityMatrix.from_matrix(np.diag([1.0 + 5e-11, -5e-11]))
        assert np.min(np.linalg.eigvalsh(rho.mat)) >= 0.0
        assert np.trace(rho.mat).real == pytest.approx(1.0, abs=1e-14)

    def test_large_negative_eigenvalue_rejected(self):
        with pytest.raises(ValidationError):
            DensityMatrix.from_matrix(np.diag([1.0 + 1e-6, -1e-6]))


class TestDiscreteDistribution:
    def test_normalizes_within_tolerance(self):
        p = DiscreteDistribution.from_probs([0.25, 0.25, 0.5])
        assert p.probs.sum() == 1.0

    def test_rejects_negative(self):
        with pytest.raises(ValidationError):
            DiscreteDistribution.from_probs([0.75, 0.5, -0.25])

    def test_rejects_bad_sum(self):
        with pytest.raises(ValidationError):
            DiscreteDistribution.from_probs([0.4, 0.4])

    def test_qubit_vector_shape(self):
        with pytest.raises(ValidationError):
            QubitState.from_vector([0.0, 1.0])
