"""Tests for single-copy discrimination quantities."""

import numpy as np
import pytest

from qchernoff.chernoff import (
    binary_chernoff_closed,
    bounds_report,
    classical_chernoff,
    fidelity,
    half_power_measurement_error,
    hellinger_arc,
    helstrom_error,
    kl_divergence,
    quantum_chernoff,
    quantum_chernoff_weighted,
    quantum_q_s,
    qubit_q_s_closed,
)
from qchernoff.errors import ValidationError
from qchernoff.states import DensityMatrix, DiscreteDistribution, QubitState

from conftest import random_density, random_qubit


def dist(*probs):
    return DiscreteDistribution.from_probs(probs)


def grid_min_overlap(p0, p1, resolution=1e-6):
    """Independent oracle: grid infimum of sum p0^s p1^(1-s)."""
    s = np.arange(resolution, 1.0, resolution)
    vals = np.zeros_like(s)
    for a, b in zip(p0, p1):
        if a > 0 and b > 0:
            vals += a**s * b ** (1 - s)
    k = int(np.argmin(vals))
    return float(vals[k]), float(s[k])


class TestClassicalChernoff:
    def test_identical(self):
        res = classical_chernoff(dist(0.3, 0.7), dist(0.3, 0.7))
        assert res.q == 1.0 and res.exponent == 0.0 and res.s_star == 0.5

    def test_symmetric_coins(self):
        res = classical_chernoff(dist(0.75, 0.25), dist(0.25, 0.75))
        q_grid, s_grid = grid_min_overlap([0.75, 0.25], [0.25, 0.75])
        assert res.exponent == pytest.approx(0.5 * np.log(4.0 / 3.0), abs=1e-10)
        assert res.exponent == pytest.approx(-np.log(q_grid), abs=1e-9)
        assert res.s_star == pytest.approx(0.5, abs=1e-6)
        assert s_grid == pytest.approx(0.5, abs=1e-5)

    def test_degenerate_support_endpoint(self):
        res = classical_chernoff(dist(1.0, 0.0), dist(0.5, 0.5))
        assert res.exponent == pytest.approx(np.log(2.0), abs=1e-12)
        assert res.s_star == 0.0

    def test_alphabet_mismatch(self):
        with pytest.raises(ValidationError):
            classical_chernoff(dist(1.0), dist(0.5, 0.5))


class TestBinaryClosedForm:
    def test_symmetric_value(self):
        res = binary_chernoff_closed(0.75, 0.25)
        assert res.xi == pytest.approx(0.5, abs=1e-14)
        assert res.c == pytest.approx(0.5 * np.log(4.0 / 3.0), abs=1e-14)

    def test_indistinguishable_limit(self):
        res = binary_chernoff_closed(0.5001, 0.5)
        assert res.c < 1e-7

    def test_matches_classical_chernoff(self):
        res = binary_chernoff_closed(0.9, 0.5)
        ref = classical_chernoff(dist(0.9, 0.1), dist(0.5, 0.5))
        assert res.c == pytest.approx(ref.exponent, abs=1e-10)

    def test_rejects_degenerate(self):
        with pytest.raises(ValidationError):
            binary_chernoff_closed(1.0, 0.5)


class TestHellingerArc:
    def test_endpoints(self):
        p0, p1 = dist(0.2, 0.8), dist(0.6, 0.4)
        np.testing.assert_allclose(hellinger_arc(p0, p1, 1.0).probs, p0.probs)
        np.testing.assert_allclose(hellinger_arc(p0, p1, 0.0).probs, p1.probs)

    def test_equidistance_at_optimum(self, rng):
        for _ in range(10):
            p0 = DiscreteDistribution.from_probs(rng.dirichlet(np.ones(4)))
            p1 = DiscreteDistribution.from_probs(rng.dirichlet(np.ones(4)))
            s_star = classical_chernoff(p0, p1).s_star
            mid = hellinger_arc(p0, p1, s_star)
            assert kl_divergence(mid, p0) == pytest.approx(
                kl_divergence(mid, p1), abs=1e-8
            )

    def test_empty_common_support(self):
        from qchernoff.errors import NumericDomainError

        with pytest.raises(NumericDomainError):
            hellinger_arc(dist(1.0, 0.0), dist(0.0, 1.0), 0.5)


class TestKlDivergence:
    def test_self_divergence(self):
        p = dist(0.3, 0.7)
        assert kl_divergence(p, p) == 0.0

    def test_log_two(self):
        assert kl_divergence(dist(1.0, 0.0), dist(0.5, 0.5)) == pytest.approx(
            np.log(2.0)
        )

    def test_support_violation(self):
        assert kl_divergence(dist(0.5, 0.5), dist(1.0, 0.0)) == np.inf


class TestHelstrom:
    def test_identical_states(self, rng):
        rho = random_density(rng, 3)
        assert helstrom_error(rho, rho) == pytest.approx(0.5, abs=1e-12)

    def test_orthogonal_pure(self):
        r0 = DensityMatrix.from_matrix(np.diag([1.0, 0.0]))
        r1 = DensityMatrix.from_matrix(np.diag([0.0, 1.0]))
        assert helstrom_error(r0, r1) == pytest.approx(0.0, abs=1e-14)

    def test_bloch_example(self):
        # qubit trace norm equals the Euclidean Bloch distance: |dr| = 0.6 sqrt 2
        r0 = DensityMatrix.from_bloch((0.6, 0.0, 0.0))
        r1 = DensityMatrix.from_bloch((0.0, 0.6, 0.0))
        expected = (1.0 - 0.3 * np.sqrt(2.0)) / 2.0
        assert helstrom_error(r0, r1) == pytest.approx(expected, abs=1e-12)

    def test_dim_mismatch(self, rng):
        with pytest.raises(ValidationError):
            helstrom_error(random_density(rng, 2), random_density(rng, 3))


class TestQuantumQs:
    def test_identical(self, rng):
        rho = random_density(rng, 3)
        for s in (0.0, 0.2, 0.5, 0.9, 1.0):
            assert quantum_q_s(rho, rho, s) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_pure(self):
        r0 = DensityMatrix.from_matrix(np.diag([1.0, 0.0]))
        r1 = DensityMatrix.from_matrix(np.diag([0.0, 1.0]))
        assert quantum_q_s(r0, r1, 0.5) == pytest.approx(0.0, abs=1e-14)

    def test_equal_purity_half(self):
        r0 = DensityMatrix.from_bloch((0.0, 0.0, 0.5))
        r1 = DensityMatrix.from_bloch((0.5, 0.0, 0.0))
        assert quantum_q_s(r0, r1, 0.5) == pytest.approx(
            (1.0 + np.sqrt(0.75)) / 2.0, abs=1e-12
        )


class TestQuantumChernoff:
    def test_commuting_reduces_to_classical(self, rng):
        for _ in range(20):
            d = int(rng.integers(2, 5))
            lam0 = rng.dirichlet(np.ones(d))
            lam1 = rng.dirichlet(np.ones(d))
            quantum = quantum_chernoff(
                DensityMatrix.from_matrix(np.diag(lam0)),
                DensityMatrix.from_matrix(np.diag(lam1)),
            )
            classical = classical_chernoff(
                DiscreteDistribution.from_probs(lam0),
                DiscreteDistribution.from_probs(lam1),
            )
            assert quantum.exponent == pytest.approx(classical.exponent, abs=1e-10)

    def test_pure_vs_mixed_equals_log_fidelity(self, rng):
        for _ in range(20):
            d = int(rng.integers(2, 5))
            ket = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            pure = DensityMatrix.from_ket(ket / np.linalg.norm(ket))
            mixed = random_density(rng, d, mix=0.2)
            res = quantum_chernoff(pure, mixed)
            assert res.exponent == pytest.approx(
                -np.log(fidelity(pure, mixed)), abs=1e-8
            )

    def test_equal_purity_qubits(self):
        r0 = DensityMatrix.from_bloch((0.0, 0.0, 0.5))
        r1 = DensityMatrix.from_bloch((0.5, 0.0, 0.0))
        res = quantum_chernoff(r0, r1)
        assert res.s_star == pytest.approx(0.5, abs=1e-6)
        assert res.exponent == pytest.approx(
            -np.log((1.0 + np.sqrt(0.75)) / 2.0), abs=1e-10
        )

    def test_convexity_on_grid(self, rng):
        grid = np.linspace(0.0, 1.0, 101)
        for _ in range(10):
            r0 = random_density(rng, 3)
            r1 = random_density(rng, 3)
            vals = np.array([quantum_q_s(r0, r1, s) for s in grid])
            assert np.min(np.diff(vals, 2)) >= -1e-10

    def test_unitary_invariance(self, rng):
        from qchernoff.geometry import sample_haar_unitary

        r0 = random_density(rng, 3)
        r1 = random_density(rng, 3)
        base = quantum_chernoff(r0, r1)
        u = sample_haar_unitary(3, rng)
        rot = quantum_chernoff(
            DensityMatrix.from_matrix(u @ r0.mat @ u.conj().T),
            DensityMatrix.from_matrix(u @ r1.mat @ u.conj().T),
        )
        assert rot.q == pytest.approx(base.q, abs=1e-10)

    def test_swap_symmetry(self, rng):
        r0 = random_density(rng, 3)
        r1 = random_density(rng, 3)
        ab = quantum_chernoff(r0, r1)
        ba = quantum_chernoff(r1, r0)
        assert ab.q == pytest.approx(ba.q, abs=1e-10)
        assert ab.s_star == pytest.approx(1.0 - ba.s_star, abs=1e-6)

    def test_partial_trace_monotone(self, rng):
        # tracing out a subsystem never increases the exponent
        for _ in range(10):
            r0 = random_density(rng, 4)
            r1 = random_density(rng, 4)
            full = quantum_chernoff(r0, r1).exponent
            red0 = r0.mat.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
            red1 = r1.mat.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
            reduced = quantum_chernoff(
                DensityMatrix.from_matrix(red0), DensityMatrix.from_matrix(red1)
            ).exponent
            assert reduced <= full + 1e-10

    def test_fidelity_sandwich(self, rng):
        for _ in range(20):
            r0 = random_density(rng, 3)
            r1 = random_density(rng, 3)
            f = fidelity(r0, r1)
            e = quantum_chernoff(r0, r1).exponent
            assert -0.5 * np.log(f) - 1e-9 <= e <= -np.log(f) + 1e-9


class TestWeightedBound:
    def test_equal_priors_reduction(self, rng):
        r0 = random_density(rng, 3)
        r1 = random_density(rng, 3)
        assert quantum_chernoff_weighted(r0, r1, 0.5) == pytest.approx(
            quantum_chernoff(r0, r1).q / 2.0, rel=1e-9
        )

    def test_vanishing_prior_limit(self, rng):
        r0 = random_density(rng, 2)
        r1 = random_density(rng, 2)
        assert quantum_chernoff_weighted(r0, r1, 1e-9) < 1e-6

    def test_upper_bounds_helstrom(self, rng):
        for _ in range(30):
            q0, q1 = random_qubit(rng, 0.95), random_qubit(rng, 0.95)
            r0, r1 = q0.to_density(), q1.to_density()
            assert quantum_chernoff_weighted(r0, r1, 0.3) >= helstrom_error(
                r0, r1, 0.3
            ) - 1e-12


class TestFidelity:
    def test_self_fidelity(self, rng):
        rho = random_density(rng, 4)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)

    def test_pure_overlap(self, rng):
        for _ in range(10):
            k0 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            k1 = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            k0, k1 = k0 / np.linalg.norm(k0), k1 / np.linalg.norm(k1)
            f = fidelity(DensityMatrix.from_ket(k0), DensityMatrix.from_ket(k1))
            assert f == pytest.approx(abs(np.vdot(k0, k1)) ** 2, abs=1e-10)

    def test_qubit_closed_form(self, rng):
        # F = tr(r0 r1) + 2 sqrt(det r0 det r1) in dimension two
        r0 = DensityMatrix.from_bloch((0.3, 0.0, 0.0))
        r1 = DensityMatrix.from_bloch((0.0, 0.3, 0.0))
        assert fidelity(r0, r1) == pytest.approx(0.955, abs=1e-12)
        for _ in range(20):
            a = random_qubit(rng, 0.99).to_density()
            b = random_qubit(rng, 0.99).to_density()
            closed = np.trace(a.mat @ b.mat).real + 2.0 * np.sqrt(
                np.linalg.det(a.mat).real * np.linalg.det(b.mat).real
            )
            assert fidelity(a, b) == pytest.approx(closed, abs=1e-10)


class TestBoundsReport:
    def test_identical_states(self, rng):
        rho = random_density(rng, 3)
        rep = bounds_report(rho, rho)
        assert rep.fidelity == pytest.approx(1.0, abs=1e-10)
        for v in (rep.fid_lower_pe, rep.helstrom_pe, rep.p_qc):
            assert v == pytest.approx(0.5, abs=1e-6)

    def test_pure_first_state_tightening(self, rng):
        # with a pure first state the minimized overlap equals the fidelity
        for _ in range(10):
            ket = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            pure = DensityMatrix.from_ket(ket / np.linalg.norm(ket))
            mixed = random_density(rng, 3, mix=0.3)
            rep = bounds_report(pure, mixed)
            assert rep.p_qc == pytest.approx(rep.fidelity / 2.0, abs=1e-9)

    def test_chain_ordering(self, rng):
        for _ in range(200):
            r0 = random_density(rng, int(rng.integers(2, 5)))
            r1 = random_density(rng, r0.dim)
            rep = bounds_report(r0, r1)
            chain = (
                rep.fid_lower_pe,
                rep.helstrom_pe,
                rep.p_qc,
                rep.half_overlap_root,
                rep.fid_upper_pe,
            )
            for left, right in zip(chain, chain[1:]):
                assert left <= right + 1e-12


class TestQubitClosedForm:
    def test_pure_pair(self):
        q0 = QubitState.from_vector((0.0, 0.0, 1.0))
        q1 = QubitState.from_vector((np.sin(0.7), 0.0, np.cos(0.7)))
        assert qubit_q_s_closed(q0, q1, 0.5) == pytest.approx(
            np.cos(0.35) ** 2, abs=1e-12
        )

    def test_aligned_equal_spectra(self):
        q = QubitState.from_vector((0.0, 0.0, 0.6))
        for s in (0.1, 0.5, 0.8):
            assert qubit_q_s_closed(q, q, s) == pytest.approx(1.0, abs=1e-14)

    def test_reference_value(self):
        q0 = QubitState.from_vector((0.0, 0.0, 0.5))
        q1 = QubitState.from_vector((0.5, 0.0, 0.0))
        assert qubit_q_s_closed(q0, q1, 0.5) == pytest.approx(
            (1.0 + np.sqrt(0.75)) / 2.0, abs=1e-12
        )

    def test_matches_dense_path(self, rng):
        for _ in range(100):
            q0 = random_qubit(rng)
            q1 = random_qubit(rng)
            s = rng.uniform(0.0, 1.0)
            dense = quantum_q_s(q0.to_density(), q1.to_density(), s)
            assert qubit_q_s_closed(q0, q1, s) == pytest.approx(dense, abs=1e-12)


class TestHalfPowerMeasurement:
    def test_identical(self, rng):
        rho = random_density(rng, 3)
        assert half_power_measurement_error(rho, rho) == pytest.approx(0.5)

    def test_orthogonal_pure(self):
        r0 = DensityMatrix.from_matrix(np.diag([1.0, 0.0]))
        r1 = DensityMatrix.from_matrix(np.diag([0.0, 1.0]))
        assert half_power_measurement_error(r0, r1) == pytest.approx(0.0, abs=1e-14)

    def test_sandwich(self, rng):
        for _ in range(50):
            r0 = random_qubit(rng, 0.98).to_density()
            r1 = random_qubit(rng, 0.98).to_density()
            val = half_power_measurement_error(r0, r1)
            assert helstrom_error(r0, r1) - 1e-12 <= val
            assert val <= quantum_q_s(r0, r1, 0.5) / 2.0 + 1e-12
