"""Operational distinguishability quantities between quantum states.

Helstrom error probabilities, classical and quantum Chernoff bounds and rate
exponents, local-measurement exponents, the induced metrics and priors, and
single-mode Gaussian specializations.
"""

__version__ = "0.1.0"

from ._accel import NUMBA_ENABLED
from .chernoff import (
    BinaryChernoff,
    BoundsReport,
    ChernoffResult,
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
from .errors import NumericDomainError, RejectionBudgetError, ValidationError
from .gaussian import (
    FockOracleResult,
    GaussianState,
    covariance,
    ds2_gaussian,
    fock_oracle,
    gaussian_chernoff,
    gaussian_q_s,
    jeffreys_qc_gaussian,
    n_beta_s,
    overlap,
    q_equal_covariance,
    q_isospectral,
    symplectic_squeeze,
)
from .geometry import (
    PolynomialBasis,
    QubitMetricCoefficients,
    QubitPriorDensities,
    cd_constant,
    ds2_bures,
    ds2_cc,
    ds2_qc,
    ds2_spectral_qc,
    eigen_density_qc,
    fisher_simplex_metric,
    geodesic_qc_qubit,
    half_gaussian_polynomial_basis,
    qubit_metric_coeffs,
    qubit_priors,
    sample_density_qc,
    sample_eigenvalues_qc,
    sample_haar_unitary,
)
from .localdisc import (
    LocalExponentResult,
    TwoOutcomePovm,
    d_cc_pure,
    d_cc_qubit,
    induced_distributions,
    r_star,
)
from .matcore import (
    EigenDecomposition,
    eig_hermitian,
    matrix_power,
    positive_part,
    trace_norm,
)
from .multicopy import (
    RateFit,
    SpinBlock,
    classical_ncopy_error,
    helstrom_ncopy_qubit,
    local_ncopy_error,
    pure_ncopy_error,
    rate_extrapolate,
    spin_blocks,
)
from .states import (
    DensityMatrix,
    DiscreteDistribution,
    QubitState,
    density_from_spec,
    tensor_power_small,
    to_bloch,
)

__all__ = [name for name in dir() if not name.startswith("_")]
