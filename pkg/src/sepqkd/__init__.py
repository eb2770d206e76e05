"""Covariance-matrix simulation of separable-ancilla entanglement distribution and CVQKD."""

from .errors import DomainError, NumericalError, SepQKDError, ValidationError
from .gaussian import (
    conditional_eigenvalue_nu3,
    entropy_G,
    log_negativity,
    min_pt_symplectic_eigenvalue,
    partial_transpose,
    reduce,
    symplectic_eigenvalues,
    symplectic_eigenvalues_two_mode,
    symplectic_form,
)
from .keyrate import (
    KeyRatePoint,
    distance_to_transmittance,
    equivalent_noise_omega,
    holevo_chi_be,
    key_rate,
    mutual_information_formula,
    mutual_information_from_cm,
    plob_bound,
)
from .params import ProtocolParams, separable_bound_x
from .protocol import PipelineTrace, run_cvqkd_pipeline, run_distribution_pipeline, run_traditional_pipeline
from .separability import certify_bipartitions, distributed_entanglement, kappa_min_closed_form, nu_min_closed_form

__version__ = "0.1.0"
