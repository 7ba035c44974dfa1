"""Turán determinants of normalized ultraspherical polynomials.

Evaluation, inequality checks and exact positivity certificates.
"""
from .gegenbauer import (
    ParameterDomainError,
    PolyEval,
    UltraParams,
    eval_arrays,
    eval_poly,
    neighbors_from_center,
    ode_residuals,
    unnormalized_at_one,
)
from .kernels import BACKEND
from .turan import (
    BoundFamily,
    BoundReport,
    TuranEval,
    bound_report,
    corollary_envelope,
    discriminants,
    hermite_representation,
    phi_prime_sumform,
    turan_arrays,
    turan_eval,
)
from .zeros import ConsistencyError, ZeroSet, largest_zero_bound, proof_threshold, zeros

__version__ = "0.1.0"
