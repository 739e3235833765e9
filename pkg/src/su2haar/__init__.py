"""Exact Haar integration on SU(2) and support-hull vanishing tests.

The package computes integrals of products and powers of irreducible
matrix elements in closed form over an exact radical-rational value field,
decides the convex-hull criterion for the vanishing of all power integrals,
and ships a seeded fuzzing harness plus a floating-point Monte Carlo oracle
that cross-checks every exact result.
"""

__version__ = "0.1.0"

from ._kernel import backend_name
from .scalars import HalfInt, Rational, RadicalScalar, radical_normalize
from .wigner import (
    MatrixElementIndex,
    RationalPolynomial,
    TrigPolynomial,
    conjugate_index,
    legendre_poly,
    matrix_element_trigpoly,
)
from .integrals import (
    FrequencyPair,
    ParityError,
    ProductSpec,
    frequency_of,
    integrate_product,
    monomial_theta_integral,
)
from .powers import (
    FiniteFunction,
    NoSolutionError,
    enumerate_balanced_compositions,
    gaussian_pow,
    minimal_balanced_pair,
    power_integral,
    power_integral_with_witness,
    power_scan,
)
from .hull import (
    HullCertificate,
    OriginInHullError,
    RankClass,
    SupportHull,
    hull_certificate,
    origin_in_hull,
    rank_classification,
    two_term_criterion,
    vanishing_threshold,
)
from .harness import (
    FuzzConfig,
    FuzzSummary,
    InstanceReport,
    check_proven_direction,
    classify_instance,
    fuzz,
    legendre_moment_scan,
    legendre_power_moments,
    run_verification_suite,
)
from .numeric import (
    EulerAngles,
    McEstimate,
    compose_and_check,
    eval_matrix_element,
    mc_integral,
    representation_matrix,
    sample_haar,
)

__all__ = [
    "__version__",
    "backend_name",
    "HalfInt",
    "Rational",
    "RadicalScalar",
    "radical_normalize",
    "MatrixElementIndex",
    "RationalPolynomial",
    "TrigPolynomial",
    "conjugate_index",
    "legendre_poly",
    "matrix_element_trigpoly",
    "FrequencyPair",
    "ParityError",
    "ProductSpec",
    "frequency_of",
    "integrate_product",
    "monomial_theta_integral",
    "FiniteFunction",
    "NoSolutionError",
    "enumerate_balanced_compositions",
    "gaussian_pow",
    "minimal_balanced_pair",
    "power_integral",
    "power_integral_with_witness",
    "power_scan",
    "HullCertificate",
    "OriginInHullError",
    "RankClass",
    "SupportHull",
    "hull_certificate",
    "origin_in_hull",
    "rank_classification",
    "two_term_criterion",
    "vanishing_threshold",
    "FuzzConfig",
    "FuzzSummary",
    "InstanceReport",
    "check_proven_direction",
    "classify_instance",
    "fuzz",
    "legendre_moment_scan",
    "legendre_power_moments",
    "run_verification_suite",
    "EulerAngles",
    "McEstimate",
    "compose_and_check",
    "eval_matrix_element",
    "mc_integral",
    "representation_matrix",
    "sample_haar",
]
