"""Attraction domains of steady states of finite-dimensional Lindblad dynamics."""

from .attraction import (
    AffineDoA,
    AttractionCertificate,
    Limit,
    NotSteadyError,
    Oscillatory,
    SteadyStateReport,
    affine_doa,
    asymptotic_state,
    ergodic_average,
    membership,
    steady_report,
)
from .config import DEFAULT_TOL, ToleranceSet
from .evolution import Trajectory, converged_limit, distance_curve, evolve, propagate
from .liouvillian import (
    LindbladSystem,
    Superoperator,
    apply,
    build_adjoint,
    build_generator,
    is_steady_state,
    kernel_basis,
)
from .models import PauliTerm, XxzSpec, build_xxz, reference_states, sector_projectors, spin_current_op
from .operators import (
    HilbertDim,
    devectorize,
    embed_site,
    hs_inner,
    hs_norm,
    kron,
    validate_density,
    vectorize,
)
from .spectral import (
    ConservedSet,
    SpectralData,
    full_spectrum,
    identification_vector,
    peripheral_observables,
)

__version__ = "0.1.0"

__all__ = [
    "affine_doa",
    "AffineDoA",
    "apply",
    "asymptotic_state",
    "AttractionCertificate",
    "build_adjoint",
    "build_generator",
    "build_xxz",
    "ConservedSet",
    "converged_limit",
    "DEFAULT_TOL",
    "devectorize",
    "distance_curve",
    "embed_site",
    "ergodic_average",
    "evolve",
    "full_spectrum",
    "HilbertDim",
    "hs_inner",
    "hs_norm",
    "identification_vector",
    "is_steady_state",
    "kernel_basis",
    "kron",
    "Limit",
    "LindbladSystem",
    "membership",
    "NotSteadyError",
    "Oscillatory",
    "PauliTerm",
    "peripheral_observables",
    "propagate",
    "reference_states",
    "sector_projectors",
    "SpectralData",
    "spin_current_op",
    "steady_report",
    "SteadyStateReport",
    "Superoperator",
    "ToleranceSet",
    "Trajectory",
    "validate_density",
    "vectorize",
    "XxzSpec",
]
