"""Numerical Laplace transforms, Bromwich inversion and transform criteria."""
from .catalog import CatalogEntry, catalog_entries, lookup
from .checks import (
    DecayProfile,
    check_hausdorff_young,
    check_lemma1_decay,
    check_paley_wiener,
    check_theorem1,
    lemma1_second_proof,
    nontransform_witness,
    parseval_identity,
)
from .core import (
    AnalyticMap,
    ContourSpec,
    ConvergenceError,
    DomainError,
    GridSignal,
    LaplaceKitError,
    QuadratureConfig,
    gamma,
    integrate_contour,
    integrate_real,
    lower_incomplete_gamma,
    principal_power,
)
from .hypersingular import HypersingularProblem, solve, verify_in_laplace_domain
from .report import CheckReport
from .transform import (
    InversionConfig,
    InversionResult,
    bromwich_invert,
    causality_check,
    forward_transform,
    right_limit,
)

__all__ = [
    "AnalyticMap", "CatalogEntry", "CheckReport", "ContourSpec", "ConvergenceError", "DecayProfile",
    "DomainError", "GridSignal", "HypersingularProblem", "InversionConfig", "InversionResult",
    "LaplaceKitError", "QuadratureConfig", "bromwich_invert", "catalog_entries", "causality_check",
    "check_hausdorff_young", "check_lemma1_decay", "check_paley_wiener", "check_theorem1",
    "forward_transform", "gamma", "integrate_contour", "integrate_real", "lemma1_second_proof",
    "lookup", "lower_incomplete_gamma", "nontransform_witness", "parseval_identity",
    "principal_power", "right_limit", "solve", "verify_in_laplace_domain",
]
