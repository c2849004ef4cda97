"""Estimators, verifiers, and deterministic oracles for the walk theory."""

from .fits import ExponentFit, fit_exponent, variance_exponent
from .newton import default_seed_grid, newton_fixed_points
from .suites import DEFAULT_SEED, PRESETS, SUITES, run_suite
from .ode import OdeTrajectory, basin_terminals, interior_grid, ode_integrate
from .verify import (
    VerificationReport,
    ballistic_check,
    ballistic_reports,
    clt_check,
    critical_clt_check,
    lil_diagnostic,
    qsl_average,
    returns_count,
    returns_counts,
    sampler_equivalence_test,
    superdiffusive_fit,
    urn_embedding_test,
)

__all__ = [
    "ExponentFit",
    "fit_exponent",
    "variance_exponent",
    "VerificationReport",
    "clt_check",
    "critical_clt_check",
    "superdiffusive_fit",
    "ballistic_check",
    "ballistic_reports",
    "qsl_average",
    "lil_diagnostic",
    "returns_count",
    "returns_counts",
    "sampler_equivalence_test",
    "urn_embedding_test",
    "OdeTrajectory",
    "ode_integrate",
    "basin_terminals",
    "interior_grid",
    "newton_fixed_points",
    "default_seed_grid",
    "run_suite",
    "SUITES",
    "PRESETS",
    "DEFAULT_SEED",
]
