"""Simulation and verification laboratory for a random walk with two memory channels.

Subpackages
-----------
theory
    Closed-form constants, fixed points, regimes.
engine
    Reproducible Monte Carlo simulation (compiled kernel + numpy fallback).
stats
    Estimators and verifiers confronting simulation with theory.
cli
    Batch command-line interface (``m2walk``).
"""

__version__ = "0.1.0"

from . import theory  # noqa: F401

__all__ = ["theory", "__version__"]
