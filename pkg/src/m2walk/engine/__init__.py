"""Simulation engine: scalar reference dynamics plus batch backends.

The scalar functions in `state` define the dynamics; the compiled
kernel (when built) and the pure-python fallback reproduce them bit for
bit.  `ensemble_run` dispatches between backends — set the environment
variable ``M2WALK_BACKEND`` to ``kernel`` or ``fallback`` to force one.
"""

from .ensemble import (
    EnsembleResult,
    available_backends,
    dyadic_checkpoints,
    ensemble_run,
    log_tables,
    resolve_backend,
    sample_steps_fast,
    sample_steps_literal,
)
from .state import (
    MODEL_TAGS,
    EnsembleCheckpoint,
    ErwState,
    SeedSpec,
    StepDistribution,
    Trajectory,
    UrnState,
    WalkState,
    erw_init,
    erw_step,
    init_walk,
    simulate,
    increment_law,
    step_distribution,
    step_fast,
    step_literal,
    urn_init,
    urn_replacement_law,
    urn_step,
)

__all__ = [
    "MODEL_TAGS",
    "SeedSpec",
    "WalkState",
    "StepDistribution",
    "ErwState",
    "UrnState",
    "Trajectory",
    "EnsembleCheckpoint",
    "EnsembleResult",
    "init_walk",
    "increment_law",
    "step_distribution",
    "step_fast",
    "step_literal",
    "simulate",
    "erw_init",
    "erw_step",
    "urn_init",
    "urn_step",
    "urn_replacement_law",
    "ensemble_run",
    "available_backends",
    "resolve_backend",
    "dyadic_checkpoints",
    "log_tables",
    "sample_steps_fast",
    "sample_steps_literal",
]
