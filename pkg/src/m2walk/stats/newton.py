"""Damped-Newton root finder for the drift field.

Independent oracle for the closed-form fixed points: it knows nothing
about the radical formulas, only the drift and its Jacobian, so
agreement within 1e-10 is genuine cross-validation.
"""

from __future__ import annotations

import numpy as np

from .. import theory

__all__ = ["newton_fixed_points", "default_seed_grid"]


def default_seed_grid(spacing: int = 9) -> np.ndarray:
    """Triangular lattice of starting points covering the simplex.

    Includes the corners and the center so both the origin and the
    symmetric zero are always in some basin of the damped iteration.
    """
    pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0 / 3.0, 1.0 / 3.0)]
    for i in range(spacing + 1):
        for j in range(spacing + 1 - i):
            pts.append((i / spacing, j / spacing))
    return np.unique(np.asarray(pts, dtype=np.float64), axis=0)


def _newton_from(p: float, x0: np.ndarray, tol: float, max_iter: int) -> np.ndarray | None:
    x = np.array(x0, dtype=np.float64)
    norm = np.linalg.norm(theory.drift(p, x, validate=False))
    for _ in range(max_iter):
        if norm < tol:
            return x
        jac = theory.drift_jacobian(p, x, validate=False)
        try:
            delta = np.linalg.solve(jac, -theory.drift(p, x, validate=False))
        except np.linalg.LinAlgError:
            return None
        # backtracking damping: accept the longest step in {1, 1/2, ...}
        # that strictly reduces the residual
        scale = 1.0
        for _ in range(40):
            trial = x + scale * delta
            trial_norm = np.linalg.norm(theory.drift(p, trial, validate=False))
            if trial_norm < norm:
                x, norm = trial, trial_norm
                break
            scale *= 0.5
        else:
            return None
    return x if norm < tol else None


def newton_fixed_points(p, seeds=None, *, tol: float = 1e-12,
                        max_iter: int = 100, dedup: float = 1e-6) -> list[np.ndarray]:
    """All drift zeros found by damped Newton from a grid of starts.

    Non-convergent starts are dropped; converged roots are deduplicated
    at pairwise distance ``dedup`` and returned sorted by coordinates.
    """
    p = float(p)
    grid = default_seed_grid() if seeds is None else np.atleast_2d(np.asarray(seeds, float))
    roots: list[np.ndarray] = []
    for x0 in grid:
        root = _newton_from(p, x0, tol, max_iter)
        if root is None:
            continue
        # the drift is only meaningful on the simplex; Newton from corner
        # seeds can wander outside, where zeros are analytic artifacts
        if root.min() < -dedup or root.sum() > 1.0 + dedup:
            continue
        if all(np.linalg.norm(root - seen) > dedup for seen in roots):
            roots.append(root)
    roots.sort(key=lambda r: (r[0], r[1]))
    return roots
