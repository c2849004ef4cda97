"""Deterministic flow of the channel fractions: dx/dt = h_p(x).

The stochastic-approximation picture couples the walk's fraction pair to
this ODE; integrating it shows which drift zero each region of the
simplex feeds.  Fixed-step classic Runge-Kutta is plenty here — the
field is a polynomial and the simplex is invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import theory

__all__ = ["OdeTrajectory", "ode_integrate", "basin_terminals", "interior_grid"]

_SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class OdeTrajectory:
    """Sampled integral curve with its terminal diagnosis.

    ``nearest_zero`` is the closest drift fixed point to the terminal
    state and ``distance`` the Euclidean gap; sampled rows stay within
    the 1e-9-expanded simplex (validated at construction).
    """

    t: np.ndarray
    x: np.ndarray  # shape (len(t), 2)
    terminal: np.ndarray
    nearest_zero: np.ndarray
    distance: float

    def __post_init__(self):
        x = self.x
        if (x[:, 0].min() < -_SIMPLEX_TOL or x[:, 1].min() < -_SIMPLEX_TOL
                or (x[:, 0] + x[:, 1]).max() > 1.0 + _SIMPLEX_TOL):
            raise ValueError("trajectory leaves the expanded simplex")


def _drift_rows(p: float, x: np.ndarray) -> np.ndarray:
    """Vectorized drift over rows of ``x`` (same formulas as theory.drift)."""
    x1 = x[..., 0]
    x2 = x[..., 1]
    a1 = (1.0 - p) * x1 + p * x2 - 1.0
    a2 = (1.0 - p) * x2 + p * x1 - 1.0
    z = 1.0 - (x1 + x2)
    zz = z * z
    return np.stack([a1 * a1 - zz - x1, a2 * a2 - zz - x2], axis=-1)


def _rk4_step(p: float, x: np.ndarray, dt: float) -> np.ndarray:
    k1 = _drift_rows(p, x)
    k2 = _drift_rows(p, x + (0.5 * dt) * k1)
    k3 = _drift_rows(p, x + (0.5 * dt) * k2)
    k4 = _drift_rows(p, x + dt * k3)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _check_simplex(x: np.ndarray) -> None:
    if (x[..., 0].min() < -_SIMPLEX_TOL or x[..., 1].min() < -_SIMPLEX_TOL
            or (x[..., 0] + x[..., 1]).max() > 1.0 + _SIMPLEX_TOL):
        raise RuntimeError("integration left the expanded channel-fraction simplex")


def ode_integrate(p, x0, t_final: float = 200.0, dt: float = 0.01,
                  record_every: int = 10) -> OdeTrajectory:
    """Integrate the drift flow from ``x0`` and diagnose the terminal point.

    Records every ``record_every``-th step (plus the start and the end)
    and matches the terminal state to the nearest drift zero.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"memory parameter must lie strictly inside (0, 1), got {p!r}")
    x = np.asarray(x0, dtype=np.float64).reshape(2).copy()
    _check_simplex(x)
    if dt <= 0 or t_final <= 0:
        raise ValueError("t_final and dt must be positive")
    record_every = max(1, int(record_every))
    steps = int(round(t_final / dt))
    ts = [0.0]
    xs = [x.copy()]
    for i in range(1, steps + 1):
        x = _rk4_step(p, x, dt)
        _check_simplex(x)
        if i % record_every == 0 or i == steps:
            ts.append(i * dt)
            xs.append(x.copy())
    zeros = np.array([r.location for r in theory.fixed_points(p)])
    gaps = np.linalg.norm(zeros - x, axis=1)
    best = int(np.argmin(gaps))
    return OdeTrajectory(
        t=np.asarray(ts), x=np.asarray(xs), terminal=x,
        nearest_zero=zeros[best], distance=float(gaps[best]))


def basin_terminals(p, starts, t_final: float = 200.0, dt: float = 0.01) -> np.ndarray:
    """Terminal states of many simultaneous integrations (rows of ``starts``).

    Vectorized version of `ode_integrate` for basin maps; checks simplex
    invariance along the way but records nothing.
    """
    p = float(p)
    x = np.atleast_2d(np.asarray(starts, dtype=np.float64)).copy()
    if x.shape[1] != 2:
        raise ValueError("starts must be points in the plane, shape (k, 2)")
    _check_simplex(x)
    steps = int(round(float(t_final) / float(dt)))
    for _ in range(steps):
        x = _rk4_step(p, x, dt)
        _check_simplex(x)
    return x


def interior_grid(spacing: int = 21) -> np.ndarray:
    """The standard interior lattice (i/s * (1 - j/s), j/s) of basin starts."""
    pts = []
    for i in range(1, spacing):
        for j in range(1, spacing):
            x2 = j / spacing
            x1 = (i / spacing) * (1.0 - x2)
            pts.append((x1, x2))
    return np.asarray(pts, dtype=np.float64)
