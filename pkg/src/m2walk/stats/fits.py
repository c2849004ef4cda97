"""Log-log regression of ensemble variances against the step count."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

from ..engine import EnsembleCheckpoint, EnsembleResult

__all__ = ["ExponentFit", "fit_exponent", "variance_exponent"]


@dataclass(frozen=True)
class ExponentFit:
    """Ordinary least squares of ``log y`` on ``log n``.

    ``slope`` is the empirical growth exponent; ``window`` records the
    ``(n_lo, n_hi)`` range actually used by the fit.
    """

    slope: float
    intercept: float
    stderr: float
    r_squared: float
    window: tuple[int, int]
    n_points: int

    def __post_init__(self):
        if self.n_points < 4:
            raise ValueError("an exponent fit needs at least four points")
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError(f"r-squared out of range: {self.r_squared}")
        if self.window[0] > self.window[1]:
            raise ValueError("fit window is inverted")


def fit_exponent(n: np.ndarray, y: np.ndarray, *,
                 window: tuple[int, int] | None = None,
                 tail_fraction: float = 0.5) -> ExponentFit:
    """Fit ``y ~ n**slope`` by OLS in log-log coordinates.

    With no explicit ``window``, the fit uses the largest
    ``tail_fraction`` of the checkpoints (by count, i.e. the top half of
    the geometric ladder) so early transients do not bias the exponent.
    Always keeps at least four points.
    """
    n = np.asarray(n, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if n.ndim != 1 or n.shape != y.shape:
        raise ValueError("n and y must be one-dimensional and equally long")
    if n.size < 4:
        raise ValueError("an exponent fit needs at least four checkpoints")
    if not (np.diff(n) > 0).all():
        raise ValueError("checkpoints must be strictly increasing")
    if window is None:
        keep = max(4, int(np.ceil(n.size * float(tail_fraction))))
        mask = np.zeros(n.size, dtype=bool)
        mask[n.size - keep:] = True
    else:
        lo, hi = window
        if lo < n[0] or hi > n[-1]:
            raise ValueError("fit window exceeds the data range")
        mask = (n >= lo) & (n <= hi)
    if mask.sum() < 4:
        raise ValueError("fit window retains fewer than four points")
    if np.any(y[mask] <= 0.0):
        raise ValueError("log-log fit requires strictly positive values")
    result = sps.linregress(np.log(n[mask]), np.log(y[mask]))
    return ExponentFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        stderr=float(result.stderr),
        r_squared=float(result.rvalue) ** 2,
        window=(int(n[mask][0]), int(n[mask][-1])),
        n_points=int(mask.sum()),
    )


def _checkpoint_variances(ensemble) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(ensemble, EnsembleResult):
        rows = ensemble.checkpoint_stats()
    else:
        rows = list(ensemble)
    if not all(isinstance(r, EnsembleCheckpoint) for r in rows):
        raise TypeError("expected an EnsembleResult or a list of EnsembleCheckpoint")
    n = np.array([r.n for r in rows], dtype=np.float64)
    var = np.array([r.var_position for r in rows], dtype=np.float64)
    counts = np.array([r.count for r in rows])
    if counts.min() < 2:
        raise ValueError("variance needs at least two replicas")
    return n, var


def variance_exponent(ensemble, *, window: tuple[int, int] | None = None,
                      tail_fraction: float = 0.5) -> ExponentFit:
    """Empirical growth exponent of ``Var(S_n)`` across checkpoints.

    Accepts an `EnsembleResult` or the list of `EnsembleCheckpoint`
    summaries it reduces to.  Raises on degenerate (zero-variance)
    checkpoints inside the fit window rather than silently dropping
    them.
    """
    n, var = _checkpoint_variances(ensemble)
    if n.size < 4:
        raise ValueError("need at least four checkpoints to fit an exponent")
    try:
        return fit_exponent(n, var, window=window, tail_fraction=tail_fraction)
    except ValueError as exc:
        if "positive" in str(exc):
            raise ValueError("ensemble variance is degenerate (zero) in the fit window") from exc
        raise
