"""Closed-form theory for the two-memory-channel random walk.

The walk's conditional step law is a function of the pair
``(fraction of +1 steps, fraction of -1 steps)``.  That pair evolves as a
stochastic-approximation process whose mean field is the quadratic drift
implemented here.  This module computes, in plain 64-bit arithmetic,
everything about the walk that has a closed form: the drift and its
Jacobian, the fixed points with their eigenstructure, the three regime
thresholds, the ballistic speed, the CLT variances, the almost-sure
fluctuation decay exponent, and the weights expanding the position
direction ``(1, -1)`` in the eigenbasis at a ballistic fixed point.

The only operation that leaves closed form is `clt_variance` above the
upper critical threshold, which solves a 2x2 continuous Lyapunov
equation.

All functions are pure and thread-safe.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_continuous_lyapunov

__all__ = [
    "P_CRITICAL_LOWER",
    "P_BALLISTIC",
    "P_CRITICAL_UPPER",
    "THRESHOLDS",
    "Regime",
    "RegimeError",
    "MemoryParam",
    "FixedPointReport",
    "AsymptoticConstants",
    "classify_regime",
    "drift",
    "drift_jacobian",
    "noise_covariance",
    "fixed_points",
    "ballistic_fixed_point",
    "eigen_at",
    "ballistic_speed",
    "clt_variance",
    "critical_clt_variance",
    "fluctuation_exponent",
    "variance_growth_exponent",
    "eigen_weights",
]

# The three regime boundaries of the memory parameter.  The two rational
# ones are exactly representable in binary floating point, so equality
# tests against them are exact; the irrational one is matched within
# 1e-15 (see `_at_upper_critical`).
P_CRITICAL_LOWER = 11.0 / 16.0       # diffusive / log-corrected boundary
P_BALLISTIC = 7.0 / 8.0              # onset of the ballistic fixed points
P_CRITICAL_UPPER = (113.0 + math.sqrt(97.0)) / 128.0   # ~0.959756738...

#: Symbolic names accepted wherever a threshold must be hit exactly
#: (decimal input cannot represent the irrational upper threshold).
THRESHOLDS = {
    "p1": P_CRITICAL_LOWER,
    "p2": P_BALLISTIC,
    "p3": P_CRITICAL_UPPER,
}

_GAMMA0 = np.array([1.0 / 3.0, 1.0 / 3.0])
_ORIGIN = np.zeros(2)
_U = np.array([1.0, -1.0])   # maps channel fractions to position: S/n = u . ratios


class RegimeError(ValueError):
    """A constant was requested outside the regime where it is defined."""


class Regime(enum.Enum):
    """Partition of the memory parameter by fluctuation behavior."""

    DIFFUSIVE = "Diffusive"
    CRITICAL_LOWER = "CriticalLower"
    SUPERDIFFUSIVE = "Superdiffusive"
    OPEN_BOUNDARY = "OpenBoundary"
    BALLISTIC_SUPERDIFFUSIVE_FLUCT = "BallisticSuperdiffusiveFluct"
    CRITICAL_UPPER = "CriticalUpper"
    BALLISTIC_GAUSSIAN_FLUCT = "BallisticGaussianFluct"


def _as_p(p) -> float:
    """Validate and unwrap a memory parameter (float or MemoryParam)."""
    if isinstance(p, MemoryParam):
        return p.p
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"memory parameter must lie strictly inside (0, 1), got {p!r}")
    return p


def _as_simplex(x, tol: float = 1e-9) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64).reshape(2)
    if x[0] < -tol or x[1] < -tol or x[0] + x[1] > 1.0 + tol:
        raise ValueError(f"point {x} is outside the channel-fraction simplex")
    return x


@dataclass(frozen=True)
class MemoryParam:
    """Memory strength of the walk, strictly inside (0, 1).

    Wraps the bare float so that endpoint values are rejected once, at
    construction.  Everything in this package also accepts a plain float.
    """

    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        if not 0.0 < self.p < 1.0:
            raise ValueError(
                f"memory parameter must lie strictly inside (0, 1), got {self.p!r}"
            )

    @property
    def regime(self) -> Regime:
        return classify_regime(self.p)


def _at_upper_critical(p: float) -> bool:
    return abs(p - P_CRITICAL_UPPER) < 1e-15


def classify_regime(p) -> Regime:
    """Classify the memory parameter into its fluctuation regime.

    The two rational thresholds are detected by exact comparison, the
    irrational upper one within 1e-15; callers who want critical behavior
    should pass the exported threshold constants (or the tokens in
    `THRESHOLDS`) rather than decimal approximations.
    """
    p = _as_p(p)
    if p == P_CRITICAL_LOWER:
        return Regime.CRITICAL_LOWER
    if p == P_BALLISTIC:
        return Regime.OPEN_BOUNDARY
    if _at_upper_critical(p):
        return Regime.CRITICAL_UPPER
    if p < P_CRITICAL_LOWER:
        return Regime.DIFFUSIVE
    if p < P_BALLISTIC:
        return Regime.SUPERDIFFUSIVE
    if p < P_CRITICAL_UPPER:
        return Regime.BALLISTIC_SUPERDIFFUSIVE_FLUCT
    return Regime.BALLISTIC_GAUSSIAN_FLUCT


# ---------------------------------------------------------------------------
# Drift field, Jacobian, noise covariance
# ---------------------------------------------------------------------------

def drift(p, x, validate: bool = True) -> np.ndarray:
    """Mean field of the channel-fraction pair.

    For ``x = (x1, x2)`` (fractions of +1 and -1 steps) the components are

        h1 = ((1-p) x1 + p x2 - 1)^2 - (1 - x1 - x2)^2 - x1
        h2 = ((1-p) x2 + p x1 - 1)^2 - (1 - x1 - x2)^2 - x2

    ``h + x`` is exactly the conditional law of the next step
    (probabilities of +1 and -1), which is how the engine consumes it.
    ``validate=False`` skips the simplex-membership check (the expression
    is polynomial, so root finders may evaluate it slightly outside).
    """
    p = _as_p(p)
    x = _as_simplex(x) if validate else np.asarray(x, dtype=np.float64).reshape(2)
    x1, x2 = x
    a1 = (1.0 - p) * x1 + p * x2 - 1.0
    a2 = (1.0 - p) * x2 + p * x1 - 1.0
    # parenthesized so the expression is bit-symmetric under a swap of x
    z = 1.0 - (x1 + x2)
    zz = z * z
    return np.array([a1 * a1 - zz - x1, a2 * a2 - zz - x2])


def drift_jacobian(p, x, validate: bool = True) -> np.ndarray:
    """Exact Jacobian of `drift` (analytic partial derivatives)."""
    p = _as_p(p)
    x = _as_simplex(x) if validate else np.asarray(x, dtype=np.float64).reshape(2)
    x1, x2 = x
    a1 = (1.0 - p) * x1 + p * x2 - 1.0
    a2 = (1.0 - p) * x2 + p * x1 - 1.0
    z = 1.0 - (x1 + x2)
    return np.array(
        [
            [2.0 * (1.0 - p) * a1 + 2.0 * z - 1.0, 2.0 * p * a1 + 2.0 * z],
            [2.0 * p * a2 + 2.0 * z, 2.0 * (1.0 - p) * a2 + 2.0 * z - 1.0],
        ]
    )


def noise_covariance(gamma) -> np.ndarray:
    """Covariance of the martingale noise at channel fractions ``gamma``.

    Equals ``diag(gamma) - gamma gamma^T``, the covariance of a single
    step vector drawn from the categorical law ``(g1, g2, 1-g1-g2)`` over
    ``{(1,0), (0,1), (0,0)}``.  Symmetric positive semidefinite on the
    simplex.
    """
    g = _as_simplex(gamma)
    g1, g2 = g
    off = -g1 * g2
    return np.array([[g1 - g1 * g1, off], [off, g2 - g2 * g2]])


# ---------------------------------------------------------------------------
# Fixed points and eigenstructure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedPointReport:
    """A zero of the drift with its linearization data.

    eigenvalues are sorted descending; eigenvectors are the columns of
    ``eigenvectors``, normalized to first component +1, matching the
    eigenvalue order.  ``stability`` is "LinearlyStable" iff the leading
    eigenvalue is negative.  ``boundary_open`` marks the one case (the
    central fixed point at the ballistic-onset parameter) where the
    leading eigenvalue vanishes and the linear test is inconclusive.
    """

    location: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    stability: str
    boundary_open: bool = False


def _discriminant(p: float) -> float:
    """Discriminant controlling existence of the ballistic fixed points."""
    return 32.0 * p * p - 52.0 * p + 21.0


def _eigen_cubic(p: float) -> float:
    """Cubic under the square root in the ballistic eigenvalues."""
    return -64.0 * p**3 + 161.0 * p**2 - 134.0 * p + 37.0


def ballistic_fixed_point(p, branch: int = +1) -> np.ndarray:
    """The asymmetric drift zero for memory above the ballistic onset.

    ``branch=+1`` gives the zero with more +1 mass (positive walk speed),
    ``branch=-1`` its mirror image with the components swapped.
    """
    p = _as_p(p)
    if p <= P_BALLISTIC:
        raise RegimeError(
            "the asymmetric fixed points exist only above the ballistic onset 7/8"
        )
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    d = _discriminant(p)
    s = math.sqrt(d)
    b = 8.0 * p * p - 10.0 * p + 3.0
    den = 2.0 * (2.0 * p - 1.0) ** 2
    x1 = (b + s) / den
    x2 = (b - s) / den
    if branch == +1:
        return np.array([x1, x2])
    return np.array([x2, x1])


def _eig2(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen decomposition of a real 2x2 matrix with real spectrum.

    Returns eigenvalues sorted descending and eigenvectors as columns,
    each normalized to first component +1.  A scalar matrix gets the
    conventional pair (1,1), (1,-1).
    """
    c, d = m[0, 0], m[0, 1]
    e, f = m[1, 0], m[1, 1]
    scale = max(abs(c), abs(d), abs(e), abs(f), 1.0)
    if abs(d) <= 1e-14 * scale and abs(e) <= 1e-14 * scale and abs(c - f) <= 1e-14 * scale:
        lam = 0.5 * (c + f)
        return np.array([lam, lam]), np.array([[1.0, 1.0], [1.0, -1.0]])
    disc = (c - f) * (c - f) + 4.0 * d * e
    if disc < -1e-12 * scale * scale:
        raise ValueError("complex eigenvalues; not expected for this drift")
    s = math.sqrt(max(disc, 0.0))
    tr = c + f
    lam1 = 0.5 * (tr + s)
    lam2 = 0.5 * (tr - s)
    vecs = np.empty((2, 2))
    for j, lam in enumerate((lam1, lam2)):
        # Both candidate rows are exact null vectors of (m - lam I); take
        # the better conditioned one.
        v1 = np.array([d, lam - c])
        v2 = np.array([lam - f, e])
        v = v1 if v1 @ v1 >= v2 @ v2 else v2
        if abs(v[0]) < 1e-300:
            raise ValueError("eigenvector cannot be normalized to first component +1")
        vecs[:, j] = v / v[0]
    return np.array([lam1, lam2]), vecs


def _closed_form_eigvals(p: float, which: str) -> np.ndarray:
    if which == "origin":
        return np.array(sorted((1.0, 4.0 * p - 3.0), reverse=True))
    if which == "center":
        return np.array(sorted((-1.0, -(7.0 - 8.0 * p) / 3.0), reverse=True))
    # ballistic pair; identical values on both branches
    cub = _eigen_cubic(p)
    s = math.sqrt(max(cub, 0.0))
    lo = (4.0 - 5.0 * p - s) / (2.0 * p - 1.0)
    hi = (4.0 - 5.0 * p + s) / (2.0 * p - 1.0)
    return np.array([hi, lo])


def _closed_form_eigvecs_ballistic(p: float, branch: int) -> np.ndarray:
    """Eigenvectors at the ballistic fixed points, columns, first comp +1.

    The radical closed form below is exact at the mirrored fixed point
    (branch -1, first component smaller).  The other branch follows from
    the exact swap symmetry of the drift: the Jacobian at the mirror
    point is the swap-conjugate P J P, so each eigenvector maps as
    (1, v) -> (v, 1), i.e. (1, 1/v) after renormalizing the first
    component to +1.  The eigenvalue pairing is column-wise identical.
    """
    sd = math.sqrt(_discriminant(p))
    sc = math.sqrt(max(_eigen_cubic(p), 0.0))
    den = 4.0 - 5.0 * p + p * sd
    v1 = -((1.0 - p) * sd - sc) / den
    v2 = -((1.0 - p) * sd + sc) / den
    if branch == -1:
        return np.array([[1.0, 1.0], [v1, v2]])
    return np.array([[1.0, 1.0], [1.0 / v1, 1.0 / v2]])


def eigen_at(p, point) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of the drift Jacobian at a drift zero.

    Returns ``(values, vectors)`` with values sorted descending and the
    matching eigenvectors as columns, first component normalized to +1.
    The decomposition comes from a direct 2x2 solver; whenever the point
    is one of the known zeros the result is additionally cross-checked
    against the closed forms, and the residual ``||J v - lam v||`` must be
    below 1e-10.

    Raises ValueError if ``point`` is not a zero of the drift (norm >=
    1e-8).
    """
    p = _as_p(p)
    point = _as_simplex(point)
    h = drift(p, point)
    if math.hypot(h[0], h[1]) >= 1e-8:
        raise ValueError(f"{point} is not a fixed point of the drift (|h| = {math.hypot(*h):.3e})")
    jac = drift_jacobian(p, point)
    vals, vecs = _eig2(jac)

    expected = None
    if np.allclose(point, _ORIGIN, atol=1e-9):
        expected = _closed_form_eigvals(p, "origin")
    elif np.allclose(point, _GAMMA0, atol=1e-9):
        expected = _closed_form_eigvals(p, "center")
        # Eigenvector convention at the central point: (1,1) pairs with -1,
        # (1,-1) with -(7-8p)/3, so the leading column flips at p = 1/2
        # (for p > 1/2 the antisymmetric direction decays slower).
        if p > 0.5:
            ref = np.array([[1.0, 1.0], [-1.0, 1.0]])
        else:
            ref = np.array([[1.0, 1.0], [1.0, -1.0]])
        if not np.allclose(vecs, ref, rtol=1e-12, atol=1e-12):
            raise RuntimeError(
                "eigenvector closed form disagrees with the direct solver"
            )
    elif p > P_BALLISTIC:
        for branch in (+1, -1):
            if np.allclose(point, ballistic_fixed_point(p, branch), atol=1e-9):
                expected = _closed_form_eigvals(p, "ballistic")
                ref = _closed_form_eigvecs_ballistic(p, branch)
                if not np.allclose(vecs, ref, rtol=1e-7, atol=1e-7):
                    raise RuntimeError(
                        "eigenvector closed form disagrees with the direct solver"
                    )
                break
    if expected is not None and not np.allclose(vals, expected, rtol=1e-9, atol=1e-9):
        raise RuntimeError("eigenvalue closed form disagrees with the direct solver")

    res = jac @ vecs - vecs * vals
    if np.abs(res).max() >= 1e-10:
        raise RuntimeError(f"eigen residual too large: {np.abs(res).max():.3e}")
    return vals, vecs


def fixed_points(p) -> list[FixedPointReport]:
    """All zeros of the drift in the unit square, with linearization data.

    Below the ballistic onset there are two (the origin and the symmetric
    center); above it, four (plus the mirror-image ballistic pair).  At
    the onset itself the two coincide with the center, which is returned
    flagged ``boundary_open`` because its leading eigenvalue vanishes.
    """
    p = _as_p(p)
    pts = [_ORIGIN, _GAMMA0]
    if p > P_BALLISTIC:
        pts.append(ballistic_fixed_point(p, +1))
        pts.append(ballistic_fixed_point(p, -1))
    reports = []
    for pt in pts:
        h = drift(p, pt)
        if math.hypot(h[0], h[1]) >= 1e-12:
            raise RuntimeError(f"claimed fixed point {pt} has drift norm {math.hypot(*h):.3e}")
        vals, vecs = eigen_at(p, pt)
        stable = "LinearlyStable" if vals[0] < 0.0 else "LinearlyUnstable"
        open_flag = p == P_BALLISTIC and np.allclose(pt, _GAMMA0)
        reports.append(
            FixedPointReport(
                location=pt,
                eigenvalues=vals,
                eigenvectors=vecs,
                stability=stable,
                boundary_open=open_flag,
            )
        )
    return reports


# ---------------------------------------------------------------------------
# Asymptotic constants
# ---------------------------------------------------------------------------

def ballistic_speed(p) -> float:
    """Magnitude of the almost-sure limit of ``S_n / n``.

    Zero below the ballistic onset, ``sqrt(32p^2-52p+21)/(2p-1)^2`` above
    it (which equals the component gap of the ballistic fixed point).
    Undefined exactly at the onset.
    """
    p = _as_p(p)
    if p == P_BALLISTIC:
        raise RegimeError("the speed at the ballistic onset 7/8 is an open case")
    if p < P_BALLISTIC:
        return 0.0
    return math.sqrt(_discriminant(p)) / (2.0 * p - 1.0) ** 2


def clt_variance(p, branch: int = +1) -> float:
    """Variance of the Gaussian limit of ``sqrt(n) (S_n/n - limit)``.

    Defined on the diffusive interval (closed form ``2/(11-16p)``) and
    above the upper critical threshold, where it is the quadratic form
    ``u^T M u`` with ``u = (1,-1)`` and ``M`` the solution of the
    continuous Lyapunov equation

        (J + I/2) M + M (J + I/2)^T = -noise_covariance(gamma)

    at the selected ballistic branch.  (That solve equals the
    time-integral of the linearized fluctuation covariance because every
    eigenvalue of ``J + I/2`` is negative here; the integral form is kept
    as an independent oracle in the test suite.)

    The two branches give the same value by the swap symmetry; both are
    computed honestly and the equality is asserted in tests rather than
    assumed here.
    """
    p = _as_p(p)
    if 0.0 < p < P_CRITICAL_LOWER:
        return 2.0 / (11.0 - 16.0 * p)
    if p > P_CRITICAL_UPPER and not _at_upper_critical(p):
        gamma = ballistic_fixed_point(p, branch)
        jac = drift_jacobian(p, gamma)
        a = jac + 0.5 * np.eye(2)
        avals, _ = _eig2(a)
        if avals[0] >= -1e-9:
            raise RegimeError(
                "Lyapunov solve rejected: the shifted Jacobian is not strictly stable"
            )
        m = solve_continuous_lyapunov(a, -noise_covariance(gamma))
        return float(_U @ m @ _U)
    raise RegimeError(
        "the plain CLT variance is defined only on the diffusive interval "
        "and above the upper critical threshold"
    )


def critical_clt_variance(p, branch: int = +1) -> float:
    """Variance constant of the log-corrected CLT at the two critical points.

    ``2/3`` at the lower threshold; at the upper threshold it is
    ``alpha^2 * v^T noise_covariance(gamma) v`` with ``v`` the leading
    eigenvector at the selected ballistic branch and ``alpha`` from
    `eigen_weights`.
    """
    p = _as_p(p)
    if p == P_CRITICAL_LOWER:
        return 2.0 / 3.0
    if _at_upper_critical(p):
        gamma = ballistic_fixed_point(p, branch)
        _, vecs = eigen_at(p, gamma)
        lead = vecs[:, 0]
        alpha, _ = eigen_weights(p, branch)
        return float(alpha * alpha * (lead @ noise_covariance(gamma) @ lead))
    raise RegimeError(
        "the log-corrected CLT variance is defined only at the two critical thresholds"
    )


def fluctuation_exponent(p) -> float:
    """Decay exponent of the almost-sure fluctuations ``S_n/n - limit``.

    On the superdiffusive interval it is ``(7-8p)/3``; between the
    ballistic onset and the upper critical threshold it is
    ``(5p-4-sqrt(-64p^3+161p^2-134p+37))/(2p-1)``.  Always in (0, 1/2) on
    its domain.
    """
    p = _as_p(p)
    if P_CRITICAL_LOWER < p < P_BALLISTIC:
        return (7.0 - 8.0 * p) / 3.0
    if P_BALLISTIC < p < P_CRITICAL_UPPER and not _at_upper_critical(p):
        return (5.0 * p - 4.0 - math.sqrt(_eigen_cubic(p))) / (2.0 * p - 1.0)
    raise RegimeError(
        "the fluctuation exponent is defined only strictly between the "
        "lower critical threshold and the upper one, excluding the ballistic onset"
    )


def variance_growth_exponent(p) -> float:
    """Growth exponent of ``Var(S_n)``: 1, then ``8(2p-1)/3``, then 2.

    On the superdiffusive interval the value equals ``2 - 2y`` with ``y``
    the `fluctuation_exponent` (asserted in tests).  At the thresholds
    themselves the growth carries logarithmic corrections and no plain
    exponent exists; those raise.
    """
    p = _as_p(p)
    if p in (P_CRITICAL_LOWER, P_BALLISTIC) or _at_upper_critical(p):
        raise RegimeError(
            "no pure power law at a critical threshold; the variance there "
            "carries logarithmic corrections (see critical_clt_variance)"
        )
    if p < P_CRITICAL_LOWER:
        return 1.0
    if p < P_BALLISTIC:
        return 8.0 * (2.0 * p - 1.0) / 3.0
    return 2.0


def eigen_weights(p, branch: int = +1) -> tuple[float, float]:
    """Expansion of the position direction ``(1,-1)`` in the eigenbasis.

    At a ballistic fixed point the eigenvectors ``v1, v2`` span the plane;
    this returns ``(alpha, beta)`` with ``alpha v1 + beta v2 = (1, -1)``
    and ``beta = 1 - alpha`` exactly (the eigenvectors' first components
    are both +1, so the first row of the expansion forces the sum).

    The mirrored branch (-1) admits the radical closed form

        alpha = -(4 - 5p + (2p-1) sqrt(D) - sqrt(C)) / (2 sqrt(C))

    with D and C the fixed-point discriminant and eigenvalue cubic.  The
    weights on the other branch follow from the swap symmetry: applying
    the coordinate swap P to the expansion and using P(1,-1) = -(1,-1)
    gives alpha_+ = -alpha_- * v, where v is the second component of the
    mirrored branch's leading eigenvector.  Both are cross-checked by a
    direct linear solve; the reconstruction residual must stay below
    1e-10.  Note the weights are genuinely branch-dependent (on the
    primary branch alpha > 1 and beta < 0), while alpha + beta = 1 holds
    on both because every eigenvector's first component is +1.
    """
    p = _as_p(p)
    if p <= P_BALLISTIC:
        raise RegimeError("eigenbasis weights exist only above the ballistic onset 7/8")
    sd = math.sqrt(_discriminant(p))
    sc = math.sqrt(_eigen_cubic(p))
    alpha = -(4.0 - 5.0 * p + (2.0 * p - 1.0) * sd - sc) / (2.0 * sc)
    if branch == +1:
        mirror_v1 = float(_closed_form_eigvecs_ballistic(p, -1)[1, 0])
        alpha = -alpha * mirror_v1
    beta = 1.0 - alpha
    gamma = ballistic_fixed_point(p, branch)
    _, vecs = eigen_at(p, gamma)
    resid = alpha * vecs[:, 0] + beta * vecs[:, 1] - _U
    if np.abs(resid).max() >= 1e-10:
        raise RuntimeError(
            f"eigenbasis expansion of (1,-1) failed to reconstruct: |res| = {np.abs(resid).max():.3e}"
        )
    return alpha, beta


class AsymptoticConstants:
    """All limit constants for one memory parameter, regime-guarded.

    Each property raises `RegimeError` when the corresponding constant is
    not defined at this ``p``, mirroring the free functions.  ``as_dict``
    collects exactly the populated ones (handy for reports).
    """

    def __init__(self, p):
        self.p = _as_p(p)
        self.regime = classify_regime(self.p)

    @property
    def speed(self) -> float:
        return ballistic_speed(self.p)

    @property
    def clt_variance(self) -> float:
        return clt_variance(self.p)

    @property
    def critical_clt_variance(self) -> float:
        return critical_clt_variance(self.p)

    @property
    def fluctuation_exponent(self) -> float:
        return fluctuation_exponent(self.p)

    @property
    def variance_growth_exponent(self) -> float:
        return variance_growth_exponent(self.p)

    @property
    def alpha(self) -> float:
        return eigen_weights(self.p)[0]

    @property
    def beta(self) -> float:
        return eigen_weights(self.p)[1]

    def as_dict(self) -> dict:
        """Name -> value for every constant defined at this ``p``."""
        out = {"p": self.p, "regime": self.regime.value}
        for name in (
            "speed",
            "clt_variance",
            "critical_clt_variance",
            "fluctuation_exponent",
            "variance_growth_exponent",
            "alpha",
            "beta",
        ):
            try:
                out[name] = getattr(self, name)
            except RegimeError:
                pass
        return out
