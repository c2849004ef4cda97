"""Verifiers that confront simulation output with the theory predictions.

Every verifier returns a `VerificationReport` whose verdict is forced by
the numbers: PASS iff |estimate - theory_value| <= tolerance, with
DIAGNOSTIC reserved for quantities (like iterated-logarithm extrema)
that converge too slowly to gate a build on.  Tolerances are explicit
arguments; the defaults are the package's standard acceptance values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as sps

from .. import theory
from ..engine import EnsembleResult, ensemble_run

__all__ = [
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
]

_VERDICTS = ("PASS", "FAIL", "DIAGNOSTIC")


@dataclass(frozen=True)
class VerificationReport:
    """One theory-vs-simulation comparison, with its provenance.

    The verdict is not free-form: PASS requires the estimate to lie
    within ``tolerance`` of ``theory_value`` (enforced at construction),
    so a report can never claim success its numbers don't support.
    """

    name: str
    theory_value: float
    estimate: float
    uncertainty: float
    tolerance: float
    verdict: str
    provenance: dict
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict != "DIAGNOSTIC":
            within = abs(self.estimate - self.theory_value) <= self.tolerance
            if within != (self.verdict == "PASS"):
                raise ValueError(
                    f"verdict {self.verdict} contradicts |{self.estimate} - "
                    f"{self.theory_value}| vs tolerance {self.tolerance}")

    @classmethod
    def build(cls, name, theory_value, estimate, uncertainty, tolerance,
              provenance, details=None, diagnostic=False) -> "VerificationReport":
        theory_value = float(theory_value)
        estimate = float(estimate)
        if diagnostic:
            verdict = "DIAGNOSTIC"
        else:
            verdict = "PASS" if abs(estimate - theory_value) <= tolerance else "FAIL"
        return cls(name=name, theory_value=theory_value, estimate=estimate,
                   uncertainty=float(uncertainty), tolerance=float(tolerance),
                   verdict=verdict, provenance=dict(provenance),
                   details=dict(details or {}))

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _require_walk(result: EnsembleResult) -> None:
    if not isinstance(result, EnsembleResult) or result.model != "walk":
        raise ValueError("this verifier consumes a walk EnsembleResult")


def _provenance(result: EnsembleResult) -> dict:
    return {
        "seed": result.seed,
        "replicas": result.replicas,
        "n": int(result.checkpoints[-1]),
        "p": result.p,
        "backend": result.backend,
    }


def _variance_se(sample: np.ndarray) -> float:
    """Standard error of the unbiased sample variance (kurtosis-aware).

    Var(s^2) = (m4 - s^4 (R-3)/(R-1)) / R with m4 the central fourth
    moment — the normal-theory shortcut 2 s^4/(R-1) underestimates badly
    for the heavy-tailed and bimodal ensembles this package produces.
    """
    sample = np.asarray(sample, dtype=np.float64)
    r = sample.size
    if r < 4:
        return float("inf")
    centered = sample - sample.mean()
    s2 = float(centered.dot(centered) / (r - 1))
    m4 = float(np.mean(centered**4))
    return math.sqrt(max(m4 - s2 * s2 * (r - 3) / (r - 1), 0.0) / r)


def _branch_centering(result: EnsembleResult) -> tuple[np.ndarray, np.ndarray]:
    """Per-replica limit assignment for the ballistic regimes.

    The branch is read off the sign of the position at the final
    checkpoint; replicas sitting exactly at zero get no branch and are
    excluded (their count is reported by the callers).
    """
    speed = theory.ballistic_speed(result.p)
    signs = np.sign(result.position[:, -1]).astype(np.float64)
    return signs * speed, signs != 0.0


def _tracked_rerun(result: EnsembleResult, centering: np.ndarray) -> EnsembleResult:
    """Replay the exact same ensemble with per-replica centerings.

    Determinism makes the replay exact; the position matrices are
    compared to prove it, so a silent seeding bug cannot slip through.
    """
    rerun = ensemble_run(
        "walk", result.p, result.n_max, result.checkpoints, result.replicas,
        result.seed, literal=result.literal, track=True,
        centering=centering, backend=result.backend)
    if not np.array_equal(rerun.position, result.position):
        raise RuntimeError("deterministic replay diverged from the first pass")
    return rerun


def _regime(p: float) -> theory.Regime:
    return theory.classify_regime(p)


# ---------------------------------------------------------------------------
# central limit checks
# ---------------------------------------------------------------------------

def clt_check(result: EnsembleResult, *, tolerance: float | None = None) -> VerificationReport:
    """Diffusive-regime variance of W = sqrt(n) * S_n/n vs the closed form."""
    _require_walk(result)
    p = result.p
    if _regime(p) is not theory.Regime.DIFFUSIVE:
        raise theory.RegimeError(
            "the diffusive central limit check applies below the lower critical point")
    n = int(result.checkpoints[-1])
    s = result.position[:, -1].astype(np.float64)
    w = math.sqrt(n) * (s / n)
    target = theory.clt_variance(p)
    tolerance = 0.05 * target if tolerance is None else float(tolerance)
    estimate = float(np.var(w, ddof=1))
    mean_w = float(np.mean(w))
    mean_se = float(np.std(w, ddof=1) / math.sqrt(len(w)))
    return VerificationReport.build(
        "clt-variance", target, estimate, _variance_se(w), tolerance,
        _provenance(result),
        details={
            "kurtosis": float(sps.kurtosis(w)),
            "mean": mean_w,
            "mean_se": mean_se,
            "mean_within_4se": bool(abs(mean_w) <= 4.0 * mean_se),
        })


def critical_clt_check(result: EnsembleResult, *,
                       tolerance: float | None = None) -> VerificationReport:
    """Threshold-point variance of W = sqrt(n/ln n) * (S_n/n - centering)."""
    _require_walk(result)
    p = result.p
    regime = _regime(p)
    if regime is theory.Regime.CRITICAL_LOWER:
        centering = np.zeros(result.replicas)
        included = np.ones(result.replicas, dtype=bool)
    elif regime is theory.Regime.CRITICAL_UPPER:
        centering, included = _branch_centering(result)
    else:
        raise theory.RegimeError(
            "the critical central limit check applies at the threshold points only")
    n = int(result.checkpoints[-1])
    ratio = result.position[:, -1].astype(np.float64) / n
    w = math.sqrt(n / math.log(n)) * (ratio - centering)
    w = w[included]
    target = theory.critical_clt_variance(p)
    tolerance = 0.35 * target if tolerance is None else float(tolerance)
    return VerificationReport.build(
        "critical-clt-variance", target, float(np.var(w, ddof=1)),
        _variance_se(w), tolerance, _provenance(result),
        details={
            "kurtosis": float(sps.kurtosis(w)),
            "excluded_unassigned": int(result.replicas - int(included.sum())),
        })


# ---------------------------------------------------------------------------
# superdiffusive window
# ---------------------------------------------------------------------------

def superdiffusive_fit(result: EnsembleResult, *, tolerance: float = 0.1,
                       tail_fraction: float = 0.5) -> VerificationReport:
    """Decay exponent of the fluctuation variance Var(S_n/n - centering).

    The primary comparison is the log-log slope against -2 y_p.  Below
    the ballistic onset the details also carry the equivalent growth fit
    of Var(S_n) against 2 - 2 y_p, plus the late-time stabilization
    correlation of the rescaled fluctuation (its a.s. limit is a
    nondegenerate random variable, so consecutive dyadic checkpoints
    should correlate strongly).
    """
    from .fits import fit_exponent

    _require_walk(result)
    p = result.p
    regime = _regime(p)
    if regime is theory.Regime.SUPERDIFFUSIVE:
        centering = np.zeros(result.replicas)
        included = np.ones(result.replicas, dtype=bool)
    elif regime is theory.Regime.BALLISTIC_SUPERDIFFUSIVE_FLUCT:
        centering, included = _branch_centering(result)
    else:
        raise theory.RegimeError(
            "the fluctuation-decay fit applies on the superdiffusive windows only")
    y = theory.fluctuation_exponent(p)
    ns = result.checkpoints.astype(np.float64)
    ratios = result.position.astype(np.float64) / ns[np.newaxis, :]
    resid = (ratios - centering[:, np.newaxis])[included]
    decay_var = np.var(resid, axis=0, ddof=1)
    fit = fit_exponent(ns, decay_var, tail_fraction=tail_fraction)

    details: dict = {
        "stderr": fit.stderr,
        "r_squared": fit.r_squared,
        "window": fit.window,
        "excluded_unassigned": int(result.replicas - int(included.sum())),
    }
    # stabilization of the rescaled fluctuation across the last dyadic pair
    if ns.size >= 2:
        late = resid[:, -2:] * ns[-2:] ** y
        if np.std(late[:, 0]) > 0 and np.std(late[:, 1]) > 0:
            details["stabilization_correlation"] = float(
                np.corrcoef(late[:, 0], late[:, 1])[0, 1])
    if regime is theory.Regime.SUPERDIFFUSIVE:
        growth = fit_exponent(ns, np.var(result.position.astype(np.float64),
                                         axis=0, ddof=1),
                              tail_fraction=tail_fraction)
        details["variance_growth_slope"] = growth.slope
        details["variance_growth_theory"] = theory.variance_growth_exponent(p)
        details["variance_growth_stderr"] = growth.stderr

    return VerificationReport.build(
        "fluctuation-decay", -2.0 * y, fit.slope, fit.stderr, tolerance,
        _provenance(result), details=details)


# ---------------------------------------------------------------------------
# ballistic regime
# ---------------------------------------------------------------------------

def ballistic_reports(result: EnsembleResult, *, epsilon: float = 0.05,
                      fraction_target: float = 0.90,
                      sign_tolerance: float = 0.045,
                      mean_tolerance: float = 0.06) -> list[VerificationReport]:
    """The three ballistic-regime comparisons as separate reports.

    (i) concentration: fraction of replicas whose |S_n/n| lies within
    ``epsilon`` of the limiting speed, gated at ``fraction_target``;
    (ii) the +/- branch split against 1/2; (iii) the ensemble mean of
    S_n/n against 0 (the two branches cancel in expectation).
    """
    _require_walk(result)
    p = result.p
    if not p > theory.P_BALLISTIC:
        raise theory.RegimeError("the ballistic checks require memory above 7/8")
    if _regime(p) is theory.Regime.OPEN_BOUNDARY:  # pragma: no cover - guarded above
        raise theory.RegimeError("behavior at the onset itself is outside the theory")
    speed = theory.ballistic_speed(p)
    n = int(result.checkpoints[-1])
    ratio = result.position[:, -1].astype(np.float64) / n
    replicas = result.replicas
    prov = _provenance(result)

    near = np.abs(np.abs(ratio) - speed) <= epsilon
    fraction = float(np.mean(near))
    fraction_se = math.sqrt(max(fraction * (1.0 - fraction), 0.0) / replicas)
    concentration = VerificationReport.build(
        "ballistic-concentration", 1.0, fraction, fraction_se,
        1.0 - fraction_target, prov,
        details={"speed": speed, "epsilon": epsilon})

    signs = np.sign(ratio)
    assigned = signs != 0
    n_assigned = int(assigned.sum())
    split = float(np.mean(signs[assigned] > 0)) if n_assigned else 0.5
    split_se = math.sqrt(0.25 / n_assigned) if n_assigned else float("inf")
    sign_report = VerificationReport.build(
        "ballistic-sign-split", 0.5, split, split_se, sign_tolerance, prov,
        details={"unassigned": replicas - n_assigned})

    mean_report = VerificationReport.build(
        "ballistic-mean", 0.0, float(np.mean(ratio)),
        float(np.std(ratio, ddof=1) / math.sqrt(replicas)),
        mean_tolerance, prov)
    return [concentration, sign_report, mean_report]


def ballistic_check(result: EnsembleResult, **kwargs) -> VerificationReport:
    """Primary ballistic comparison (speed concentration); see
    `ballistic_reports` for the full set."""
    reports = ballistic_reports(result, **kwargs)
    primary = reports[0]
    extra = dict(primary.details)
    extra["sign_split"] = reports[1].estimate
    extra["sign_split_pass"] = reports[1].passed
    extra["mean_ratio"] = reports[2].estimate
    extra["mean_ratio_pass"] = reports[2].passed
    return VerificationReport(
        name=primary.name, theory_value=primary.theory_value,
        estimate=primary.estimate, uncertainty=primary.uncertainty,
        tolerance=primary.tolerance, verdict=primary.verdict,
        provenance=primary.provenance, details=extra)


# ---------------------------------------------------------------------------
# quadratic strong law and iterated logarithm
# ---------------------------------------------------------------------------

def _tracked(result: EnsembleResult, attr: str) -> np.ndarray:
    mat = getattr(result, attr)
    if mat is None:
        raise ValueError(
            "ensemble was run without running statistics; pass track=True")
    return mat


def _qsl_inputs(result: EnsembleResult) -> tuple[str, np.ndarray, np.ndarray, int]:
    """Resolve the QSL form, sums, inclusion mask and excluded count."""
    p = result.p
    regime = _regime(p)
    if regime in (theory.Regime.DIFFUSIVE, theory.Regime.BALLISTIC_GAUSSIAN_FLUCT):
        form = "plain"
    elif regime in (theory.Regime.CRITICAL_LOWER, theory.Regime.CRITICAL_UPPER):
        form = "threshold"
    else:
        raise theory.RegimeError(
            "the quadratic strong law holds below the lower critical point, "
            "above the upper one, and at the two thresholds")
    needs_centering = regime in (theory.Regime.BALLISTIC_GAUSSIAN_FLUCT,
                                 theory.Regime.CRITICAL_UPPER)
    if needs_centering:
        centering, included = _branch_centering(result)
        if result.centering is not None and np.array_equal(result.centering, centering):
            tracked = result  # already centered (e.g. a replayed second pass)
        else:
            tracked = _tracked_rerun(result, centering)
    else:
        included = np.ones(result.replicas, dtype=bool)
        tracked = result
    attr = "qsl_plain" if form == "plain" else "qsl_thresh"
    sums = _tracked(tracked, attr)[:, -1]
    return form, sums, included, int(result.replicas - int(included.sum()))


def qsl_average(result: EnsembleResult, *,
                tolerance: float | None = None) -> VerificationReport:
    """Quadratic-strong-law average vs the limiting variance constant.

    Plain form: (1/ln n) * sum_{k<=n} (S_k/k - centering)^2 -> the
    diffusive-regime constant; threshold form replaces the weights by
    (1/ln k)^2 and the readout by 1/ln ln n.  The running sums come from
    the engine pass; for the ballistic regimes the branch centering is
    assigned from the final sign and the identical trajectory is
    replayed (two-pass protocol, exact by determinism).
    """
    _require_walk(result)
    p = result.p
    form, sums, included, excluded = _qsl_inputs(result)
    n = int(result.checkpoints[-1])
    readout = math.log(n) if form == "plain" else math.log(math.log(n))
    values = sums[included] / readout
    if form == "plain":
        target = theory.clt_variance(p)
    else:
        target = theory.critical_clt_variance(p)
    tolerance = 0.15 * target if tolerance is None else float(tolerance)
    estimate = float(np.mean(values))
    uncertainty = float(np.std(values, ddof=1) / math.sqrt(values.size)) \
        if values.size > 1 else float("inf")
    return VerificationReport.build(
        "qsl-average", target, estimate, uncertainty, tolerance,
        _provenance(result),
        details={"form": form, "excluded_unassigned": excluded,
                 "evaluation_n": n})


def lil_diagnostic(result: EnsembleResult) -> VerificationReport:
    """Iterated-logarithm running maximum, reported without a gate.

    The almost-sure extremes approach sqrt(limiting variance) at a
    doubly-logarithmic rate, far too slowly to assert at reachable n —
    so the verdict is always DIAGNOSTIC.  Evaluation starts at n = 16
    where the double logarithm turns positive.
    """
    _require_walk(result)
    p = result.p
    regime = _regime(p)
    if regime is theory.Regime.DIFFUSIVE:
        attr, target = "lil_plain", math.sqrt(theory.clt_variance(p))
        tracked = result
        included = np.ones(result.replicas, dtype=bool)
        excluded = 0
    elif regime in (theory.Regime.CRITICAL_LOWER, theory.Regime.CRITICAL_UPPER):
        attr, target = "lil_thresh", math.sqrt(theory.critical_clt_variance(p))
        if regime is theory.Regime.CRITICAL_UPPER:
            centering, included = _branch_centering(result)
            tracked = result if (result.centering is not None
                                 and np.array_equal(result.centering, centering)) \
                else _tracked_rerun(result, centering)
            excluded = int(result.replicas - int(included.sum()))
        else:
            tracked = result
            included = np.ones(result.replicas, dtype=bool)
            excluded = 0
    else:
        raise theory.RegimeError(
            "the iterated-logarithm diagnostic applies below the lower critical "
            "point and at the thresholds")
    maxima = _tracked(tracked, attr)[:, -1][included]
    estimate = float(np.mean(maxima))
    return VerificationReport.build(
        "lil-running-max", target, estimate,
        float(np.std(maxima, ddof=1) / math.sqrt(maxima.size)) if maxima.size > 1
        else float("inf"),
        math.inf, _provenance(result), diagnostic=True,
        details={"ratio_to_target": estimate / target if target else math.nan,
                 "excluded_unassigned": excluded})


# ---------------------------------------------------------------------------
# origin returns and the urn embedding
# ---------------------------------------------------------------------------

def returns_counts(result: EnsembleResult, checkpoint: int = -1) -> np.ndarray:
    """Per-replica counts of indices with S_n = 0 up to a checkpoint."""
    _require_walk(result)
    return _tracked(result, "returns")[:, checkpoint].copy()


def returns_count(result: EnsembleResult, replica: int = 0, checkpoint: int = -1) -> int:
    """Origin-visit count of one replica (every step counted, not just
    checkpoints — the engine accumulates the hits online)."""
    return int(returns_counts(result, checkpoint)[replica])


def sampler_equivalence_test(draws: int, seed, pairs=None, *,
                             min_pvalue: float = 1e-3) -> VerificationReport:
    """Chi-square equivalence of the one-draw and four-draw step samplers.

    Both samplers target the identical closed-form law; a contingency
    chi-square over the (+1, -1, 0) counts at each (p, state) pair tests
    that the four-uniform construction really collapses to it.  The
    report's estimate is the smallest p-value across the pairs, gated at
    ``min_pvalue`` (a distributional test: PASS means "not detectably
    different", so the gate is a floor, not a band).
    """
    from ..engine import WalkState, sample_steps_fast, sample_steps_literal

    draws = int(draws)
    if draws < 1000:
        raise ValueError("the chi-square comparison needs at least 1000 draws")
    if pairs is None:
        states = [WalkState(2, 2, 0), WalkState(2, 1, 1),
                  WalkState(4, 3, 1), WalkState(7, 4, 2)]
        pairs = [(p, s) for p in (0.15, 0.35, 0.5, 0.65, 0.8) for s in states]
    rng = np.random.default_rng(seed)
    pvalues = []
    for p, state in pairs:
        fast = sample_steps_fast(p, state, draws, rng)
        literal = sample_steps_literal(p, state, draws, rng)
        table = np.stack([fast, literal])
        table = table[:, table.sum(axis=0) > 0]  # drop structurally empty cells
        pvalues.append(float(sps.chi2_contingency(table, correction=False).pvalue))
    worst = min(pvalues)
    return VerificationReport.build(
        "sampler-equivalence", 1.0, worst, 0.0, 1.0 - min_pvalue,
        {"seed": seed, "draws": draws, "pairs": len(pairs)},
        details={"pvalues": pvalues, "min_pvalue": worst})


def urn_embedding_test(p, n: int, replicas: int, seed, *,
                       backend: str | None = None,
                       threads: int | None = None,
                       z_tolerance: float = 4.0) -> VerificationReport:
    """Match moments of the urn color difference against the walk.

    After ``n`` urn draws the ball total is ``n + 2`` and the difference
    (red - blue) should be distributed exactly as the walk position after
    ``n + 2`` steps.  Compares ensemble mean and variance; the estimate
    reported is the larger of the two standardized discrepancies, so
    PASS means both lie within ``z_tolerance`` pooled standard errors.
    """
    n = int(n)
    if n < 1:
        raise ValueError("need at least one urn draw")
    epoch = n + 2
    walk = ensemble_run("walk", p, epoch, [epoch], replicas, seed,
                        backend=backend, threads=threads)
    urn = ensemble_run("urn", p, epoch, [epoch], replicas, seed,
                       backend=backend, threads=threads)
    s_walk = walk.position[:, -1].astype(np.float64)
    s_urn = urn.position[:, -1].astype(np.float64)

    mean_gap = float(np.mean(s_urn) - np.mean(s_walk))
    mean_se = math.sqrt(np.var(s_walk, ddof=1) / replicas
                        + np.var(s_urn, ddof=1) / replicas)
    var_gap = float(np.var(s_urn, ddof=1) - np.var(s_walk, ddof=1))
    var_se = math.sqrt(_variance_se(s_walk) ** 2 + _variance_se(s_urn) ** 2)
    z_mean = abs(mean_gap) / mean_se if mean_se > 0 else math.inf
    z_var = abs(var_gap) / var_se if var_se > 0 else math.inf
    return VerificationReport.build(
        "urn-embedding", 0.0, max(z_mean, z_var), 1.0, z_tolerance,
        {"seed": walk.seed, "replicas": replicas, "n": epoch, "p": float(p),
         "backend": walk.backend},
        details={
            "mean_walk": float(np.mean(s_walk)), "mean_urn": float(np.mean(s_urn)),
            "var_walk": float(np.var(s_walk, ddof=1)),
            "var_urn": float(np.var(s_urn, ddof=1)),
            "z_mean": z_mean, "z_var": z_var,
        })
