"""Ensemble driver: replica streams, backend dispatch, checkpoint statistics.

`ensemble_run` simulates many independent replicas of one model (the
two-channel walk, the classical single-channel walk, or the three-color
urn) and records per-replica state at a sorted set of checkpoints.
Replica ``i`` always draws from the Philox stream keyed by
``(master_seed XOR model_tag, i)``, so results are a pure function of
``(model, parameters, seed)`` — independent of the backend (compiled
kernel or pure python), the thread count, and the chunking.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _fallback
from .state import (
    EnsembleCheckpoint,
    SeedSpec,
    WalkState,
    _normalize_checkpoints,
    step_distribution,
)

try:  # compiled kernel is optional; the fallback is always available
    from . import _kernel
except ImportError:  # pragma: no cover - exercised only on builds without the extension
    _kernel = None

__all__ = [
    "EnsembleResult",
    "ensemble_run",
    "available_backends",
    "resolve_backend",
    "dyadic_checkpoints",
    "log_tables",
    "sample_steps_fast",
    "sample_steps_literal",
]

_MODELS = ("walk", "erw", "urn")


def available_backends() -> tuple[str, ...]:
    return ("kernel", "fallback") if _kernel is not None else ("fallback",)


def resolve_backend(backend: str | None = None) -> str:
    """Pick the batch backend: explicit argument, else ``M2WALK_BACKEND``,
    else the compiled kernel when it imported."""
    choice = backend if backend is not None else os.environ.get("M2WALK_BACKEND")
    if choice is None:
        return "kernel" if _kernel is not None else "fallback"
    choice = str(choice).lower()
    if choice not in ("kernel", "fallback"):
        raise ValueError(f"unknown backend {backend!r}; expected 'kernel' or 'fallback'")
    if choice == "kernel" and _kernel is None:
        raise RuntimeError("the compiled kernel is not available in this build")
    return choice


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("M2WALK_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    threads = int(threads)
    if threads < 1:
        raise ValueError("thread count must be positive")
    return threads


def dyadic_checkpoints(n_max: int, start_exponent: int = 7) -> list[int]:
    """Powers of two ``2**start_exponent .. 2**floor(log2 n_max)``.

    Falls back to ``[n_max]`` when ``n_max`` is below the first rung.
    """
    n_max = int(n_max)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    top = n_max.bit_length() - 1
    if top < start_exponent:
        return [n_max]
    return [2**e for e in range(start_exponent, top + 1)]


_TABLE_CACHE: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def log_tables(n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Shared running-statistic tables, indexed by the step count ``k``.

    * ``w_log_sq[k] = (1/ln k)**2`` for ``k >= 2`` (threshold-window
      quasi-stationary weights),
    * ``scale_plain[k] = sqrt(k / (2 ln ln k))`` for ``k >= 16``
      (iterated-logarithm normalization, zero below 16 where the double
      logarithm is too small to be useful),
    * ``scale_thresh[k] = sqrt(k / (2 ln k * ln ln ln k))`` for
      ``k >= 16`` (its threshold-window analogue).

    Computed once in numpy and handed to every backend, because C and
    numpy logarithms can disagree in the last bit and the backends must
    consume identical tables to stay bit-compatible.
    """
    n_max = int(n_max)
    cached = _TABLE_CACHE.get(n_max)
    if cached is not None:
        return cached
    k = np.arange(n_max + 1, dtype=np.float64)
    ln = np.zeros(n_max + 1)
    if n_max >= 2:
        ln[2:] = np.log(k[2:])
    inv = np.zeros(n_max + 1)
    if n_max >= 2:
        inv[2:] = 1.0 / ln[2:]
    w_log_sq = inv * inv
    scale_plain = np.zeros(n_max + 1)
    scale_thresh = np.zeros(n_max + 1)
    if n_max >= 16:
        lnln = np.log(ln[16:])
        lnlnln = np.log(lnln)
        scale_plain[16:] = np.sqrt(k[16:] / (2.0 * lnln))
        scale_thresh[16:] = np.sqrt(k[16:] / (2.0 * ln[16:] * lnlnln))
    _TABLE_CACHE.clear()  # keep at most one (n_max up to 1e6 -> ~24 MB)
    _TABLE_CACHE[n_max] = (w_log_sq, scale_plain, scale_thresh)
    return _TABLE_CACHE[n_max]


@dataclass(frozen=True)
class EnsembleResult:
    """Checkpoint matrices of one ensemble, one row per replica.

    ``position`` holds the walk position (for the urn: red minus blue).
    The running-statistic matrices are populated only when the run
    tracked them: quasi-stationary sums (plain and threshold-window
    weighted), iterated-logarithm running maxima, and counts of returns
    to the origin, each snapshotted at every checkpoint.
    """

    model: str
    p: float
    n_max: int
    replicas: int
    seed: int
    backend: str
    literal: bool
    checkpoints: np.ndarray
    position: np.ndarray
    n_plus: np.ndarray | None = None
    n_minus: np.ndarray | None = None
    red: np.ndarray | None = None
    blue: np.ndarray | None = None
    green: np.ndarray | None = None
    qsl_plain: np.ndarray | None = None
    qsl_thresh: np.ndarray | None = None
    lil_plain: np.ndarray | None = None
    lil_thresh: np.ndarray | None = None
    returns: np.ndarray | None = None
    centering: np.ndarray | None = None

    def checkpoint_stats(self) -> list[EnsembleCheckpoint]:
        """Cross-replica summary of the position at each checkpoint."""
        from scipy import stats as sps

        rows = []
        for ci, n in enumerate(self.checkpoints):
            s = self.position[:, ci].astype(np.float64)
            ratio = s / float(n)
            rows.append(EnsembleCheckpoint(
                n=int(n),
                count=self.replicas,
                mean_position=float(np.mean(s)),
                var_position=float(np.var(s, ddof=1)) if self.replicas > 1 else 0.0,
                mean_ratio=float(np.mean(ratio)),
                var_ratio=float(np.var(ratio, ddof=1)) if self.replicas > 1 else 0.0,
                kurtosis=float(sps.kurtosis(s)) if self.replicas > 3 else 0.0,
            ))
        return rows


def _chunk_ranges(replicas: int, threads: int) -> list[tuple[int, int]]:
    chunks = min(threads, replicas)
    bounds = np.linspace(0, replicas, chunks + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def _run_chunks(jobs, threads: int) -> None:
    if threads == 1 or len(jobs) == 1:
        for job in jobs:
            job()
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(job) for job in jobs]
        for fut in futures:
            fut.result()  # re-raise worker errors


def ensemble_run(model: str, p, n_max: int, checkpoints, replicas: int, seed,
                 *, literal: bool = False, track: bool = False,
                 centering=None, q_first: float = 0.5,
                 threads: int | None = None, backend: str | None = None) -> EnsembleResult:
    """Simulate ``replicas`` independent copies of ``model`` up to ``n_max``.

    ``centering`` (scalar or per-replica array) shifts the ratio
    ``position/n`` inside the tracked running statistics; the two-pass
    ballistic protocol reruns the same seed with per-replica centerings
    taken from the first pass, which is why it is a parameter here
    rather than a fixed constant.
    """
    if model not in _MODELS:
        raise ValueError(f"unknown model {model!r}; expected one of {_MODELS}")
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"memory parameter must lie strictly inside (0, 1), got {p!r}")
    n_max = int(n_max)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    replicas = int(replicas)
    if replicas < 1:
        raise ValueError("at least one replica is required")
    cps = _normalize_checkpoints(checkpoints, n_max)
    spec = seed if isinstance(seed, SeedSpec) else SeedSpec(int(seed))
    chosen = resolve_backend(backend)
    threads = _resolve_threads(threads)

    if model != "walk" and (track or literal or centering is not None):
        raise ValueError("literal stepping and tracked statistics apply to the walk only")
    lam = np.zeros(replicas)
    if centering is not None:
        lam = np.broadcast_to(np.asarray(centering, dtype=np.float64), (replicas,)).copy()

    shape = (replicas, cps.size)
    ranges = _chunk_ranges(replicas, threads)

    if model == "walk":
        out = {name: np.zeros(shape, dtype=np.int64)
               for name in ("position", "n_plus", "n_minus", "returns")}
        for name in ("qsl_plain", "qsl_thresh", "lil_plain", "lil_thresh"):
            out[name] = np.zeros(shape, dtype=np.float64)
        if track:
            tables = log_tables(n_max)
        else:
            tables = (np.zeros(1), np.zeros(1), np.zeros(1))

        if chosen == "kernel":
            bgens = [spec.bit_generator("walk", r) for r in range(replicas)]

            def job(lo, hi):
                return lambda: _kernel.run_walk_chunk(
                    p, n_max, cps, bgens, lo, hi, literal, track, lam,
                    tables[0], tables[1], tables[2],
                    out["position"], out["n_plus"], out["n_minus"],
                    out["qsl_plain"], out["qsl_thresh"],
                    out["lil_plain"], out["lil_thresh"], out["returns"])
        else:
            streams = [spec.stream("walk", r) for r in range(replicas)]

            def job(lo, hi):
                def run():
                    part = _fallback.run_walk_batch(
                        p, n_max, cps, streams[lo:hi], literal=literal,
                        track=track, lam=lam[lo:hi],
                        tables=tables if track else None)
                    for name, mat in part.items():
                        out[name][lo:hi] = mat
                return run

        _run_chunks([job(lo, hi) for lo, hi in ranges], threads)
        extra = {name: out[name] for name in
                 ("qsl_plain", "qsl_thresh", "lil_plain", "lil_thresh", "returns")} \
            if track else {}
        return EnsembleResult(
            model=model, p=p, n_max=n_max, replicas=replicas,
            seed=spec.master_seed, backend=chosen, literal=literal,
            checkpoints=cps, position=out["position"],
            n_plus=out["n_plus"], n_minus=out["n_minus"],
            centering=lam if track else None, **extra)

    if model == "erw":
        q_first = float(q_first)
        if not 0.0 <= q_first <= 1.0:
            raise ValueError("first-step probability must lie in [0, 1]")
        out = {name: np.zeros(shape, dtype=np.int64) for name in ("position", "n_plus")}
        if chosen == "kernel":
            bgens = [spec.bit_generator("erw", r) for r in range(replicas)]

            def job(lo, hi):
                return lambda: _kernel.run_erw_chunk(
                    p, q_first, n_max, cps, bgens, lo, hi,
                    out["position"], out["n_plus"])
        else:
            streams = [spec.stream("erw", r) for r in range(replicas)]

            def job(lo, hi):
                def run():
                    part = _fallback.run_erw_batch(p, q_first, n_max, cps, streams[lo:hi])
                    for name, mat in part.items():
                        out[name][lo:hi] = mat
                return run

        _run_chunks([job(lo, hi) for lo, hi in ranges], threads)
        return EnsembleResult(
            model=model, p=p, n_max=n_max, replicas=replicas,
            seed=spec.master_seed, backend=chosen, literal=False,
            checkpoints=cps, position=out["position"],
            n_plus=out["n_plus"], n_minus=cps[np.newaxis, :] - out["n_plus"])

    # urn
    out = {name: np.zeros(shape, dtype=np.int64) for name in ("red", "blue", "green")}
    if chosen == "kernel":
        bgens = [spec.bit_generator("urn", r) for r in range(replicas)]

        def job(lo, hi):
            return lambda: _kernel.run_urn_chunk(
                p, n_max, cps, bgens, lo, hi, out["red"], out["blue"], out["green"])
    else:
        streams = [spec.stream("urn", r) for r in range(replicas)]

        def job(lo, hi):
            def run():
                part = _fallback.run_urn_batch(p, n_max, cps, streams[lo:hi])
                for name, mat in part.items():
                    out[name][lo:hi] = mat
            return run

    _run_chunks([job(lo, hi) for lo, hi in ranges], threads)
    return EnsembleResult(
        model=model, p=p, n_max=n_max, replicas=replicas,
        seed=spec.master_seed, backend=chosen, literal=False,
        checkpoints=cps, position=out["red"] - out["blue"],
        red=out["red"], blue=out["blue"], green=out["green"])


# ---------------------------------------------------------------------------
# batch increment samplers (distributional checks of the two step paths)
# ---------------------------------------------------------------------------

def sample_steps_fast(p, state: WalkState, count: int, rng: np.random.Generator) -> np.ndarray:
    """Counts of (+1, -1, 0) from ``count`` single-draw steps at a frozen state."""
    dist = step_distribution(p, state)
    u = rng.random(int(count))
    plus = int((u < dist.q_plus).sum())
    minus = int(((u >= dist.q_plus) & (u < dist.q_plus + dist.q_minus)).sum())
    return np.array([plus, minus, int(count) - plus - minus], dtype=np.int64)


def sample_steps_literal(p, state: WalkState, count: int, rng: np.random.Generator) -> np.ndarray:
    """Counts of (+1, -1, 0) from ``count`` explicit two-channel steps."""
    p = float(p)
    g1, g2 = state.fractions
    u = rng.random((int(count), 4))
    value1 = np.where(u[:, 0] < g1, 1, np.where(u[:, 0] < g1 + g2, -1, 0))
    sign1 = np.where(u[:, 1] < p, 1, -1)
    value2 = np.where(u[:, 2] < g1, 1, np.where(u[:, 2] < g1 + g2, -1, 0))
    sign2 = np.where(u[:, 3] < p, 1, -1)
    total = sign1 * value1 + sign2 * value2
    plus = int((total >= 1).sum())
    minus = int((total <= -1).sum())
    return np.array([plus, minus, int(count) - plus - minus], dtype=np.int64)
