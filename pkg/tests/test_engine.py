"""Engine tests: scalar dynamics, seed derivation, and backend agreement.

The backend agreement tests are strict byte-equality checks: the
compiled kernel, the numpy fallback, and the scalar reference must
produce identical integers and identical floating-point bit patterns
for the same seed, regardless of thread count or chunking.
"""

import numpy as np
import pytest

from m2walk import theory
from m2walk.engine import (
    MODEL_TAGS,
    EnsembleResult,
    ErwState,
    SeedSpec,
    StepDistribution,
    UrnState,
    WalkState,
    available_backends,
    dyadic_checkpoints,
    ensemble_run,
    erw_init,
    erw_step,
    init_walk,
    log_tables,
    resolve_backend,
    sample_steps_fast,
    sample_steps_literal,
    simulate,
    step_distribution,
    step_fast,
    step_literal,
    urn_init,
    urn_replacement_law,
    urn_step,
)
from m2walk.engine._fallback import _BlockSource

HAS_KERNEL = "kernel" in available_backends()
needs_kernel = pytest.mark.skipif(not HAS_KERNEL, reason="compiled kernel not built")


class _CountingRng:
    """Wrap a Generator and count scalar uniform draws."""

    def __init__(self, rng):
        self._rng = rng
        self.calls = 0

    def random(self, *args, **kwargs):
        self.calls += 1
        return self._rng.random(*args, **kwargs)


# ---------------------------------------------------------------------------
# seeds and streams
# ---------------------------------------------------------------------------

def test_seed_spec_requires_unsigned_64_bit_master():
    SeedSpec(0)
    SeedSpec(2**64 - 1)
    with pytest.raises(ValueError):
        SeedSpec(-1)
    with pytest.raises(ValueError):
        SeedSpec(2**64)


def test_seed_spec_key_is_master_xor_model_tag_with_replica():
    spec = SeedSpec(12345)
    for model, tag in MODEL_TAGS.items():
        assert spec.key(model, 7) == (12345 ^ tag, 7)
    with pytest.raises(ValueError):
        spec.key("walk", -1)
    with pytest.raises(ValueError):
        spec.key("nonsense", 0)


def test_streams_are_reproducible_and_separated():
    spec = SeedSpec(99)
    a = spec.stream("walk", 0).random(8)
    b = spec.stream("walk", 0).random(8)
    assert np.array_equal(a, b)
    # different replicas, models, and masters all give different streams
    assert not np.array_equal(a, spec.stream("walk", 1).random(8))
    assert not np.array_equal(a, spec.stream("urn", 0).random(8))
    assert not np.array_equal(a, SeedSpec(100).stream("walk", 0).random(8))


def test_model_tags_are_distinct():
    assert len(set(MODEL_TAGS.values())) == len(MODEL_TAGS) == 3


# ---------------------------------------------------------------------------
# scalar walk dynamics
# ---------------------------------------------------------------------------

def test_init_walk_consumes_two_uniforms_and_starts_at_two_steps():
    rng = _CountingRng(np.random.default_rng(0))
    state = init_walk(rng)
    assert rng.calls == 2
    assert state.n == 2
    assert state.n_plus + state.n_minus == 2
    assert state.n_zero == 0


def test_init_walk_law_is_quarter_half_quarter():
    rng = np.random.default_rng(41)
    counts = np.zeros(3)
    reps = 40_000
    for _ in range(reps):
        counts[init_walk(rng).n_plus] += 1
    freq = counts / reps
    np.testing.assert_allclose(freq, [0.25, 0.5, 0.25], atol=0.012)


def test_step_distribution_known_states():
    # three up-steps and one down-step out of four, p = 1/2
    d = step_distribution(0.5, WalkState(n=4, n_plus=3, n_minus=1))
    np.testing.assert_allclose(d.as_array(), [0.25, 0.25, 0.5], atol=1e-15)
    # all past steps +1: channels retrieve +1 surely, signs decide
    p = 0.73
    d = step_distribution(p, WalkState(n=5, n_plus=5, n_minus=0))
    np.testing.assert_allclose(
        d.as_array(), [p * p, (1 - p) * (1 - p), 2 * p * (1 - p)], atol=1e-15)
    # balanced thirds state: uniform law for every p
    d = step_distribution(0.9, WalkState(n=6, n_plus=2, n_minus=2))
    np.testing.assert_allclose(d.as_array(), [1 / 3, 1 / 3, 1 / 3], atol=1e-15)


def test_step_distribution_rejects_degenerate_memory_parameter():
    state = WalkState(n=4, n_plus=2, n_minus=1)
    for bad in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ValueError):
            step_distribution(bad, state)


def test_step_distribution_is_a_probability_law_everywhere():
    rng = np.random.default_rng(7)
    for _ in range(300):
        n = int(rng.integers(2, 60))
        n_plus = int(rng.integers(0, n + 1))
        n_minus = int(rng.integers(0, n - n_plus + 1))
        d = step_distribution(float(rng.uniform(0.01, 0.99)),
                              WalkState(n=n, n_plus=n_plus, n_minus=n_minus))
        arr = d.as_array()
        assert arr.min() >= -1e-15
        assert abs(arr.sum() - 1.0) < 1e-14


def test_expected_count_increment_matches_drift_plus_state():
    # enumerating the three outcomes of (n+1)*fractions' - n*fractions
    # must give drift(x) + x exactly — the martingale decomposition
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = int(rng.integers(2, 40))
        n_plus = int(rng.integers(0, n + 1))
        n_minus = int(rng.integers(0, n - n_plus + 1))
        p = float(rng.uniform(0.02, 0.98))
        state = WalkState(n=n, n_plus=n_plus, n_minus=n_minus)
        d = step_distribution(p, state)
        expected_increment = np.array([d.q_plus, d.q_minus])
        x = np.array(state.fractions)
        np.testing.assert_allclose(
            expected_increment, theory.drift(p, x) + x, atol=1e-14)


def test_step_distribution_validation_catches_corrupt_probabilities():
    with pytest.raises(ValueError):
        StepDistribution(0.7, 0.5, -0.2)
    with pytest.raises(ValueError):
        StepDistribution(0.5, 0.4, 0.2)


@pytest.mark.parametrize("advance,budget", [(step_fast, 1), (step_literal, 4)])
def test_step_budgets_and_count_updates(advance, budget):
    rng = _CountingRng(np.random.default_rng(3))
    state = WalkState(n=10, n_plus=4, n_minus=3)
    for i in range(50):
        before = (state.n, state.n_plus, state.n_minus)
        step = advance(0.7, state, rng)
        assert rng.calls == (i + 1) * budget
        assert step in (-1, 0, 1)
        assert state.n == before[0] + 1
        assert state.n_plus - before[1] == (step == 1)
        assert state.n_minus - before[2] == (step == -1)


def test_step_fast_frequencies_match_the_conditional_law():
    # frozen-state sampling: empirical frequencies vs the exact law
    state = WalkState(n=10, n_plus=6, n_minus=1)
    p = 0.8
    law = step_distribution(p, state).as_array()
    rng = np.random.default_rng(123)
    counts = sample_steps_fast(p, state, 200_000, rng)
    np.testing.assert_allclose(counts / 200_000, law, atol=0.006)


def test_literal_and_fast_samplers_agree_distributionally():
    state = WalkState(n=7, n_plus=3, n_minus=2)
    p = 0.65
    rng = np.random.default_rng(5)
    fast = sample_steps_fast(p, state, 150_000, rng)
    lit = sample_steps_literal(p, state, 150_000, rng)
    assert fast.sum() == lit.sum() == 150_000
    np.testing.assert_allclose(fast / 150_000, lit / 150_000, atol=0.008)


def test_simulate_records_exactly_the_requested_checkpoints():
    rng = np.random.default_rng(17)
    traj = simulate(0.55, 500, [2, 3, 100, 500], rng)
    assert traj.n.tolist() == [2, 3, 100, 500]
    assert np.all(np.abs(traj.position) <= traj.n)
    assert np.all(traj.n_plus + traj.n_minus <= traj.n)
    # counts never decrease along the run
    assert np.all(np.diff(traj.n_plus) >= 0)
    assert np.all(np.diff(traj.n_minus) >= 0)
    # position moves at most one unit per step
    gaps = np.diff(traj.n)
    assert np.all(np.abs(np.diff(traj.position)) <= gaps)


def test_simulate_rejects_bad_checkpoints():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        simulate(0.5, 100, [], rng)
    with pytest.raises(ValueError):
        simulate(0.5, 100, [1, 50], rng)
    with pytest.raises(ValueError):
        simulate(0.5, 100, [2, 101], rng)


def test_walk_state_validation():
    with pytest.raises(ValueError):
        WalkState(n=1, n_plus=1, n_minus=0)
    with pytest.raises(ValueError):
        WalkState(n=4, n_plus=3, n_minus=2)
    with pytest.raises(ValueError):
        WalkState(n=4, n_plus=-1, n_minus=2)


# ---------------------------------------------------------------------------
# classical baseline walk
# ---------------------------------------------------------------------------

def test_erw_first_step_uses_the_initial_bias_only():
    rng = np.random.default_rng(2)
    for q, expected in ((1.0, 1), (0.0, -1)):
        state = ErwState(n=0, n_plus=0)
        step = erw_step(0.9, q, state, rng)
        assert step == expected
        assert state.n == 1


def test_erw_step_probability_reduces_to_p_when_all_steps_positive():
    # from (n=1, n_plus=1): P(next = +1) = (1-p) + (2p-1) = p
    p = 0.83
    hits = 0
    rng = np.random.default_rng(31)
    reps = 100_000
    for _ in range(reps):
        state = ErwState(n=1, n_plus=1)
        hits += erw_step(p, 1.0, state, rng) == 1
    assert abs(hits / reps - p) < 0.004


def test_erw_half_memory_is_a_fair_coin_walk():
    # p = 1/2 kills the memory coefficient entirely
    rng = np.random.default_rng(8)
    state = erw_init(0.5, rng)
    for _ in range(2000):
        erw_step(0.5, 0.5, state, rng)
    assert abs(state.position) < 300  # diffusive scale, not ballistic


def test_erw_init_consumes_one_uniform():
    rng = _CountingRng(np.random.default_rng(4))
    state = erw_init(0.5, rng)
    assert rng.calls == 1
    assert state.n == 1
    assert state.n_plus in (0, 1)
    with pytest.raises(ValueError):
        erw_init(1.5, rng)


# ---------------------------------------------------------------------------
# urn dynamics
# ---------------------------------------------------------------------------

def test_urn_init_law_and_budget():
    rng = _CountingRng(np.random.default_rng(21))
    state = urn_init(rng)
    assert rng.calls == 2
    assert state.total == 2 and state.green == 0

    rng = np.random.default_rng(22)
    counts = np.zeros(3)
    reps = 40_000
    for _ in range(reps):
        counts[urn_init(rng).red] += 1
    np.testing.assert_allclose(counts / reps, [0.25, 0.5, 0.25], atol=0.012)


def test_urn_replacement_rows_are_probability_laws():
    rng = np.random.default_rng(3)
    for _ in range(50):
        p = float(rng.uniform(0.01, 0.99))
        for a in range(3):
            for b in range(3):
                row = urn_replacement_law(p, a, b)
                assert min(row) >= 0.0
                assert abs(sum(row) - 1.0) < 1e-15
                # unordered pair: swapping the drawn colors changes nothing
                assert row == urn_replacement_law(p, b, a)


def test_urn_replacement_known_rows():
    p = 0.77
    assert urn_replacement_law(p, 0, 0)[0] == p * p
    assert urn_replacement_law(p, 0, 1)[2] == p * p + (1.0 - p) * (1.0 - p)
    assert urn_replacement_law(p, 2, 2) == (0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        urn_replacement_law(p, 0, 3)


def test_urn_added_ball_marginal_equals_walk_step_law():
    # the exact embedding identity: drawing the unordered pair from the
    # counts and applying the replacement row gives, marginally, the
    # walk's one-step law at the matched state (red=+1, blue=-1, green=0)
    rng = np.random.default_rng(13)
    for _ in range(60):
        total = int(rng.integers(2, 30))
        red = int(rng.integers(0, total + 1))
        blue = int(rng.integers(0, total - red + 1))
        green = total - red - blue
        p = float(rng.uniform(0.02, 0.98))
        fracs = np.array([red, blue, green]) / total
        marginal = np.zeros(3)
        for a in range(3):
            for b in range(3):
                marginal += fracs[a] * fracs[b] * np.asarray(urn_replacement_law(p, a, b))
        walk_law = step_distribution(p, WalkState(n=total, n_plus=red, n_minus=blue))
        np.testing.assert_allclose(marginal, walk_law.as_array(), atol=1e-14)


def test_urn_step_budget_and_growth():
    rng = _CountingRng(np.random.default_rng(9))
    state = UrnState(red=1, blue=1, green=0)
    for i in range(30):
        before = (state.red, state.blue, state.green)
        added = urn_step(0.6, state, rng)
        assert rng.calls == (i + 1) * 3
        assert state.total == 2 + i + 1
        delta = (state.red - before[0], state.blue - before[1], state.green - before[2])
        assert sum(delta) == 1 and delta[added] == 1


def test_urn_sure_transitions():
    rng = np.random.default_rng(1)
    # from (2,0,0) the pair is (R,R) surely; with p=1 the added ball is red
    state = UrnState(red=2, blue=0, green=0)
    with pytest.raises(ValueError):
        UrnState(red=1, blue=0, green=0)
    added = urn_step(1.0 - 1e-12, state, rng)
    assert added == 0 and state.red == 3


# ---------------------------------------------------------------------------
# block source
# ---------------------------------------------------------------------------

def test_block_source_matches_direct_generator_consumption():
    spec = SeedSpec(5)
    streams = [spec.stream("walk", r) for r in range(3)]
    reference = [spec.stream("walk", r).random(64) for r in range(3)]
    src = _BlockSource(streams, block=7)  # force awkward boundaries
    taken = [src.take(width) for width in (2, 4, 1, 4, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 2)]
    got = np.hstack(taken)
    assert got.shape == (3, 64)
    for r in range(3):
        np.testing.assert_array_equal(got[r], reference[r])


# ---------------------------------------------------------------------------
# ensemble runs: backend and thread agreement
# ---------------------------------------------------------------------------

_CPS = [2, 5, 16, 100, 731, 2048, 3000]


@pytest.fixture(scope="module")
def walk_fallback():
    return ensemble_run("walk", 0.62, 3000, _CPS, 24, 20260818,
                        track=True, backend="fallback", threads=1)


_WALK_FIELDS = ("position", "n_plus", "n_minus", "qsl_plain", "qsl_thresh",
                "lil_plain", "lil_thresh", "returns")


@needs_kernel
def test_walk_kernel_matches_fallback_bit_for_bit(walk_fallback):
    kernel = ensemble_run("walk", 0.62, 3000, _CPS, 24, 20260818,
                          track=True, backend="kernel", threads=1)
    for name in _WALK_FIELDS:
        np.testing.assert_array_equal(getattr(kernel, name), getattr(walk_fallback, name),
                                      err_msg=name)


@needs_kernel
def test_walk_literal_mode_kernel_matches_fallback():
    kernel = ensemble_run("walk", 0.62, 1500, [2, 100, 1500], 16, 7,
                          literal=True, backend="kernel")
    fallback = ensemble_run("walk", 0.62, 1500, [2, 100, 1500], 16, 7,
                            literal=True, backend="fallback")
    np.testing.assert_array_equal(kernel.position, fallback.position)
    np.testing.assert_array_equal(kernel.n_plus, fallback.n_plus)
    # and the literal stream really is a different consumption pattern
    fast = ensemble_run("walk", 0.62, 1500, [2, 100, 1500], 16, 7, backend="fallback")
    assert not np.array_equal(fast.position, fallback.position)


def test_walk_thread_count_never_changes_results(walk_fallback):
    for backend in available_backends():
        for threads in (2, 5):
            run = ensemble_run("walk", 0.62, 3000, _CPS, 24, 20260818,
                               track=True, backend=backend, threads=threads)
            for name in _WALK_FIELDS:
                np.testing.assert_array_equal(getattr(run, name),
                                              getattr(walk_fallback, name),
                                              err_msg=f"{backend}/{threads}/{name}")


def test_walk_batch_matches_scalar_reference(walk_fallback):
    spec = SeedSpec(20260818)
    for r in (0, 11, 23):
        traj = simulate(0.62, 3000, _CPS, spec.stream("walk", r))
        np.testing.assert_array_equal(traj.position, walk_fallback.position[r])
        np.testing.assert_array_equal(traj.n_plus, walk_fallback.n_plus[r])
        np.testing.assert_array_equal(traj.n_minus, walk_fallback.n_minus[r])


def test_walk_running_statistics_match_scalar_recomputation(walk_fallback):
    w_log_sq, scale_plain, scale_thresh = log_tables(3000)
    spec = SeedSpec(20260818)
    replica = 4
    rng = spec.stream("walk", replica)
    state = init_walk(rng)
    acc_plain = acc_thresh = max_plain = max_thresh = 0.0
    returns = 0
    snapshots = {}

    def tick(k, s):
        nonlocal acc_plain, acc_thresh, max_plain, max_thresh, returns
        d = s / float(k)
        dd = d * d
        acc_plain += dd
        acc_thresh += w_log_sq[k] * dd
        max_plain = max(max_plain, scale_plain[k] * abs(d))
        max_thresh = max(max_thresh, scale_thresh[k] * abs(d))
        returns += s == 0

    tick(2, state.position)
    snapshots[2] = (acc_plain, acc_thresh, max_plain, max_thresh, returns)
    cps = set(_CPS)
    while state.n < 3000:
        step_fast(0.62, state, rng)
        tick(state.n, state.position)
        if state.n in cps:
            snapshots[state.n] = (acc_plain, acc_thresh, max_plain, max_thresh, returns)
    for ci, n in enumerate(walk_fallback.checkpoints):
        got = (walk_fallback.qsl_plain[replica, ci],
               walk_fallback.qsl_thresh[replica, ci],
               walk_fallback.lil_plain[replica, ci],
               walk_fallback.lil_thresh[replica, ci],
               walk_fallback.returns[replica, ci])
        assert got == snapshots[int(n)]


def test_walk_per_replica_centering_shifts_the_quasi_stationary_sums():
    lam = np.linspace(-0.5, 0.5, 8)
    run = ensemble_run("walk", 0.9, 256, [256], 8, 3, track=True,
                       centering=lam, backend="fallback")
    zero = ensemble_run("walk", 0.9, 256, [256], 8, 3, track=True,
                        backend="fallback")
    np.testing.assert_array_equal(run.position, zero.position)  # same paths
    assert run.centering is not None
    np.testing.assert_array_equal(run.centering, lam)
    # the replica centered at 0 matches the uncentered run; others differ
    idx_zero = np.where(lam == 0.0)[0]
    assert idx_zero.size == 0 or np.array_equal(
        run.qsl_plain[idx_zero], zero.qsl_plain[idx_zero])
    assert not np.array_equal(run.qsl_plain, zero.qsl_plain)


@needs_kernel
def test_erw_kernel_matches_fallback_and_scalar():
    kernel = ensemble_run("erw", 0.7, 2000, [2, 64, 2000], 20, 99, backend="kernel")
    fallback = ensemble_run("erw", 0.7, 2000, [2, 64, 2000], 20, 99, backend="fallback")
    np.testing.assert_array_equal(kernel.position, fallback.position)
    np.testing.assert_array_equal(kernel.n_plus, fallback.n_plus)
    spec = SeedSpec(99)
    for r in (0, 7, 19):
        rng = spec.stream("erw", r)
        state = erw_init(0.5, rng)
        rows = {}
        while state.n < 2000:
            erw_step(0.7, 0.5, state, rng)
            if state.n in (2, 64, 2000):
                rows[state.n] = (state.position, state.n_plus)
        for ci, n in enumerate(kernel.checkpoints):
            assert rows[int(n)] == (kernel.position[r, ci], kernel.n_plus[r, ci])


@needs_kernel
def test_urn_kernel_matches_fallback_and_scalar():
    kernel = ensemble_run("urn", 0.8, 1500, [2, 10, 444, 1500], 20, 5150, backend="kernel")
    fallback = ensemble_run("urn", 0.8, 1500, [2, 10, 444, 1500], 20, 5150, backend="fallback")
    for name in ("red", "blue", "green", "position"):
        np.testing.assert_array_equal(getattr(kernel, name), getattr(fallback, name),
                                      err_msg=name)
    spec = SeedSpec(5150)
    for r in (0, 9, 19):
        rng = spec.stream("urn", r)
        state = urn_init(rng)
        rows = {2: (state.red, state.blue, state.green)}
        while state.total < 1500:
            urn_step(0.8, state, rng)
            if state.total in (10, 444, 1500):
                rows[state.total] = (state.red, state.blue, state.green)
        for ci, n in enumerate(kernel.checkpoints):
            assert rows[int(n)] == (kernel.red[r, ci], kernel.blue[r, ci],
                                    kernel.green[r, ci])


def test_urn_totals_and_position_identity():
    run = ensemble_run("urn", 0.5, 300, [2, 37, 300], 30, 8, backend="fallback")
    totals = run.red + run.blue + run.green
    np.testing.assert_array_equal(totals, np.broadcast_to(run.checkpoints, totals.shape))
    np.testing.assert_array_equal(run.position, run.red - run.blue)


def test_single_replica_ensemble_reduces_to_simulate():
    run = ensemble_run("walk", 0.55, 400, [2, 100, 400], 1, 77, backend="fallback")
    traj = simulate(0.55, 400, [2, 100, 400], SeedSpec(77).stream("walk", 0))
    np.testing.assert_array_equal(run.position[0], traj.position)


def test_ensemble_mean_position_is_centered_for_symmetric_memory():
    run = ensemble_run("walk", 0.5, 512, [512], 4000, 123)
    s = run.position[:, 0].astype(float)
    se = s.std(ddof=1) / np.sqrt(len(s))
    assert abs(s.mean()) < 4 * se + 1e-9


def test_ensemble_run_validation():
    with pytest.raises(ValueError):
        ensemble_run("plinko", 0.5, 100, [100], 2, 0)
    with pytest.raises(ValueError):
        ensemble_run("walk", 1.0, 100, [100], 2, 0)
    with pytest.raises(ValueError):
        ensemble_run("walk", 0.5, 100, [100], 0, 0)
    with pytest.raises(ValueError):
        ensemble_run("walk", 0.5, 100, [101], 2, 0)
    with pytest.raises(ValueError):
        ensemble_run("urn", 0.5, 100, [100], 2, 0, track=True)
    with pytest.raises(ValueError):
        ensemble_run("erw", 0.5, 100, [100], 2, 0, literal=True)
    with pytest.raises(ValueError):
        ensemble_run("erw", 0.5, 100, [100], 2, 0, q_first=1.2)
    with pytest.raises(ValueError):
        ensemble_run("walk", 0.5, 100, [100], 2, 0, threads=0)
    with pytest.raises(ValueError):
        ensemble_run("walk", 0.5, 100, [100], 2, 0, backend="vulkan")


def test_backend_resolution_honors_environment(monkeypatch):
    monkeypatch.setenv("M2WALK_BACKEND", "fallback")
    assert resolve_backend() == "fallback"
    monkeypatch.setenv("M2WALK_BACKEND", "nope")
    with pytest.raises(ValueError):
        resolve_backend()
    monkeypatch.delenv("M2WALK_BACKEND")
    assert resolve_backend("fallback") == "fallback"


def test_checkpoint_stats_reproduce_numpy_formulas():
    run = ensemble_run("walk", 0.6, 256, [16, 256], 500, 31337)
    stats = run.checkpoint_stats()
    assert [c.n for c in stats] == [16, 256]
    from scipy.stats import kurtosis

    for ci, c in enumerate(stats):
        s = run.position[:, ci].astype(float)
        assert c.count == 500
        assert c.mean_position == pytest.approx(s.mean(), abs=1e-12)
        assert c.var_position == pytest.approx(s.var(ddof=1), abs=1e-9)
        assert c.mean_ratio == pytest.approx((s / c.n).mean(), abs=1e-12)
        assert c.var_ratio == pytest.approx((s / c.n).var(ddof=1), abs=1e-12)
        assert c.kurtosis == pytest.approx(float(kurtosis(s)), abs=1e-12)


# ---------------------------------------------------------------------------
# checkpoints and tables
# ---------------------------------------------------------------------------

def test_dyadic_checkpoints_cover_the_standard_ladder():
    assert dyadic_checkpoints(2**20) == [2**e for e in range(7, 21)]
    assert dyadic_checkpoints(10**6)[-1] == 2**19
    assert dyadic_checkpoints(10**6)[0] == 2**7
    assert dyadic_checkpoints(100) == [100]
    with pytest.raises(ValueError):
        dyadic_checkpoints(1)


def test_log_tables_pin_the_documented_formulas():
    w_log_sq, scale_plain, scale_thresh = log_tables(64)
    assert w_log_sq[0] == w_log_sq[1] == 0.0
    k = 37
    lk = np.log(float(k))
    assert w_log_sq[k] == (1.0 / lk) * (1.0 / lk)
    assert scale_plain[15] == 0.0 and scale_thresh[15] == 0.0
    assert scale_plain[k] == pytest.approx(np.sqrt(k / (2.0 * np.log(lk))), rel=1e-15)
    assert scale_thresh[k] == pytest.approx(
        np.sqrt(k / (2.0 * lk * np.log(np.log(lk)))), rel=1e-15)
    # cached: same arrays come back
    again = log_tables(64)
    assert again[0] is w_log_sq
