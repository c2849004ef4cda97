"""States, seed derivation, and scalar reference dynamics.

Everything in this file is the readable, step-at-a-time reference
implementation.  The batch backends (`m2walk.engine._kernel`,
`m2walk.engine._fallback`) reproduce these dynamics bit for bit; to make
that possible the number of uniform variates consumed per operation and
the exact floating-point expression orderings are pinned here and must
not be changed casually:

    init_walk          2 uniforms (one per initial fair sign)
    step_fast          1 uniform  (single categorical draw)
    step_literal       4 uniforms (value, sign, value, sign)
    erw_init           1 uniform
    erw_step           1 uniform
    urn_init           2 uniforms
    urn_step           3 uniforms (color, color, added ball)

All probabilities are evaluated with the same parenthesization
everywhere (e.g. ``z = 1.0 - (g1 + g2)``), and cumulative threshold
tests always run plus/red first, then minus/blue, then zero/green.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "MODEL_TAGS",
    "SeedSpec",
    "WalkState",
    "StepDistribution",
    "ErwState",
    "UrnState",
    "Trajectory",
    "EnsembleCheckpoint",
    "init_walk",
    "increment_law",
    "step_distribution",
    "step_literal",
    "step_fast",
    "simulate",
    "erw_init",
    "erw_step",
    "urn_init",
    "urn_step",
    "urn_replacement_law",
]


# ---------------------------------------------------------------------------
# seeds and streams
# ---------------------------------------------------------------------------

#: Stream-domain separation constants, one per simulated model (ASCII
#: tags "walk2ch!", "erw-base", "urn3ball" read as big-endian integers).
#: XORed into the master seed so that e.g. the walk and urn ensembles of
#: one master seed never share a stream.
MODEL_TAGS = {
    "walk": 0x77616C6B32636821,
    "erw": 0x6572772D62617365,
    "urn": 0x75726E3362616C6C,
}


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus the (versioned) replica stream derivation rule.

    Replica ``i`` of model ``m`` draws from the counter-based Philox
    generator with the 128-bit key ``(master_seed XOR MODEL_TAGS[m], i)``.
    The rule is a pure function of ``(master_seed, model, i)``, so any
    scheduling of replicas over threads consumes identical streams and
    ensemble output is bit-stable.  Philox output itself is platform
    independent, which makes this contract portable.
    """

    master_seed: int

    def __post_init__(self):
        seed = int(self.master_seed)
        if not 0 <= seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "master_seed", seed)

    def key(self, model: str, replica: int) -> tuple[int, int]:
        if model not in MODEL_TAGS:
            raise ValueError(f"unknown model {model!r}; expected one of {sorted(MODEL_TAGS)}")
        if replica < 0:
            raise ValueError("replica index must be nonnegative")
        return (self.master_seed ^ MODEL_TAGS[model], replica)

    def bit_generator(self, model: str, replica: int) -> np.random.Philox:
        return np.random.Philox(key=np.array(self.key(model, replica), dtype=np.uint64))

    def stream(self, model: str, replica: int) -> np.random.Generator:
        """A ready-to-use Generator for one replica's stream."""
        return np.random.Generator(self.bit_generator(model, replica))


# ---------------------------------------------------------------------------
# two-channel walk
# ---------------------------------------------------------------------------

@dataclass
class WalkState:
    """Counts after ``n`` steps: ``n_plus`` up-steps and ``n_minus`` down."""

    n: int
    n_plus: int
    n_minus: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("the walk state is defined from step 2 onward")
        if self.n_plus < 0 or self.n_minus < 0 or self.n_plus + self.n_minus > self.n:
            raise ValueError("step counts must be nonnegative and sum to at most n")

    @property
    def n_zero(self) -> int:
        return self.n - self.n_plus - self.n_minus

    @property
    def position(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def fractions(self) -> tuple[float, float]:
        nd = float(self.n)
        return (self.n_plus / nd, self.n_minus / nd)


@dataclass(frozen=True)
class StepDistribution:
    """Conditional law of the next step: P(+1), P(-1), P(0)."""

    q_plus: float
    q_minus: float
    q_zero: float

    def __post_init__(self):
        probs = (self.q_plus, self.q_minus, self.q_zero)
        if min(probs) < -1e-15 or max(probs) > 1.0 + 1e-15:
            raise ValueError(f"step probabilities out of range: {probs}")
        if abs(sum(probs) - 1.0) > 1e-14:
            raise ValueError(f"step probabilities do not sum to 1: {probs}")

    def as_array(self) -> np.ndarray:
        return np.array([self.q_plus, self.q_minus, self.q_zero])


def _law(p: float, g1: float, g2: float) -> tuple[float, float]:
    # pinned expression ordering shared by every backend
    a1 = (1.0 - p) * g1 + p * g2 - 1.0
    a2 = (1.0 - p) * g2 + p * g1 - 1.0
    z = 1.0 - (g1 + g2)
    zz = z * z
    return (a1 * a1 - zz, a2 * a2 - zz)


def init_walk(rng: np.random.Generator) -> WalkState:
    """Start the walk with two independent fair +/-1 steps."""
    n_plus = 0
    if rng.random() < 0.5:
        n_plus += 1
    if rng.random() < 0.5:
        n_plus += 1
    return WalkState(n=2, n_plus=n_plus, n_minus=2 - n_plus)


def step_distribution(p, state: WalkState) -> StepDistribution:
    """Exact conditional law of the next step given the current counts.

    Each of the two memory channels retrieves a past step value (+1, -1
    or 0 with probabilities equal to the current count fractions) and
    multiplies it by an independent random sign that is +1 with
    probability ``p``; the next step is the sum of the two channels
    truncated to {-1, 0, +1}.  Collapsing that two-stage construction
    gives the closed form below.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"memory parameter must lie strictly inside (0, 1), got {p!r}")
    g1, g2 = state.fractions
    q_plus, q_minus = _law(p, g1, g2)
    return StepDistribution(q_plus, q_minus, 1.0 - (q_plus + q_minus))


def increment_law(p, fractions) -> StepDistribution:
    """Step law evaluated at real-valued channel fractions.

    Same pinned expressions as `step_distribution`, but taking the
    fraction pair directly instead of an integer-count state — the form
    needed to enumerate increment moments at irrational fixed points.
    """
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"memory parameter must lie strictly inside (0, 1), got {p!r}")
    g1, g2 = (float(fractions[0]), float(fractions[1]))
    if g1 < 0.0 or g2 < 0.0 or g1 + g2 > 1.0 + 1e-12:
        raise ValueError(f"fractions {(g1, g2)} are outside the simplex")
    q_plus, q_minus = _law(p, g1, g2)
    return StepDistribution(q_plus, q_minus, 1.0 - (q_plus + q_minus))


def step_fast(p, state: WalkState, rng: np.random.Generator) -> int:
    """Advance one step with a single categorical draw; returns the step."""
    g1, g2 = state.fractions
    q_plus, q_minus = _law(float(p), g1, g2)
    u = rng.random()
    if u < q_plus:
        step = 1
        state.n_plus += 1
    elif u < q_plus + q_minus:
        step = -1
        state.n_minus += 1
    else:
        step = 0
    state.n += 1
    return step


def step_literal(p, state: WalkState, rng: np.random.Generator) -> int:
    """Advance one step through the explicit two-channel construction.

    Distributionally identical to `step_fast` (their agreement is gated
    by a chi-square test); kept as the fidelity reference because it
    realizes the mechanism itself: two retrieved past values, two
    independent sign perturbations, truncated sum.
    """
    p = float(p)
    nd = float(state.n)
    g1 = state.n_plus / nd
    g2 = state.n_minus / nd
    total = 0
    for _ in range(2):
        u = rng.random()
        if u < g1:
            value = 1
        elif u < g1 + g2:
            value = -1
        else:
            value = 0
        sign = 1 if rng.random() < p else -1
        total += sign * value  # a zero value stays zero under the sign
    if total >= 1:
        step = 1
        state.n_plus += 1
    elif total <= -1:
        step = -1
        state.n_minus += 1
    else:
        step = 0
    state.n += 1
    return step


# ---------------------------------------------------------------------------
# trajectories
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Trajectory:
    """Checkpoint records of one walk: arrays indexed by checkpoint."""

    n: np.ndarray
    position: np.ndarray
    n_plus: np.ndarray
    n_minus: np.ndarray

    def __post_init__(self):
        if not (np.diff(self.n) > 0).all():
            raise ValueError("checkpoints must be strictly increasing")
        if np.any(np.abs(self.position) > self.n):
            raise ValueError("|position| exceeds the step count")


@dataclass(frozen=True)
class EnsembleCheckpoint:
    """Cross-replica statistics of the position at one checkpoint."""

    n: int
    count: int
    mean_position: float
    var_position: float
    mean_ratio: float
    var_ratio: float
    kurtosis: float

    def __post_init__(self):
        if self.count >= 2 and self.var_position < 0:
            raise ValueError("variance cannot be negative")


def _normalize_checkpoints(checkpoints, n_max: int) -> np.ndarray:
    cps = np.asarray(sorted(set(int(c) for c in checkpoints)), dtype=np.int64)
    if cps.size == 0:
        raise ValueError("at least one checkpoint is required")
    if cps[0] < 2 or cps[-1] > n_max:
        raise ValueError("checkpoints must lie within [2, n_max]")
    return cps


def simulate(p, n_max: int, checkpoints, rng: np.random.Generator,
             literal: bool = False) -> Trajectory:
    """Run one walk to ``n_max`` recording the requested checkpoints.

    Scalar reference path.  The ensemble runner produces bit-identical
    records through the batch backends; this one exists to be read and
    to cross-check them.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    cps = _normalize_checkpoints(checkpoints, n_max)
    advance = step_literal if literal else step_fast
    state = init_walk(rng)
    rows = []
    pos = 0
    if cps[pos] == 2:
        rows.append((2, state.position, state.n_plus, state.n_minus))
        pos += 1
    while state.n < n_max and pos < len(cps):
        advance(p, state, rng)
        if state.n == cps[pos]:
            rows.append((state.n, state.position, state.n_plus, state.n_minus))
            pos += 1
    data = np.array(rows, dtype=np.int64).reshape(-1, 4)
    return Trajectory(n=data[:, 0], position=data[:, 1],
                      n_plus=data[:, 2], n_minus=data[:, 3])


# ---------------------------------------------------------------------------
# classical single-channel baseline
# ---------------------------------------------------------------------------

@dataclass
class ErwState:
    """Classical walk state: ``n`` steps of which ``n_plus`` were +1."""

    n: int
    n_plus: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.n_plus <= self.n:
            raise ValueError("need 0 <= n_plus <= n")

    @property
    def position(self) -> int:
        return 2 * self.n_plus - self.n


def erw_init(q, rng: np.random.Generator) -> ErwState:
    """First step of the classical walk: +1 with probability ``q``."""
    state = ErwState(n=0, n_plus=0)
    erw_step(0.5, q, state, rng)  # n=0: only q matters
    return state


def erw_step(p, q, state: ErwState, rng: np.random.Generator) -> int:
    """Advance the classical walk one step.

    The very first step is +1 with probability ``q``.  Afterwards,
    copying a uniformly chosen past step with probability ``p`` (and
    flipping it otherwise) reduces to: next step is +1 with probability
    ``(1-p) + (2p-1) * (fraction of past +1 steps)``.
    """
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ValueError("first-step probability must lie in [0, 1]")
    if state.n == 0:
        prob_plus = q
    else:
        p = float(p)
        prob_plus = (1.0 - p) + (2.0 * p - 1.0) * (state.n_plus / float(state.n))
    if rng.random() < prob_plus:
        step = 1
        state.n_plus += 1
    else:
        step = -1
    state.n += 1
    return step


# ---------------------------------------------------------------------------
# three-color urn
# ---------------------------------------------------------------------------

@dataclass
class UrnState:
    """Ball counts by color; one ball is added per draw."""

    red: int
    blue: int
    green: int

    def __post_init__(self):
        if min(self.red, self.blue, self.green) < 0:
            raise ValueError("ball counts must be nonnegative")
        if self.total < 2:
            raise ValueError("the urn starts with two balls")

    @property
    def total(self) -> int:
        return self.red + self.blue + self.green

    @property
    def difference(self) -> int:
        """Red minus blue — the embedded walk position."""
        return self.red - self.blue


def urn_init(rng: np.random.Generator) -> UrnState:
    """Two starting balls, each independently red or blue with equal odds."""
    red = 0
    if rng.random() < 0.5:
        red += 1
    if rng.random() < 0.5:
        red += 1
    return UrnState(red=red, blue=2 - red, green=0)


def urn_replacement_law(p, color_a: int, color_b: int) -> tuple[float, float, float]:
    """Distribution of the added ball given the drawn (unordered) pair.

    Colors are encoded 0=red, 1=blue, 2=green.  Red/blue behave as +1/-1
    values carried through two independent sign perturbations and a
    truncation, green as 0; the six unordered pairs give the six rows
    below.
    """
    p = float(p)
    pair = (color_a, color_b) if color_a <= color_b else (color_b, color_a)
    if pair == (0, 0):
        return (p * p, (1.0 - p) * (1.0 - p), 2.0 * p * (1.0 - p))
    if pair == (1, 1):
        return ((1.0 - p) * (1.0 - p), p * p, 2.0 * p * (1.0 - p))
    if pair == (0, 1):
        return (p * (1.0 - p), p * (1.0 - p), p * p + (1.0 - p) * (1.0 - p))
    if pair == (0, 2):
        return (p, 1.0 - p, 0.0)
    if pair == (1, 2):
        return (1.0 - p, p, 0.0)
    if pair == (2, 2):
        return (0.0, 0.0, 1.0)
    raise ValueError(f"invalid color pair {(color_a, color_b)!r}")


def _draw_color(u: float, red: int, blue: int, total: int) -> int:
    td = float(total)
    if u < red / td:
        return 0
    if u < (red + blue) / td:
        return 1
    return 2


def urn_step(p, state: UrnState, rng: np.random.Generator) -> int:
    """Draw two balls with replacement, add one ball; returns its color."""
    total = state.total
    color_a = _draw_color(rng.random(), state.red, state.blue, total)
    color_b = _draw_color(rng.random(), state.red, state.blue, total)
    prob_red, prob_blue, _ = urn_replacement_law(p, color_a, color_b)
    u = rng.random()
    if u < prob_red:
        added = 0
        state.red += 1
    elif u < prob_red + prob_blue:
        added = 1
        state.blue += 1
    else:
        added = 2
        state.green += 1
    return added
