"""Pure-python batch backend, bit-identical to the compiled kernel.

Replicas advance in lockstep: at global step ``n`` every replica consumes
the same number of uniforms, so the whole ensemble can be driven by
vectorized numpy expressions while each replica still sees exactly the
stream it would see scalar-by-scalar.  Uniforms are pulled from each
replica's ``Generator.random`` in blocks; ``Generator.random`` fills its
output from the bit generator's ``next_double``, which is the very call
the compiled kernel makes, so the two backends consume identical
variates in identical order.

The floating-point expressions here copy ``m2walk.engine.state``
verbatim (numpy evaluates each elementwise operation in the written
order and never fuses multiply-adds, matching the kernel's
``-ffp-contract=off``).
"""

from __future__ import annotations

import numpy as np

__all__ = ["run_walk_batch", "run_erw_batch", "run_urn_batch"]

#: Target total buffer size in doubles; the per-replica block length is
#: scaled down as the replica count grows so refills stay cache-friendly
#: without hoarding memory.
_BUFFER_BUDGET = 1 << 22


class _BlockSource:
    """Serve lockstep uniforms for an ensemble, block-buffered per replica.

    ``take(count)`` returns the next ``count`` uniforms of every replica
    as an ``(replicas, count)`` array; block boundaries are handled by
    carrying the remainder, so any sequence of take sizes sees the same
    per-replica stream.
    """

    def __init__(self, streams, block: int | None = None):
        self._streams = list(streams)
        n = len(self._streams)
        if block is None:
            block = max(16, min(4096, _BUFFER_BUDGET // max(n, 1)))
        self._block = int(block)
        self._buf = np.empty((n, self._block), dtype=np.float64)
        self._pos = self._block  # empty; first take refills

    def _refill(self) -> None:
        for row, gen in zip(self._buf, self._streams):
            gen.random(out=row)
        self._pos = 0

    def take(self, count: int) -> np.ndarray:
        out = np.empty((self._buf.shape[0], count), dtype=np.float64)
        filled = 0
        while filled < count:
            if self._pos == self._block:
                self._refill()
            m = min(count - filled, self._block - self._pos)
            out[:, filled : filled + m] = self._buf[:, self._pos : self._pos + m]
            self._pos += m
            filled += m
        return out


def _walk_outputs(replicas: int, n_checkpoints: int, track: bool) -> dict[str, np.ndarray]:
    shape = (replicas, n_checkpoints)
    out = {
        "position": np.zeros(shape, dtype=np.int64),
        "n_plus": np.zeros(shape, dtype=np.int64),
        "n_minus": np.zeros(shape, dtype=np.int64),
    }
    if track:
        out["qsl_plain"] = np.zeros(shape, dtype=np.float64)
        out["qsl_thresh"] = np.zeros(shape, dtype=np.float64)
        out["lil_plain"] = np.zeros(shape, dtype=np.float64)
        out["lil_thresh"] = np.zeros(shape, dtype=np.float64)
        out["returns"] = np.zeros(shape, dtype=np.int64)
    return out


def run_walk_batch(p, n_max, checkpoints, streams, *, literal=False, track=True,
                   lam=None, tables=None):
    """Run one chunk of walk replicas; returns checkpoint matrices by name.

    ``lam`` is the per-replica centering used by the running statistics
    (zero for the diffusive regimes, the signed limiting speed for the
    two-pass ballistic protocol).  ``tables`` carries the shared
    ``(w_log_sq, scale_plain, scale_thresh)`` arrays; they are computed
    once by the caller because C and numpy logarithms may disagree by an
    ulp and both backends must read the same numbers.
    """
    p = float(p)
    cps = np.asarray(checkpoints, dtype=np.int64)
    replicas = len(streams)
    lam = np.zeros(replicas) if lam is None else np.asarray(lam, dtype=np.float64)
    if track:
        w_log_sq, scale_plain, scale_thresh = tables
    out = _walk_outputs(replicas, cps.size, track)

    src = _BlockSource(streams)
    u0 = src.take(2)
    n_plus = (u0[:, 0] < 0.5).astype(np.int64)
    n_plus += u0[:, 1] < 0.5
    n_minus = 2 - n_plus
    position = n_plus - n_minus
    n = 2

    if track:
        acc_plain = np.zeros(replicas)
        acc_thresh = np.zeros(replicas)
        max_plain = np.zeros(replicas)
        max_thresh = np.zeros(replicas)
        returns = np.zeros(replicas, dtype=np.int64)

    def accumulate(k: int) -> None:
        kd = float(k)
        d = position / kd - lam
        dd = d * d
        np.add(acc_plain, dd, out=acc_plain)
        np.add(acc_thresh, w_log_sq[k] * dd, out=acc_thresh)
        ad = np.abs(d)
        np.maximum(max_plain, scale_plain[k] * ad, out=max_plain)
        np.maximum(max_thresh, scale_thresh[k] * ad, out=max_thresh)
        np.add(returns, position == 0, out=returns)

    def record(ci: int) -> None:
        out["position"][:, ci] = position
        out["n_plus"][:, ci] = n_plus
        out["n_minus"][:, ci] = n_minus
        if track:
            out["qsl_plain"][:, ci] = acc_plain
            out["qsl_thresh"][:, ci] = acc_thresh
            out["lil_plain"][:, ci] = max_plain
            out["lil_thresh"][:, ci] = max_thresh
            out["returns"][:, ci] = returns

    if track:
        accumulate(2)
    ci = 0
    if ci < cps.size and cps[ci] == 2:
        record(ci)
        ci += 1

    while n < n_max:
        nd = float(n)
        g1 = n_plus / nd
        g2 = n_minus / nd
        if literal:
            u = src.take(4)
            value1 = np.where(u[:, 0] < g1, 1, np.where(u[:, 0] < g1 + g2, -1, 0))
            sign1 = np.where(u[:, 1] < p, 1, -1)
            value2 = np.where(u[:, 2] < g1, 1, np.where(u[:, 2] < g1 + g2, -1, 0))
            sign2 = np.where(u[:, 3] < p, 1, -1)
            total = sign1 * value1 + sign2 * value2
            step = np.where(total >= 1, 1, np.where(total <= -1, -1, 0))
        else:
            a1 = (1.0 - p) * g1 + p * g2 - 1.0
            a2 = (1.0 - p) * g2 + p * g1 - 1.0
            z = 1.0 - (g1 + g2)
            zz = z * z
            q_plus = a1 * a1 - zz
            q_minus = a2 * a2 - zz
            u = src.take(1)[:, 0]
            step = np.where(u < q_plus, 1, np.where(u < q_plus + q_minus, -1, 0))
        n_plus += step == 1
        n_minus += step == -1
        position += step
        n += 1
        if track:
            accumulate(n)
        if ci < cps.size and cps[ci] == n:
            record(ci)
            ci += 1
    return out


def run_erw_batch(p, q_first, n_max, checkpoints, streams):
    """Run one chunk of classical-walk replicas."""
    p = float(p)
    q_first = float(q_first)
    cps = np.asarray(checkpoints, dtype=np.int64)
    replicas = len(streams)
    out = {
        "position": np.zeros((replicas, cps.size), dtype=np.int64),
        "n_plus": np.zeros((replicas, cps.size), dtype=np.int64),
    }

    src = _BlockSource(streams)
    n_plus = (src.take(1)[:, 0] < q_first).astype(np.int64)
    n = 1
    ci = 0
    while n < n_max:
        prob_plus = (1.0 - p) + (2.0 * p - 1.0) * (n_plus / float(n))
        u = src.take(1)[:, 0]
        n_plus += u < prob_plus
        n += 1
        if ci < cps.size and cps[ci] == n:
            out["position"][:, ci] = 2 * n_plus - n
            out["n_plus"][:, ci] = n_plus
            ci += 1
    return out


def run_urn_batch(p, n_max, checkpoints, streams):
    """Run one chunk of urn replicas; checkpoints index the ball total."""
    p = float(p)
    cps = np.asarray(checkpoints, dtype=np.int64)
    replicas = len(streams)
    out = {
        "red": np.zeros((replicas, cps.size), dtype=np.int64),
        "blue": np.zeros((replicas, cps.size), dtype=np.int64),
        "green": np.zeros((replicas, cps.size), dtype=np.int64),
    }

    # added-ball law per unordered pair, from the same scalar expressions
    # as state.urn_replacement_law; indexed by 3*min + max of the pair
    prob_red_by_pair = np.zeros(9)
    prob_blue_by_pair = np.zeros(9)
    pair_rows = {
        (0, 0): (p * p, (1.0 - p) * (1.0 - p)),
        (0, 1): (p * (1.0 - p), p * (1.0 - p)),
        (0, 2): (p, 1.0 - p),
        (1, 1): ((1.0 - p) * (1.0 - p), p * p),
        (1, 2): (1.0 - p, p),
        (2, 2): (0.0, 0.0),
    }
    for (a, b), (pr, pb) in pair_rows.items():
        prob_red_by_pair[3 * a + b] = pr
        prob_blue_by_pair[3 * a + b] = pb

    src = _BlockSource(streams)
    u0 = src.take(2)
    red = (u0[:, 0] < 0.5).astype(np.int64)
    red += u0[:, 1] < 0.5
    blue = 2 - red
    green = np.zeros(replicas, dtype=np.int64)
    total = 2

    def record(ci: int) -> None:
        out["red"][:, ci] = red
        out["blue"][:, ci] = blue
        out["green"][:, ci] = green

    ci = 0
    if ci < cps.size and cps[ci] == 2:
        record(ci)
        ci += 1

    while n_max > total:
        td = float(total)
        thr_red = red / td
        thr_blue = (red + blue) / td
        u = src.take(3)
        color_a = np.where(u[:, 0] < thr_red, 0, np.where(u[:, 0] < thr_blue, 1, 2))
        color_b = np.where(u[:, 1] < thr_red, 0, np.where(u[:, 1] < thr_blue, 1, 2))
        pair = 3 * np.minimum(color_a, color_b) + np.maximum(color_a, color_b)
        prob_red = prob_red_by_pair[pair]
        prob_blue = prob_blue_by_pair[pair]
        added_red = u[:, 2] < prob_red
        added_blue = (~added_red) & (u[:, 2] < prob_red + prob_blue)
        red += added_red
        blue += added_blue
        green += ~(added_red | added_blue)
        total += 1
        if ci < cps.size and cps[ci] == total:
            record(ci)
            ci += 1
    return out
