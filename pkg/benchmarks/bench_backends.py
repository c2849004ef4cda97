#!/usr/bin/env python3
"""Throughput comparison: compiled kernel vs pure-python fallback.

Runs the identical ensemble (same model, same seed) through both
backends, times each, and checks the outputs are bit-identical — the
speedup is only meaningful because the streams are in lockstep.

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --model urn --n 20000 --replicas 50
"""

import argparse
import time

import numpy as np

from m2walk.engine import available_backends, ensemble_run


def run_once(model, p, n, replicas, seed, backend, literal):
    start = time.perf_counter()
    result = ensemble_run(model, p, n, [n], replicas, seed,
                          backend=backend, literal=literal)
    elapsed = time.perf_counter() - start
    return result, elapsed


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--model", default="walk",
                        choices=("walk", "erw", "urn"))
    parser.add_argument("--p", type=float, default=0.8)
    parser.add_argument("--n", type=int, default=100_000)
    parser.add_argument("--replicas", type=int, default=None,
                        help="default: sized so the fallback finishes quickly")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--literal", action="store_true",
                        help="four-draw per-channel sampling (walk only)")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats; the best one is reported")
    args = parser.parse_args()

    if "kernel" not in available_backends():
        parser.error("the compiled kernel is not available in this build; "
                     "nothing to compare")
    replicas = args.replicas
    if replicas is None:
        replicas = 20 if args.model == "walk" else 40

    literal = args.literal and args.model == "walk"
    total_steps = args.n * replicas
    print(f"model={args.model} p={args.p} n={args.n} replicas={replicas} "
          f"seed={args.seed} literal={literal}")
    print(f"{total_steps:,} total steps per run, best of {args.repeats}\n")

    timings = {}
    baseline = None
    for backend in ("fallback", "kernel"):
        best = float("inf")
        for _ in range(args.repeats):
            result, elapsed = run_once(args.model, args.p, args.n, replicas,
                                       args.seed, backend, literal)
            best = min(best, elapsed)
        timings[backend] = best
        if baseline is None:
            baseline = result.position
        elif not np.array_equal(result.position, baseline):
            raise SystemExit("backends disagree — the lockstep contract is "
                             "broken, timings are meaningless")
        rate = total_steps / best
        print(f"{backend:8s}  {best:8.3f} s   {rate / 1e6:8.2f} M steps/s")

    print(f"\nspeedup: {timings['fallback'] / timings['kernel']:.1f}x "
          "(outputs bit-identical)")


if __name__ == "__main__":
    main()
