"""Wall-time measurement for the distance algorithms.

Instances are deterministic in (size, seed).  Each size is timed over
several runs after a warmup call (which also absorbs JIT compilation) and
the median is reported in nanoseconds, CSV columns size,median_ns.
"""

from __future__ import annotations

import time
from statistics import median
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .curve import Curve
from . import weak1d
from .engines import weak_frechet_exact

BENCH_ALGOS = ("weak1d-linear", "weak-quadratic")


def walk_arrays(size: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Two integer random walks with nonzero steps in [-5, 5]."""
    rng = np.random.default_rng(seed)

    def walk():
        steps = rng.integers(1, 6, size=size - 1) * rng.choice((-1, 1), size=size - 1)
        vals = np.empty(size, dtype=np.int64)
        vals[0] = rng.integers(-5, 6)
        np.cumsum(steps, out=vals[1:])
        vals[1:] += vals[0]
        return vals

    return walk(), walk()


def zigzag_arrays(size: int, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Alternating spikes with slowly drifting amplitudes.

    Canonicalization cannot shrink these, and (almost) every vertex
    coordinate is distinct, which is the worst case for the quadratic
    algorithm's candidate set.
    """
    rng = np.random.default_rng(seed)

    def zig():
        amp = rng.integers(size, 2 * size, size=size).astype(np.int64)
        amp[::2] *= -1
        amp += np.arange(size, dtype=np.int64)  # break ties between spikes
        return amp

    return zig(), zig()


def _curve_from_ints(arr: np.ndarray) -> Curve:
    return Curve(1, tuple(int(v) for v in arr))


def _timed_ns(fn: Callable[[], object], runs: int) -> int:
    fn()  # warmup; first call may compile
    samples = []
    for _ in range(runs):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return int(median(samples))


def run_bench(algo: str, sizes: Sequence[int], seed: int = 0,
              runs: int = 3) -> List[Tuple[int, int]]:
    if runs < 3:
        raise ValueError("need at least 3 runs per size")
    rows = []
    for size in sizes:
        if size < 2:
            raise ValueError("sizes must be >= 2")
        if algo == "weak1d-linear":
            p, q = walk_arrays(size, seed)
            fn = lambda: weak1d._linear_value_ints(p, q)
        elif algo == "weak-quadratic":
            p, q = zigzag_arrays(size, seed)
            cp, cq = _curve_from_ints(p), _curve_from_ints(q)
            fn = lambda: weak_frechet_exact(cp, cq)
        else:
            raise ValueError(f"unknown bench algo {algo!r}")
        rows.append((size, _timed_ns(fn, runs)))
    return rows


def bench_csv(rows: Sequence[Tuple[int, int]]) -> str:
    return "size,median_ns\n" + "".join(f"{s},{ns}\n" for s, ns in rows)
