"""Timing harness for the face-wise multiplication kernels.

Measures the classical cubic multiply against the Strassen recursion on
square stacks across a size sweep, reports per-size medians, and fits
log-log slopes.

Measurement notes. The baseline is a fixed-rate classical kernel (an einsum
contraction) and the Strassen recursion bottoms out on that same kernel, so
the fitted exponents compare the two algorithms' arithmetic growth rather
than a vendor GEMM's size-dependent tuning; with an adaptive-rate leaf the
recursion's extra memory traffic swamps the exponent at desk sizes. Samples
are CPU-time over calibrated batches (immune to preemption on shared
hosts), BLAS pools are pinned to one thread when threadpoolctl is present,
and the garbage collector is paused. Medians are reported per cell; slopes
are fitted on the per-size minima, the noise-robust statistic.
"""

from __future__ import annotations

import contextlib
import gc
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import BadFlag, NotPowerOfTwo
from .matkernels import strassen_mul

__all__ = ["BenchResult", "run_bench", "classic_mul"]

ALGO_CHOICES = ("naive", "strassen")
TARGET_BATCH_SECONDS = 0.25


def classic_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Classical cubic multiplication at a size-uniform rate."""
    return np.einsum("ik,kj->ij", a, b, optimize=False)


@dataclass
class BenchResult:
    """Median timings per (algo, size), fitted slopes, and the worst
    relative deviation between the two algorithms' outputs."""

    depth: int
    repeats: int
    crossover: int
    rows: list[tuple[str, int, float]] = field(default_factory=list)
    slopes: dict[str, float] = field(default_factory=dict)
    max_mismatch: float = 0.0


def _thread_limit():
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        return contextlib.nullcontext()
    return threadpool_limits(limits=1)


def _sample_times(fn, repeats: int) -> list[float]:
    # calibrate the batch size off one wall-clock probe, then time batches
    # with the CPU clock; each sample is one batch average
    t0 = time.perf_counter()
    fn()
    estimate = max(time.perf_counter() - t0, 1e-9)
    iters = max(1, math.ceil(TARGET_BATCH_SECONDS / estimate))
    samples = []
    for _ in range(repeats):
        t0 = time.process_time()
        for _ in range(iters):
            fn()
        samples.append((time.process_time() - t0) / iters)
    return samples


def run_bench(
    sizes,
    depth: int = 1,
    algos=ALGO_CHOICES,
    repeats: int = 5,
    seed: int = 0,
    crossover: int = 64,
) -> BenchResult:
    """Time face-wise products of random size x size x depth stacks.

    ``sizes`` must be powers of two. Each (algo, size) cell is sampled
    ``repeats`` times on the same operands after a warmup call.
    """
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise BadFlag("need at least one size")
    for s in sizes:
        if s < 1 or (s & (s - 1)) != 0:
            raise NotPowerOfTwo(f"benchmark sizes must be powers of two, got {s}")
    algos = tuple(algos)
    for algo in algos:
        if algo not in ALGO_CHOICES:
            raise BadFlag(f"unknown algo {algo!r}, expected one of {ALGO_CHOICES}")
    repeats = max(int(repeats), 1)
    depth = max(int(depth), 1)

    rng = np.random.default_rng(seed)
    result = BenchResult(depth=depth, repeats=repeats, crossover=int(crossover))
    minima: dict[str, list[float]] = {algo: [] for algo in algos}

    def facewise_with(mul, a_stack, b_stack):
        return [mul(a_stack[i], b_stack[i]) for i in range(depth)]

    runners = {
        "naive": lambda a_stack, b_stack: facewise_with(classic_mul, a_stack, b_stack),
        "strassen": lambda a_stack, b_stack: facewise_with(
            lambda x, y: strassen_mul(x, y, crossover, base_mul=classic_mul),
            a_stack,
            b_stack,
        ),
    }

    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        with _thread_limit():
            for size in sizes:
                a_stack = [rng.standard_normal((size, size)) for _ in range(depth)]
                b_stack = [rng.standard_normal((size, size)) for _ in range(depth)]
                outputs = {}
                for algo in algos:
                    fn = lambda: runners[algo](a_stack, b_stack)
                    outputs[algo] = fn()
                    samples = _sample_times(fn, repeats)
                    minima[algo].append(min(samples))
                    result.rows.append((algo, size, float(np.median(samples))))
                if len(outputs) == 2:
                    first, second = (outputs[a_] for a_ in algos)
                    scale = max(
                        np.linalg.norm(np.stack(a_stack))
                        * np.linalg.norm(np.stack(b_stack)),
                        1e-300,
                    )
                    diff = np.sqrt(
                        sum(
                            float(np.sum((x - y) ** 2))
                            for x, y in zip(first, second)
                        )
                    )
                    result.max_mismatch = max(result.max_mismatch, diff / scale)
    finally:
        if gc_was_enabled:
            gc.enable()

    if len(sizes) >= 2:
        logs = np.log(np.asarray(sizes, dtype=float))
        for algo in algos:
            slope = np.polyfit(logs, np.log(np.asarray(minima[algo])), 1)[0]
            result.slopes[algo] = float(slope)
    return result
