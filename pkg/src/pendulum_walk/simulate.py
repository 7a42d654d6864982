"""Seeded Monte-Carlo simulation of the walk and escape-time estimation.

Trial ``k`` of a run consumes the uniform stream keyed by
``trial_seed(seed, k)`` (see :mod:`pendulum_walk._rng`), so every trial is
a pure function of ``(p, seed, k)``.  The batch walker advances all
pending trials in lockstep but tracks a per-trial draw counter, which
makes it produce *bit-identical* step counts to calling
:func:`simulate_walk` once per trial — and therefore identical moments
regardless of chunking or thread count.  Sums of the (integer) escape
times are accumulated in exact integer arithmetic, so aggregation order
cannot perturb the reported moments.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._rng import (
    RNG_NAME,
    normalize_seed,
    trial_seed,
    trial_seeds_u64,
    uniform_at,
    uniforms_u64,
)
from .errors import StepLimitError
from .escape import expected_escape_closed_form
from .vectors import as_transition_vector

__all__ = [
    "EscapeEstimate",
    "simulate_walk",
    "walk_many",
    "estimate_escape",
    "max_step_guard",
    "trial_seed",
]

_GUARD_CEILING = 1 << 62


@dataclass(frozen=True)
class EscapeEstimate:
    """Monte-Carlo escape-time moments for one (p, trials, seed) triple.

    ``variance`` is the unbiased (n-1) estimator; a single-trial run
    reports 0 with ``degenerate_variance`` set instead of NaN.
    ``std_error`` is ``sqrt(variance / trials)``.  ``rng`` records the
    generator identity so results stay replayable across versions.
    """

    mean: float
    variance: float
    std_error: float
    trials: int
    seed: int
    rng: str = field(default=RNG_NAME)
    degenerate_variance: bool = field(default=False)


def max_step_guard(p, factor: float = 10_000.0) -> int:
    """Step cutoff for a single walk: ``factor`` times the analytic mean.

    The closed-form mean is always available and cheap, so the default
    guard scales with how long walks are actually expected to take.  The
    cutoff is capped to keep it a usable integer if the analytic mean
    overflows.
    """
    mean = expected_escape_closed_form(p)
    if not math.isfinite(mean) or factor * mean >= _GUARD_CEILING:
        return _GUARD_CEILING
    return max(1, math.ceil(factor * mean))


def simulate_walk(p, seed: int, max_steps: int | None = None) -> int:
    """Walk once from 0 until absorption at d+1; return the step count.

    State 0 moves to 1 deterministically (consuming no randomness);
    interior state ``i`` draws one uniform and moves to ``i - 1`` when it
    falls below ``p_i``, else to ``i + 1``.  Deterministic given
    ``(p, seed)``.  Raises :class:`StepLimitError` if the walk runs past
    ``max_steps`` (default: :func:`max_step_guard`).
    """
    probs = as_transition_vector(p).tolist()
    d = len(probs)
    if max_steps is None:
        max_steps = max_step_guard(probs)
    key = normalize_seed(seed)
    pos = 0
    steps = 0
    draws = 0
    while pos != d + 1:
        if steps >= max_steps:
            raise StepLimitError(f"walk exceeded {max_steps} steps without terminating")
        if pos == 0:
            pos = 1
        else:
            u = uniform_at(key, draws)
            draws += 1
            pos = pos - 1 if u < probs[pos - 1] else pos + 1
        steps += 1
    return steps


def _walk_block(probs: np.ndarray, seed: int, start: int, count: int, max_steps: int) -> np.ndarray:
    """Escape times for trials ``start .. start + count - 1``, in lockstep."""
    d = probs.size
    target = d + 1
    keys = trial_seeds_u64(seed, start, count)
    state = np.zeros(count, dtype=np.int64)
    draws = np.zeros(count, dtype=np.uint64)
    taus = np.zeros(count, dtype=np.int64)
    pending = np.arange(count)
    one = np.uint64(1)
    step_count = 0  # lockstep: every pending trial has taken the same number of steps
    while pending.size:
        at_start = state == 0
        state[at_start] = 1
        moving = ~at_start
        if moving.any():
            u = uniforms_u64(keys[moving], draws[moving])
            draws[moving] += one
            s = state[moving]
            back = u < probs[s - 1]
            state[moving] = np.where(back, s - 1, s + 1)
        step_count += 1
        done = state == target
        if done.any():
            taus[pending[done]] = step_count
            keep = ~done
            pending = pending[keep]
            state = state[keep]
            draws = draws[keep]
            keys = keys[keep]
        if pending.size and step_count >= max_steps:
            raise StepLimitError(f"walk exceeded {max_steps} steps without terminating")
    return taus


def walk_many(
    p,
    trials: int,
    seed: int,
    max_steps: int | None = None,
    threads: int = 1,
    block_size: int = 65_536,
) -> np.ndarray:
    """Escape times of ``trials`` independent walks, one per trial stream.

    Trial ``k`` reproduces ``simulate_walk(p, trial_seed(seed, k))``
    exactly; blocks and threads only schedule the work, so the returned
    array is independent of both.
    """
    probs = as_transition_vector(p)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if max_steps is None:
        max_steps = max_step_guard(probs)
    blocks = [
        (start, min(block_size, trials - start)) for start in range(0, trials, block_size)
    ]
    if threads <= 1 or len(blocks) == 1:
        parts = [_walk_block(probs, seed, start, count, max_steps) for start, count in blocks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_walk_block, probs, seed, start, count, max_steps)
                for start, count in blocks
            ]
            parts = [f.result() for f in futures]
    return np.concatenate(parts)


def estimate_escape(
    p,
    trials: int,
    seed: int,
    max_steps: int | None = None,
    threads: int = 1,
) -> EscapeEstimate:
    """Estimate escape-time moments from ``trials`` seeded walks.

    Moments are a pure function of ``(p, trials, seed)``: per-trial step
    counts come from counter-based streams and are summed exactly, so any
    degree of parallelism yields bit-identical results.
    """
    taus = walk_many(p, trials, seed, max_steps=max_steps, threads=threads).tolist()
    n = len(taus)
    total = sum(taus)
    mean = total / n
    if n == 1:
        return EscapeEstimate(
            mean=mean, variance=0.0, std_error=0.0, trials=n,
            seed=int(seed), degenerate_variance=True,
        )
    total_sq = sum(t * t for t in taus)
    variance = (n * total_sq - total * total) / (n * (n - 1))
    return EscapeEstimate(
        mean=mean,
        variance=variance,
        std_error=math.sqrt(variance / n),
        trials=n,
        seed=int(seed),
    )
