"""Combinatorial and continuous optimization of the escape time.

Brute-force enumeration is the ground truth here: it evaluates the
closed-form escape time on every distinct arrangement of a vector and
reports the full argmax (or argmin) set, which is what the optimality
verifiers compare against the pendulum construction.  Enumeration walks
multiset permutations in lexicographic order, so tied entries are never
evaluated twice, and values are computed in vectorized chunks whose
partitioning (and optional thread pool) cannot affect the result.

The continuous variant optimizes over a box-with-budget constraint set
``{p in [0, a]^d : sum(p) <= b}``: the maximizer places as many entries
at the per-entry cap as the budget allows, one remainder entry, and
zeros, arranged as a pendulum.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import numpy as np

from .arrangements import mirror_permutation, pendulum_arrangement
from .errors import DimensionError, DomainError, SizeCapError
from .escape import expected_escape_closed_form, expected_escape_many, value_profile_many
from .vectors import as_odds_vector, as_transition_vector, as_vector

__all__ = [
    "ArgmaxReport",
    "BudgetConstraint",
    "BRUTE_FORCE_CAP",
    "PROFILE_CAP",
    "multiset_permutations",
    "brute_force_max",
    "brute_force_min",
    "verify_theorem1",
    "verify_theorem3",
    "budget_optimal",
    "best_over_extreme_points",
    "verify_convexity",
]

BRUTE_FORCE_CAP = 10      # 10! ~ 3.6e6 closed-form evaluations
PROFILE_CAP = 8           # per-window-length argmax enumeration cap

DEFAULT_TIE_REL = 1e-12   # relative tolerance for argmax-set membership


@dataclass(frozen=True)
class ArgmaxReport:
    """Outcome of an exhaustive search over arrangements.

    ``optimal_arrangements`` holds every arrangement attaining
    ``optimal_value`` within the tie tolerance (deduplicated); for a
    vector with pairwise distinct entries and the max direction this is
    exactly a pendulum arrangement and its mirror image.  ``ranked_list``
    is populated only when a top-k listing was requested, ordered
    best-first for the search direction.
    """

    optimal_value: float
    optimal_arrangements: set[tuple[float, ...]]
    ranked_list: Optional[list[tuple[tuple[float, ...], float]]]
    evaluations: int


@dataclass(frozen=True)
class BudgetConstraint:
    """Box-with-budget constraint set ``{p in [0, a]^d : sum(p) <= b}``."""

    a: float
    b: float
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise DimensionError("dimension d must be at least 1")
        if not 0.0 <= self.a < 1.0:
            raise DomainError(f"per-entry cap a must lie in [0, 1), got {self.a}")
        if self.b < 0.0:
            raise DomainError(f"budget b must be nonnegative, got {self.b}")


def multiset_permutations(values: Iterable[float]) -> Iterator[tuple[float, ...]]:
    """Yield the distinct arrangements of ``values`` in lexicographic order.

    Classic in-place successor stepping: find the rightmost ascent, swap
    in the next larger suffix entry, reverse the tail.  Duplicated values
    produce each distinct arrangement exactly once.
    """
    seq = sorted(values)
    n = len(seq)
    while True:
        yield tuple(seq)
        i = n - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1 :] = reversed(seq[i + 1 :])


@lru_cache(maxsize=4)
def _permutation_indices(d: int) -> np.ndarray:
    """All permutations of range(d) as an int8 index matrix, lex order."""
    return np.array(list(itertools.permutations(range(d))), dtype=np.int8)


def _arrangement_chunks(values: np.ndarray, chunk_size: int) -> Iterator[np.ndarray]:
    """Distinct arrangements of ``values`` as (chunk, d) row matrices, lex order."""
    d = values.size
    if np.unique(values).size == d:
        ordered = np.sort(values)
        indices = _permutation_indices(d)
        for start in range(0, indices.shape[0], chunk_size):
            yield ordered[indices[start : start + chunk_size]]
    else:
        gen = multiset_permutations(values.tolist())
        while True:
            block = list(itertools.islice(gen, chunk_size))
            if not block:
                return
            yield np.array(block, dtype=np.float64)


def _brute_force(
    p,
    direction: int,
    top: Optional[int],
    tie_rel: float,
    chunk_size: int,
    threads: int,
) -> ArgmaxReport:
    values = as_transition_vector(p)
    d = values.size
    if d > BRUTE_FORCE_CAP:
        raise SizeCapError(
            f"exhaustive search is capped at d <= {BRUTE_FORCE_CAP} (got d = {d})"
        )

    def evaluate(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return rows, expected_escape_many(rows)

    def pipeline() -> Iterator[tuple[np.ndarray, np.ndarray]]:
        chunks = _arrangement_chunks(values, chunk_size)
        if threads <= 1:
            yield from map(evaluate, chunks)
            return
        # bounded in-flight window; results consumed in submission order,
        # so the reduction below is independent of scheduling
        with ThreadPoolExecutor(max_workers=threads) as pool:
            window: list = []
            for chunk in chunks:
                window.append(pool.submit(evaluate, chunk))
                if len(window) >= 2 * threads:
                    yield window.pop(0).result()
            for future in window:
                yield future.result()

    sign = float(direction)
    best = -math.inf
    candidates: list[tuple[float, tuple[float, ...]]] = []
    ranked: list[tuple[float, int, tuple[float, ...]]] = []
    evaluations = 0
    for rows, vals in pipeline():
        signed = sign * vals
        chunk_best = float(signed.max())
        if chunk_best > best:
            best = chunk_best
            cutoff = best - tie_rel * abs(best)
            candidates = [c for c in candidates if c[0] >= cutoff]
        cutoff = best - tie_rel * abs(best)
        for k in np.nonzero(signed >= cutoff)[0]:
            candidates.append((float(signed[k]), tuple(rows[k].tolist())))
        if top is not None:
            for k in range(vals.size):
                ranked.append((float(signed[k]), evaluations + k, tuple(rows[k].tolist())))
            ranked.sort(key=lambda t: (-t[0], t[1]))
            del ranked[top:]
        evaluations += vals.size

    cutoff = best - tie_rel * abs(best)
    optimal = {arr for val, arr in candidates if val >= cutoff}
    ranked_list = [(arr, sign * val) for val, _, arr in ranked] if top is not None else None
    return ArgmaxReport(
        optimal_value=sign * best,
        optimal_arrangements=optimal,
        ranked_list=ranked_list,
        evaluations=evaluations,
    )


def brute_force_max(
    p,
    top: Optional[int] = None,
    tie_rel: float = DEFAULT_TIE_REL,
    chunk_size: int = 40_320,
    threads: int = 1,
) -> ArgmaxReport:
    """Exhaustively maximize the escape time over arrangements of ``p``.

    Arrangements whose value falls within ``tie_rel`` (relative) of the
    maximum are all reported: distinct arrangements can differ only in
    the last floating-point bits, and the optimal set genuinely contains
    mirror pairs.
    """
    return _brute_force(p, +1, top, tie_rel, chunk_size, threads)


def brute_force_min(
    p,
    top: Optional[int] = None,
    tie_rel: float = DEFAULT_TIE_REL,
    chunk_size: int = 40_320,
    threads: int = 1,
) -> ArgmaxReport:
    """Exhaustively minimize the escape time over arrangements of ``p``.

    Unlike the maximum, the minimizing arrangement depends on the actual
    entry values, not only their sorted order, so enumeration is the only
    supported route.
    """
    return _brute_force(p, -1, top, tie_rel, chunk_size, threads)


def verify_theorem1(p, tie_rel: float = DEFAULT_TIE_REL, threads: int = 1) -> bool:
    """Check that the argmax set is exactly {pendulum, mirrored pendulum}.

    Requires strictly positive, pairwise distinct entries — the regime in
    which the optimal pair is unique.
    """
    values = as_transition_vector(p)
    if np.any(values <= 0.0):
        raise DomainError("entries must be strictly positive for the uniqueness check")
    if np.unique(values).size != values.size:
        raise ValueError("entries must be pairwise distinct for the uniqueness check")
    pend = pendulum_arrangement(values)
    mirrored = mirror_permutation(values.size).apply(pend)
    expected = {tuple(pend.tolist()), tuple(mirrored.tolist())}
    report = brute_force_max(values, tie_rel=tie_rel, threads=threads)
    return report.optimal_arrangements == expected


def verify_theorem3(x, tie_rel: float = DEFAULT_TIE_REL) -> bool:
    """Check per-window-length optimality of the pendulum arrangement.

    Sufficiency: for every window length ``m``, the pendulum arrangement
    attains the maximum window value over all arrangements.  Necessity:
    the only arrangements attaining the maximum *simultaneously for all
    m* are the pendulum and its mirror.  The necessity direction is
    skipped when entries repeat (ties make the optimal pair non-unique).
    """
    values = as_odds_vector(x)
    d = values.size
    if d > PROFILE_CAP:
        raise SizeCapError(
            f"per-window-length enumeration is capped at d <= {PROFILE_CAP} (got d = {d})"
        )
    distinct = np.unique(values).size == d

    rows = np.concatenate([chunk for chunk in _arrangement_chunks(values, 40_320)])
    profile = value_profile_many(rows)
    maxima = profile.max(axis=0)
    cutoff = maxima - tie_rel * np.abs(maxima)

    pend = pendulum_arrangement(values)
    pend_profile = value_profile_many(pend[None, :])[0]
    if np.any(pend_profile < cutoff):
        return False
    if not distinct:
        return True

    attains_all = np.all(profile >= cutoff[None, :], axis=1)
    winners = {tuple(rows[k].tolist()) for k in np.nonzero(attains_all)[0]}
    mirrored = mirror_permutation(d).apply(pend)
    return winners == {tuple(pend.tolist()), tuple(mirrored.tolist())}


def budget_optimal(constraint: BudgetConstraint) -> np.ndarray:
    """Escape-time maximizer over a box-with-budget constraint set.

    With budget to spare (``b >= d * a``) the uniform cap vector is
    optimal.  Otherwise the budget buys ``floor(b / a)`` entries at the
    cap plus one remainder entry, pendulum-arranged.  An infeasible cap
    (``a == 0`` with ``b > 0``) yields the all-zeros vector; there is
    nothing to allocate.
    """
    a, b, d = constraint.a, constraint.b, constraint.d
    if a == 0.0 or b == 0.0:
        return np.zeros(d)
    if b >= d * a:
        return np.full(d, a)
    full = min(d, int(math.floor(b / a)))
    remainder = min(a, max(0.0, b - full * a))
    entries = np.zeros(d)
    entries[:full] = a
    if full < d:
        entries[full] = remainder
    return pendulum_arrangement(entries)


def best_over_extreme_points(points: Iterable) -> tuple[np.ndarray, float]:
    """Best pendulum arrangement over caller-supplied extreme points.

    For constraint sets whose extreme points are closed under the
    pendulum rearrangement, the continuous problem reduces to scoring
    ``pendulum_arrangement(point)`` for each extreme point and keeping
    the best.  Returns the winning arrangement and its escape time.
    """
    best_value = -math.inf
    best_point: Optional[np.ndarray] = None
    for point in points:
        arranged = pendulum_arrangement(as_transition_vector(point))
        value = expected_escape_closed_form(arranged)
        if value > best_value:
            best_value = value
            best_point = arranged
    if best_point is None:
        raise ValueError("no extreme points supplied")
    return best_point, best_value


def verify_convexity(samples: int, d: int, seed: int, rel_tol: float = 1e-9) -> bool:
    """Sample midpoint-style convexity checks of the escape time.

    Draws pairs ``p, q`` from ``[1/2, 0.95]^d`` — the region where the
    escape time is convex — and random mixing weights, and checks
    ``E(lam * p + (1 - lam) * q) <= lam * E(p) + (1 - lam) * E(q)`` up to
    ``rel_tol`` relative slack.  True iff every sample passes.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    return _convexity_counterexample(samples, d, seed, rel_tol) is None


def _convexity_counterexample(
    samples: int, d: int, seed: int, rel_tol: float
) -> Optional[tuple[np.ndarray, np.ndarray, float]]:
    """First sampled (p, q, lam) violating the convexity inequality, if any."""
    if d < 1:
        raise DimensionError("dimension d must be at least 1")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=[int(seed) & (2**63 - 1), 6]))
    for _ in range(samples):
        p = rng.uniform(0.5, 0.95, d)
        q = rng.uniform(0.5, 0.95, d)
        lam = rng.uniform(0.0, 1.0)
        left = expected_escape_closed_form(lam * p + (1.0 - lam) * q)
        right = lam * expected_escape_closed_form(p) + (1.0 - lam) * expected_escape_closed_form(q)
        if left > right + rel_tol * right:
            return p, q, lam
    return None
