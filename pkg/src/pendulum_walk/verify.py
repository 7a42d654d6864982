"""Randomized and exhaustive property suites over the library's claims.

Each suite draws seeded random instances, checks one family of
inequalities or identities, and reports how many checks ran, how many
failed, and the first counterexample verbatim.  The suites back the
``verify`` CLI subcommand and the acceptance tests; scales are
parameters, so callers pin the case counts they need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .arrangements import (
    improving_permutation,
    inversion_count,
    mirror_permutation,
    odd_even_pass,
    pendulum_arrangement,
    pendulum_sort,
    sorted_to_pendulum_permutation,
)
from .escape import (
    expected_escape_closed_form,
    value_profile_many,
    window_product,
    window_value,
    window_value_decomposition,
)
from .optimize import verify_theorem1, verify_theorem3

__all__ = [
    "SuiteResult",
    "theorem1_suite",
    "theorem3_suite",
    "improving_value_suite",
    "pendulum_sort_suite",
    "inversion_bound_suite",
    "value_decomposition_suite",
    "invariant_pairs_suite",
    "disjoint_windows_suite",
    "single_windows_suite",
    "rectangle_suite",
    "convexity_suite",
    "lemma_suites",
    "run_suites",
    "SUITE_NAMES",
]

SUITE_NAMES = ("theorem1", "theorem3", "lemmas", "convexity", "all")


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one property suite."""

    name: str
    checks: int
    failures: int
    first_counterexample: Optional[str]

    @property
    def passed(self) -> bool:
        return self.failures == 0


class _Tally:
    """Accumulates checks/failures and remembers the first counterexample."""

    def __init__(self, name: str):
        self.name = name
        self.checks = 0
        self.failures = 0
        self.first: Optional[str] = None

    def record(self, ok: bool, describe) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first is None:
                self.first = describe()

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.checks, self.failures, self.first)


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=[int(seed) & (2**63 - 1), salt]))


def _distinct_uniform(rng: np.random.Generator, d: int, lo: float, hi: float) -> np.ndarray:
    while True:
        draw = rng.uniform(lo, hi, d)
        if np.unique(draw).size == d:
            return draw


def theorem1_suite(
    per_d: int = 100,
    d_values: Sequence[int] = range(2, 9),
    seed: int = 1729,
    threads: int = 1,
) -> SuiteResult:
    """Exhaustive argmax set == {pendulum, mirrored pendulum} on random p."""
    tally = _Tally("theorem1-argmax-set")
    rng = _rng(seed, 1)
    for d in d_values:
        for _ in range(per_d):
            p = _distinct_uniform(rng, d, 0.05, 0.95)
            tally.record(verify_theorem1(p, threads=threads), lambda p=p: f"p={p.tolist()!r}")
    return tally.result()


def theorem3_suite(
    per_d: int = 100,
    d_values: Sequence[int] = range(2, 8),
    seed: int = 1729,
) -> SuiteResult:
    """Per-window-length sufficiency and necessity on random odds vectors."""
    tally = _Tally("theorem3-window-values")
    rng = _rng(seed, 2)
    for d in d_values:
        for _ in range(per_d):
            x = _distinct_uniform(rng, d, 0.05, 4.0)
            tally.record(verify_theorem3(x), lambda x=x: f"x={x.tolist()!r}")
    return tally.result()


def improving_value_suite(trials: int = 1000, d_max: int = 10, seed: int = 1729) -> SuiteResult:
    """Improving permutations never lower any window value; strict witness.

    For every span, every window value of the permuted vector must be at
    least its old value (1e-12 relative slack).  When the full-span
    application changes the vector to something other than its mirror
    image, some window length must improve strictly.
    """
    tally = _Tally("improving-permutation-values")
    rng = _rng(seed, 3)
    rel = 1e-12
    for _ in range(trials):
        d = int(rng.integers(1, d_max + 1))
        x = rng.uniform(0.05, 4.0, d)
        improved = [improving_permutation(x, span)[1] for span in range(1, d + 1)]
        profiles = value_profile_many(np.vstack([x[None, :]] + [y[None, :] for y in improved]))
        base = profiles[0]
        for span in range(1, d + 1):
            ok = bool(np.all(profiles[span] >= base - rel * np.abs(base)))
            tally.record(ok, lambda x=x, span=span: f"x={x.tolist()!r} span={span}")
        full = improved[d - 1]
        mirrored = mirror_permutation(d).apply(x)
        if not np.array_equal(full, x) and not np.array_equal(full, mirrored):
            ok = bool(np.any(profiles[d] > base))
            tally.record(ok, lambda x=x: f"no strict witness for x={x.tolist()!r}")
    return tally.result()


def pendulum_sort_suite(trials: int = 1000, d_max: int = 50, seed: int = 1729) -> SuiteResult:
    """Pendulum sort: fixpoint, sweep bound, and pass conjugation.

    Checks that iterated sweeps reach exactly the pendulum arrangement
    within ceil(d/2) sweeps, and that the improving sweeps, conjugated by
    the sorted-to-pendulum permutation, act as the odd and even
    compare-exchange passes.
    """
    tally = _Tally("pendulum-sort")
    rng = _rng(seed, 4)
    for _ in range(trials):
        d = int(rng.integers(1, d_max + 1))
        x = _distinct_uniform(rng, d, 0.0, 10.0)
        final, trace = pendulum_sort(x)
        ok = np.array_equal(final, pendulum_arrangement(x)) and len(trace) - 1 <= math.ceil(d / 2)
        tally.record(ok, lambda x=x: f"x={x.tolist()!r}")

        carrier = sorted_to_pendulum_permutation(d)
        unsort = carrier.inverse()
        mirror = mirror_permutation(d)
        lifted = carrier.apply(x)
        odd_side = unsort.apply(improving_permutation(lifted, d)[1])
        ok = np.array_equal(odd_side, odd_even_pass(x, "odd"))
        tally.record(ok, lambda x=x: f"odd pass mismatch for x={x.tolist()!r}")
        flipped = mirror.apply(lifted)
        if d >= 2:
            flipped = improving_permutation(flipped, d - 1)[1]
        even_side = unsort.apply(mirror.apply(flipped))
        ok = np.array_equal(even_side, odd_even_pass(x, "even"))
        tally.record(ok, lambda x=x: f"even pass mismatch for x={x.tolist()!r}")
    return tally.result()


def inversion_bound_suite(trials: int = 1000, d_max: int = 8, seed: int = 1729) -> SuiteResult:
    """Per-position inversion counts after an odd pass obey the case bound."""
    tally = _Tally("inversion-count-bounds")
    rng = _rng(seed, 5)
    for _ in range(trials):
        d = int(rng.integers(1, d_max + 1))
        z = rng.uniform(0.0, 10.0, d)
        after = odd_even_pass(z, "odd")
        for i in range(1, d + 1):
            if i % 2 == 0:
                bound = inversion_count(z, max(1, i - 1))
            elif i < d:
                bound = max(inversion_count(z, i), inversion_count(z, i + 1) - 1)
            else:
                bound = inversion_count(z, d)
            tally.record(
                inversion_count(after, i) <= bound,
                lambda z=z, i=i: f"z={z.tolist()!r} position={i}",
            )
    return tally.result()


def value_decomposition_suite(trials: int = 1000, d_max: int = 10, seed: int = 1729) -> SuiteResult:
    """Axis decomposition of a window value reproduces it for all (m, span)."""
    tally = _Tally("window-value-decomposition")
    rng = _rng(seed, 6)
    rel = 1e-12
    for _ in range(trials):
        d = int(rng.integers(1, d_max + 1))
        x = rng.uniform(0.05, 3.0, d)
        m = int(rng.integers(1, d + 1))
        span = int(rng.integers(1, d + 1))
        direct = window_value(x, m)
        decomposed = window_value_decomposition(x, m, span)
        ok = abs(direct - decomposed) <= rel * abs(direct)
        tally.record(ok, lambda x=x, m=m, span=span: f"x={x.tolist()!r} m={m} span={span}")
    return tally.result()


def _fraction_window(x: np.ndarray, m: int, i: int) -> Fraction:
    d = x.size
    if not 1 <= i <= d - m + 1:
        return Fraction(0)
    out = Fraction(1)
    for v in x[i - 1 : i + m - 1].tolist():
        out *= Fraction(v)
    return out


def invariant_pairs_suite(trials: int = 1000, d_max: int = 10, seed: int = 1729) -> SuiteResult:
    """Mirrored window pairs have an invariant product, exactly.

    The improving permutation only trades factors between the two windows
    of a pair, so the pair product is preserved as a multiset product.
    Checked in exact rational arithmetic (float products of the same
    factors grouped differently may differ in the last bits).
    """
    tally = _Tally("invariant-window-pairs")
    rng = _rng(seed, 7)
    for _ in range(trials):
        d = int(rng.integers(1, d_max + 1))
        x = rng.uniform(0.05, 3.0, d)
        span = int(rng.integers(1, d + 1))
        m = int(rng.integers(1, span + 1))
        top = (span + 2 - m) // 2
        if top < 1:
            continue
        i = int(rng.integers(1, top + 1))
        j = span + 2 - m - i
        _, y = improving_permutation(x, span)
        before = _fraction_window(x, m, i) * _fraction_window(x, m, j)
        after = _fraction_window(y, m, i) * _fraction_window(y, m, j)
        tally.record(
            before == after,
            lambda x=x, m=m, span=span, i=i: f"x={x.tolist()!r} m={m} span={span} i={i}",
        )
    return tally.result()


def disjoint_windows_suite(trials: int = 1000, d_max: int = 10, seed: int = 1729) -> SuiteResult:
    """Either window of a disjoint mirrored pair is dominated after improving."""
    tally = _Tally("disjoint-window-domination")
    rng = _rng(seed, 8)
    rel = 1e-12
    for _ in range(trials):
        d = int(rng.integers(2, d_max + 1))
        x = rng.uniform(0.05, 3.0, d)
        span = int(rng.integers(2, d + 1))
        m_top = span // 2
        if m_top < 1:
            continue
        m = int(rng.integers(1, m_top + 1))
        i_top = (span + 2 - 2 * m) // 2
        if i_top < 1:
            continue
        i = int(rng.integers(1, i_top + 1))
        j = span + 2 - m - i
        _, y = improving_permutation(x, span)
        pair_max = max(window_product(x, m, i), window_product(x, m, j))
        dominating = window_product(y, m, j)
        tally.record(
            pair_max <= dominating * (1.0 + rel),
            lambda x=x, m=m, span=span, i=i: f"x={x.tolist()!r} m={m} span={span} i={i}",
        )
    return tally.result()


def single_windows_suite(trials: int = 1000, d_max: int = 10, seed: int = 1729) -> SuiteResult:
    """Windows right of the improving span never lose value."""
    tally = _Tally("single-window-improvement")
    rng = _rng(seed, 9)
    rel = 1e-12
    for _ in range(trials):
        d = int(rng.integers(1, d_max + 1))
        x = rng.uniform(0.05, 3.0, d)
        span = int(rng.integers(1, d + 1))
        m = int(rng.integers(1, d + 1))
        _, y = improving_permutation(x, span)
        for i in range(max(1, span + 2 - m), d - m + 2):
            tally.record(
                window_product(y, m, i) >= window_product(x, m, i) * (1.0 - rel),
                lambda x=x, m=m, span=span, i=i: f"x={x.tolist()!r} m={m} span={span} i={i}",
            )
    return tally.result()


def rectangle_suite(trials: int = 1000, seed: int = 1729) -> SuiteResult:
    """Fixed product, strictly smaller maximum => strictly smaller sum."""
    tally = _Tally("rectangle-circumference")
    rng = _rng(seed, 10)
    for _ in range(trials):
        x1 = float(rng.uniform(0.01, 2.0))
        x2 = float(x1 + rng.uniform(0.05, 3.0))
        area = x1 * x2
        root = math.sqrt(area)
        u = float(rng.uniform(0.05, 0.95))
        y2 = root * (x2 / root) ** u  # strictly between sqrt(area) and x2
        y1 = area / y2
        ok = (max(y1, y2) < max(x1, x2)) and (y1 + y2 < x1 + x2)
        tally.record(ok, lambda: f"x=({x1!r}, {x2!r}) y=({y1!r}, {y2!r})")
    return tally.result()


def convexity_suite(samples: int = 1000, d_max: int = 12, seed: int = 1729) -> SuiteResult:
    """Midpoint convexity of the escape time on [1/2, 0.95]^d."""
    tally = _Tally("escape-time-convexity")
    rng = _rng(seed, 11)
    rel = 1e-9
    for _ in range(samples):
        d = int(rng.integers(1, d_max + 1))
        p = rng.uniform(0.5, 0.95, d)
        q = rng.uniform(0.5, 0.95, d)
        lam = float(rng.uniform(0.0, 1.0))
        left = expected_escape_closed_form(lam * p + (1.0 - lam) * q)
        right = lam * expected_escape_closed_form(p) + (1.0 - lam) * expected_escape_closed_form(q)
        tally.record(
            left <= right + rel * right,
            lambda p=p, q=q, lam=lam: f"p={p.tolist()!r} q={q.tolist()!r} lam={lam!r}",
        )
    return tally.result()


def lemma_suites(trials: int = 1000, seed: int = 1729) -> list[SuiteResult]:
    """All window/sorting suites at a common scale."""
    return [
        improving_value_suite(trials=trials, seed=seed),
        pendulum_sort_suite(trials=trials, seed=seed),
        inversion_bound_suite(trials=trials, seed=seed),
        value_decomposition_suite(trials=trials, seed=seed),
        invariant_pairs_suite(trials=trials, seed=seed),
        disjoint_windows_suite(trials=trials, seed=seed),
        single_windows_suite(trials=trials, seed=seed),
        rectangle_suite(trials=trials, seed=seed),
    ]


def run_suites(suite: str, trials: int, seed: int, threads: int = 1) -> list[SuiteResult]:
    """Run the named suite family at a common scale."""
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES}")
    results: list[SuiteResult] = []
    if suite in ("theorem1", "all"):
        results.append(theorem1_suite(per_d=trials, seed=seed, threads=threads))
    if suite in ("theorem3", "all"):
        results.append(theorem3_suite(per_d=trials, seed=seed))
    if suite in ("lemmas", "all"):
        results.extend(lemma_suites(trials=trials, seed=seed))
    if suite in ("convexity", "all"):
        results.append(convexity_suite(samples=trials, seed=seed))
    return results
