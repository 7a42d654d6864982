"""Random-environment sweeps over arrangements, with CSV output.

Two studies at desk scale:

* a *variance sweep* draws environments with entries uniform on
  ``[0.5 - x, 0.5 + x]`` for a grid of half-widths ``x`` and scores the
  maximal (pendulum), minimal (exhaustive), ascending-sorted, and
  random-arrangement escape times per instantiation;
* a *d sweep* grows the line length under a fixed entry distribution and
  tracks the maximal, sorted, and random arrangements, which is where the
  exponential-vs-linear growth regimes (and the crossover between them)
  show up.

The "random" arrangement statistic is the mean escape time under the
uniform measure over all arrangements: exact (all distinct arrangements)
up to d = 8, Monte-Carlo over sampled permutations beyond.  Escape times
in the exponential regime overflow float64, so every record carries
log10 of the value as the primary statistic and the linear value only
when it is representable.

Everything is driven by per-(point, instantiation) seed streams, so a
sweep is a pure function of its configuration: rerunning a sweep writes a
byte-identical CSV.  Aggregate rows (mean log10 per sweep point) are
appended to the record list with ``instantiation == -1``.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .arrangements import pendulum_arrangement
from .errors import DimensionError, DomainError, SizeCapError
from .escape import expected_escape_many, log10_expected_escape_many
from .optimize import BRUTE_FORCE_CAP, brute_force_min, _arrangement_chunks

__all__ = [
    "EnvironmentSpec",
    "ExperimentRecord",
    "CSV_HEADER",
    "EXACT_MEAN_CAP",
    "run_variance_sweep",
    "run_d_sweep",
    "exact_random_arrangement_mean",
    "detect_crossover",
    "write_records_csv",
]

EXACT_MEAN_CAP = 8            # exhaustive permutation averaging cap
_LINEAR_LIMIT = 307.0         # log10 threshold for storing a linear value

CSV_HEADER = [
    "experiment", "d", "lo", "hi", "x", "instantiation",
    "arrangement", "log10_escape", "escape_or_null", "seed",
]


@dataclass(frozen=True)
class EnvironmentSpec:
    """One random-environment family: entries i.i.d. uniform on [lo, hi)."""

    d: int
    lo: float
    hi: float
    instantiations: int
    seed: int

    def __post_init__(self):
        if self.d < 1:
            raise DimensionError("dimension d must be at least 1")
        if not 0.0 <= self.lo <= self.hi or self.hi >= 1.0:
            raise DomainError(f"need 0 <= lo <= hi < 1, got [{self.lo}, {self.hi}]")
        if self.instantiations < 1:
            raise ValueError("instantiations must be at least 1")


@dataclass(frozen=True)
class ExperimentRecord:
    """One row of a sweep; ``instantiation == -1`` marks an aggregate row."""

    experiment: str
    d: int
    lo: float
    hi: float
    x: Optional[float]
    instantiation: int
    arrangement: str
    log10_escape: float
    escape: Optional[float]
    seed: int


def _env_rng(seed: int, point_index: int, instantiation: int) -> np.random.Generator:
    entropy = [int(seed) & (2**63 - 1), point_index, instantiation]
    return np.random.default_rng(np.random.SeedSequence(entropy=entropy))


def _record(experiment, d, lo, hi, x, instantiation, arrangement, log10_value, seed):
    linear = 10.0 ** log10_value if log10_value < _LINEAR_LIMIT else None
    return ExperimentRecord(
        experiment=experiment, d=d, lo=lo, hi=hi, x=x,
        instantiation=instantiation, arrangement=arrangement,
        log10_escape=log10_value, escape=linear, seed=seed,
    )


def exact_random_arrangement_mean(p) -> float:
    """Mean escape time under the uniform measure over all arrangements.

    Exhaustive (distinct arrangements, multiset-weighted) — capped at
    d <= 8.
    """
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise DimensionError("expected a 1-D vector")
    if arr.size > EXACT_MEAN_CAP:
        raise SizeCapError(f"exact permutation mean is capped at d <= {EXACT_MEAN_CAP}")
    total = 0.0
    count = 0
    for rows in _arrangement_chunks(arr, 40_320):
        vals = expected_escape_many(rows)
        total += float(vals.sum())
        count += vals.size
    return total / count


def _sampled_random_log10(p: np.ndarray, perm_samples: int, rng: np.random.Generator) -> float:
    """log10 of the Monte-Carlo permutation mean, combined in log domain."""
    rows = np.stack([rng.permutation(p) for _ in range(perm_samples)])
    logs = log10_expected_escape_many(rows) * math.log(10.0)
    peak = float(np.max(logs))
    mean_log = peak + math.log(float(np.mean(np.exp(logs - peak))))
    return mean_log / math.log(10.0)


def run_variance_sweep(
    x_values: Sequence[float],
    d: int,
    instantiations: int,
    seed: int,
    perm_samples: int = 200,
    include_minimal: bool = True,
) -> list[ExperimentRecord]:
    """Score arrangements across environments of growing entry variance.

    For each half-width ``x`` draws ``instantiations`` environments with
    entries uniform on ``[0.5 - x, 0.5 + x]`` and records the maximal,
    minimal (when enabled), sorted, and random arrangement escape times.
    """
    if len(x_values) == 0:
        raise ValueError("x_values must be nonempty")
    for x in x_values:
        if not 0.0 <= x < 0.5:
            raise DomainError(f"half-width x must lie in [0, 0.5), got {x}")
    if include_minimal and d > BRUTE_FORCE_CAP:
        raise SizeCapError(
            f"minimal arrangement requires d <= {BRUTE_FORCE_CAP}; "
            "pass include_minimal=False for larger d"
        )
    records: list[ExperimentRecord] = []
    for xi, x in enumerate(x_values):
        lo, hi = 0.5 - x, 0.5 + x
        per_arrangement: dict[str, list[float]] = {}
        for j in range(instantiations):
            rng = _env_rng(seed, xi, j)
            p = rng.uniform(lo, hi, d)
            stats = _arrangement_stats(p, include_minimal, perm_samples, rng)
            for name, log10_value in stats.items():
                per_arrangement.setdefault(name, []).append(log10_value)
                records.append(_record("variance_sweep", d, lo, hi, x, j, name, log10_value, seed))
        for name, logs in per_arrangement.items():
            records.append(
                _record("variance_sweep", d, lo, hi, x, -1, name, float(np.mean(logs)), seed)
            )
    return records


def _arrangement_stats(
    p: np.ndarray, include_minimal: bool, perm_samples: int, rng: np.random.Generator
) -> dict[str, float]:
    d = p.size
    special = np.stack([pendulum_arrangement(p), np.sort(p)])
    vmax, vsorted = expected_escape_many(special)
    stats = {"maximal": math.log10(vmax), "sorted": math.log10(vsorted)}
    if d <= EXACT_MEAN_CAP:
        total = 0.0
        count = 0
        vmin = math.inf
        for rows in _arrangement_chunks(p, 40_320):
            vals = expected_escape_many(rows)
            total += float(vals.sum())
            count += vals.size
            vmin = min(vmin, float(vals.min()))
        stats["random"] = math.log10(total / count)
        if include_minimal:
            stats["minimal"] = math.log10(vmin)
    else:
        stats["random"] = _sampled_random_log10(p, perm_samples, rng)
        if include_minimal:
            stats["minimal"] = math.log10(brute_force_min(p).optimal_value)
    return stats


def run_d_sweep(
    d_values: Sequence[int],
    lo: float,
    hi: float,
    instantiations: int,
    perm_samples: int,
    seed: int,
) -> list[ExperimentRecord]:
    """Track maximal/sorted/random arrangements as the line grows.

    The minimal arrangement is excluded (exhaustive search is infeasible
    at large d).  The random statistic averages ``perm_samples`` sampled
    permutations per instantiation; values are handled in the log domain
    so the exponential-growth regime cannot overflow.
    """
    if len(d_values) == 0:
        raise ValueError("d_values must be nonempty")
    if not 0.0 <= lo <= hi or hi >= 1.0:
        raise DomainError(f"need 0 <= lo <= hi < 1, got [{lo}, {hi}]")
    if perm_samples < 1:
        raise ValueError("perm_samples must be at least 1")
    records: list[ExperimentRecord] = []
    for di, d in enumerate(d_values):
        if d < 1:
            raise DimensionError("every d must be at least 1")
        per_arrangement: dict[str, list[float]] = {}
        for j in range(instantiations):
            rng = _env_rng(seed, di, j)
            p = rng.uniform(lo, hi, d)
            special = np.stack([pendulum_arrangement(p), np.sort(p)])
            lmax, lsorted = log10_expected_escape_many(special)
            stats = {
                "maximal": float(lmax),
                "sorted": float(lsorted),
                "random": _sampled_random_log10(p, perm_samples, rng),
            }
            for name, log10_value in stats.items():
                per_arrangement.setdefault(name, []).append(log10_value)
                records.append(_record("d_sweep", d, lo, hi, None, j, name, log10_value, seed))
        for name, logs in per_arrangement.items():
            records.append(_record("d_sweep", d, lo, hi, None, -1, name, float(np.mean(logs)), seed))
    return records


def detect_crossover(records: Sequence[ExperimentRecord], threshold_log10: float = 1.0) -> Optional[int]:
    """First d where the mean maximal/random ratio exceeds a threshold.

    Reads the aggregate rows of a d-sweep and reports the smallest d at
    which ``mean log10(maximal) - mean log10(random)`` passes
    ``threshold_log10`` (default: a 10x ratio).  Returns None when the
    sweep never separates — the crossover location is descriptive, not a
    contract.
    """
    maximal: dict[int, float] = {}
    random_: dict[int, float] = {}
    for rec in records:
        if rec.instantiation != -1 or rec.experiment != "d_sweep":
            continue
        if rec.arrangement == "maximal":
            maximal[rec.d] = rec.log10_escape
        elif rec.arrangement == "random":
            random_[rec.d] = rec.log10_escape
    for d in sorted(maximal):
        if d in random_ and maximal[d] - random_[d] > threshold_log10:
            return d
    return None


def write_records_csv(records: Sequence[ExperimentRecord], path) -> None:
    """Write records to ``path`` atomically (temp file + rename).

    Floats are rendered with ``repr`` (shortest round-trip form), so
    identical records always produce identical bytes.
    """
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_HEADER)
            for rec in records:
                writer.writerow([
                    rec.experiment,
                    rec.d,
                    repr(rec.lo),
                    repr(rec.hi),
                    "" if rec.x is None else repr(rec.x),
                    rec.instantiation,
                    rec.arrangement,
                    repr(rec.log10_escape),
                    "" if rec.escape is None else repr(rec.escape),
                    rec.seed,
                ])
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
