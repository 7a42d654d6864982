"""Exact escape-time analytics for the heterogeneous walk on a line.

The walk lives on states ``0..d+1``: it starts at 0, state 0 always moves
to 1, interior state ``i`` moves back with probability ``p_i`` and
forward otherwise, and ``d+1`` absorbs.  Writing ``x = p / (1 - p)`` for
the elementwise odds, the expected escape time from 0 has the closed form

    E = (d + 1) + 2 * sum_{m=1}^{d} sum_{i=1}^{d-m+1} prod_{j=i}^{i+m-1} x_j,

i.e. ``d + 1`` plus twice the sum of all contiguous-window products of
the odds vector.  ``expected_escape_linear_system`` computes the same
quantity by forward-substituting the first-step difference recursion of
the underlying (d+2)-state chain, which keeps the two routes independent:
one is the oracle for the other.

Scalar functions favor accuracy: window products are recomputed per
window and summed with ``math.fsum`` (error-free summation).  The
``*_many`` batch variants evaluate whole matrices of arrangements with
plain float64 numpy reductions; windows there are grown by one factor at
a time, which reproduces the scalar product rounding exactly and is safe
in the presence of zero entries (no divisions).  Window products grow
exponentially in d, so a log10 evaluation path (log window products
combined by log-sum-exp) is provided for regimes where the linear value
overflows.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError
from .vectors import as_transition_vector, as_vector

__all__ = [
    "odds",
    "window_product",
    "window_value",
    "value_profile",
    "total_value",
    "window_value_decomposition",
    "expected_escape_closed_form",
    "expected_escape_linear_system",
    "log10_expected_escape",
    "total_value_many",
    "value_profile_many",
    "expected_escape_many",
    "log10_expected_escape_many",
]


def odds(p) -> np.ndarray:
    """Elementwise odds ``p / (1 - p)`` of a transition vector.

    The map is strictly increasing on [0, 1), so ``p`` and ``odds(p)``
    share their sorted order — arrangement questions transfer verbatim.
    """
    arr = as_transition_vector(p)
    return arr / (1.0 - arr)


def window_product(x, m: int, i: int) -> float:
    """Product of ``x`` over the window ``i .. i + m - 1`` (1-based).

    Returns exactly 0.0 whenever the window is not fully inside
    ``1..d``; this zero-padding convention keeps boundary cases of the
    window identities uniform.
    """
    arr = as_vector(x)
    d = arr.size
    if not 1 <= m <= d:
        raise ValueError(f"window length m must be in 1..{d}, got {m}")
    if not 1 <= i <= d - m + 1:
        return 0.0
    return math.prod(arr[i - 1 : i + m - 1].tolist())


def window_value(x, m: int) -> float:
    """Sum of all length-``m`` contiguous window products of ``x``."""
    arr = as_vector(x)
    d = arr.size
    if not 1 <= m <= d:
        raise ValueError(f"window length m must be in 1..{d}, got {m}")
    return math.fsum(
        math.prod(arr[i : i + m].tolist()) for i in range(0, d - m + 1)
    )


def value_profile(x) -> np.ndarray:
    """Vector of window values for every window length ``m = 1..d``."""
    arr = as_vector(x)
    return np.array([window_value(arr, m) for m in range(1, arr.size + 1)])


def total_value(x) -> float:
    """Sum of window values over all window lengths.

    This is the arrangement-dependent part of the escape time:
    ``expected_escape_closed_form(p) == (d + 1) + 2 * total_value(odds(p))``.
    """
    arr = as_vector(x)
    d = arr.size
    return math.fsum(
        math.prod(arr[i : i + m].tolist())
        for m in range(1, d + 1)
        for i in range(0, d - m + 1)
    )


def window_value_decomposition(x, m: int, span: int) -> float:
    """Window value of length ``m`` recomposed around the axis of ``span``.

    Splits the windows into mirrored pairs across the axis
    ``(span + 1) / 2``, a tail of windows living right of the span, and a
    self-mirrored middle window present when ``span - m`` is even:

        sum_{i=1}^{ceil((span-m)/2)} [w_m(i) + w_m(span+2-m-i)]
        + sum_{i=span+2-m}^{d+1-m} w_m(i)
        + w_m((span+2-m)/2) * [span - m even]

    Out-of-range windows contribute 0, so the identity with
    ``window_value`` holds for every ``m`` and ``span`` in ``1..d``.
    Exists as the independently-computed side of that identity's tests.
    """
    arr = as_vector(x)
    d = arr.size
    if not 1 <= m <= d or not 1 <= span <= d:
        raise ValueError(f"m and span must be in 1..{d}, got m={m}, span={span}")
    pair_top = math.ceil((span - m) / 2)
    terms = []
    for i in range(1, pair_top + 1):
        terms.append(window_product(arr, m, i))
        terms.append(window_product(arr, m, span + 2 - m - i))
    for i in range(span + 2 - m, d - m + 2):
        terms.append(window_product(arr, m, i))
    if (span - m) % 2 == 0:
        terms.append(window_product(arr, m, (span + 2 - m) // 2))
    return math.fsum(terms)


def expected_escape_closed_form(p) -> float:
    """Expected escape time from 0, via the window-product closed form.

    Always at least ``d + 1`` and exactly ``d + 1`` on the all-zeros
    vector; invariant under index reversal of ``p``.
    """
    arr = as_transition_vector(p)
    return (arr.size + 1) + 2.0 * total_value(arr / (1.0 - arr))


def expected_escape_linear_system(p) -> float:
    """Expected escape time from 0, via the first-step recursion.

    Solves the (d+2)-state first-step equations by forward substitution
    on the successive differences ``D_k = E_k - E_{k+1}``:

        D_0 = 1,   D_k = x_k * D_{k-1} + 1 / (1 - p_k),

    with ``E_0 = 1 + sum_k D_k``.  O(d), no linear-algebra dependency,
    and independent of the closed-form summation — the two serve as
    oracles for each other.
    """
    arr = as_transition_vector(p)
    diff = 1.0
    diffs = []
    for pk in arr.tolist():
        back = 1.0 / (1.0 - pk)
        diff = (pk * back) * diff + back
        diffs.append(diff)
    return 1.0 + math.fsum(diffs)


def _log_window_matrix(odds_rows: np.ndarray) -> np.ndarray:
    """Natural-log window products for every row, zero windows as -inf."""
    n, d = odds_rows.shape
    positive = odds_rows > 0.0
    safe = np.where(positive, odds_rows, 1.0)
    logs = np.where(positive, np.log(safe), 0.0)
    prefix = np.zeros((n, d + 1))
    prefix[:, 1:] = np.cumsum(logs, axis=1)
    zeros = np.zeros((n, d + 1), dtype=np.int64)
    zeros[:, 1:] = np.cumsum(~positive, axis=1)
    parts = []
    for m in range(1, d + 1):
        w = prefix[:, m:] - prefix[:, : d + 1 - m]
        has_zero = (zeros[:, m:] - zeros[:, : d + 1 - m]) > 0
        w = np.where(has_zero, -np.inf, w)
        parts.append(w)
    return np.concatenate(parts, axis=1)


def log10_expected_escape(p) -> float:
    """log10 of the expected escape time, computed in the log domain.

    Safe in regimes where the linear closed form overflows float64.
    """
    return float(log10_expected_escape_many(np.asarray(p, dtype=np.float64)[None, :])[0])


def total_value_many(odds_rows) -> np.ndarray:
    """Total value of each row of a matrix of odds vectors."""
    rows = _as_rows(odds_rows)
    d = rows.shape[1]
    prods = rows.copy()
    totals = prods.sum(axis=1)
    for m in range(2, d + 1):
        prods = prods[:, :-1] * rows[:, m - 1 :]
        totals = totals + prods.sum(axis=1)
    return totals


def value_profile_many(odds_rows) -> np.ndarray:
    """(n, d) matrix of window values, one column per window length."""
    rows = _as_rows(odds_rows)
    n, d = rows.shape
    profile = np.empty((n, d))
    prods = rows.copy()
    profile[:, 0] = prods.sum(axis=1)
    for m in range(2, d + 1):
        prods = prods[:, :-1] * rows[:, m - 1 :]
        profile[:, m - 1] = prods.sum(axis=1)
    return profile


def expected_escape_many(p_rows) -> np.ndarray:
    """Closed-form escape time of each row of a matrix of transition vectors."""
    rows = _as_rows(p_rows)
    if np.any(rows < 0.0) or np.any(rows >= 1.0):
        raise DomainError("transition probabilities must lie in [0, 1)")
    d = rows.shape[1]
    return (d + 1) + 2.0 * total_value_many(rows / (1.0 - rows))


def log10_expected_escape_many(p_rows) -> np.ndarray:
    """log10 escape time of each row, evaluated in the log domain."""
    rows = _as_rows(p_rows)
    if np.any(rows < 0.0) or np.any(rows >= 1.0):
        raise DomainError("transition probabilities must lie in [0, 1)")
    d = rows.shape[1]
    log_windows = _log_window_matrix(rows / (1.0 - rows))
    log_total = logsumexp(log_windows, axis=1)
    log_escape = np.logaddexp(math.log(d + 1), math.log(2.0) + log_total)
    return log_escape / math.log(10.0)


def _as_rows(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise DomainError(f"expected an (n, d) matrix with d >= 1, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("matrix entries must be finite")
    return arr
