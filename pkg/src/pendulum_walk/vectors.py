"""Validation helpers for the vector types used throughout the library.

Vectors are plain 1-D ``float64`` numpy arrays.  Two conventions apply
everywhere:

* A *transition vector* ``p`` holds backward-move probabilities, one per
  interior site of the line.  Entries live in ``[0, 1)``; an entry equal
  to 1 would make the walk unable to terminate.
* An *odds vector* ``x`` holds the elementwise odds ``p / (1 - p)``.
  Entries are nonnegative, and strictly positive wherever a uniqueness
  claim is involved.

Indices reported to callers are 1-based (position 1 is the first interior
site); storage is 0-based as usual for numpy.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, DomainError

__all__ = ["as_vector", "as_transition_vector", "as_odds_vector"]


def as_vector(values) -> np.ndarray:
    """Coerce ``values`` to a finite 1-D float64 array with d >= 1."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError("dimension d must be at least 1")
    if not np.all(np.isfinite(arr)):
        raise DomainError("vector entries must be finite")
    return arr.copy()


def as_transition_vector(p) -> np.ndarray:
    """Validate a vector of backward-move probabilities, each in [0, 1)."""
    arr = as_vector(p)
    if np.any(arr < 0.0):
        raise DomainError("transition probabilities must be nonnegative")
    if np.any(arr >= 1.0):
        raise DomainError(
            "transition probabilities must be strictly below 1 "
            "(an entry of 1 makes the expected escape time infinite)"
        )
    return arr


def as_odds_vector(x) -> np.ndarray:
    """Validate a vector of odds values (nonnegative, finite)."""
    arr = as_vector(x)
    if np.any(arr < 0.0):
        raise DomainError("odds values must be nonnegative")
    return arr
