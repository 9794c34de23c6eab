"""Distances between probability vectors on a common support."""

from __future__ import annotations

import numpy as np


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return a, b


def l2_squared(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.sum((a - b) ** 2))


def hellinger_squared(a, b) -> float:
    """Squared Hellinger distance, half the sum of squared root differences."""
    a, b = _pair(a, b)
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("Hellinger distance needs nonnegative entries")
    return float(0.5 * np.sum((np.sqrt(a) - np.sqrt(b)) ** 2))


def l1(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.sum(np.abs(a - b)))


METRICS = {
    "l2": l2_squared,
    "hellinger": hellinger_squared,
    "l1": l1,
}
