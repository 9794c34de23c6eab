"""Closed-form limit covariances and n-scaled limit risks.

All functions take the true pmf together with its flat regions and
reject pairs where ``p`` is not strictly decreasing across regions.
"""

from __future__ import annotations

import numpy as np

from .core import FlatSpec, Pmf, group_pmf, validate_monotone_with_flats

PSD_CHECK_MAX_DIM = 50


def _grouped_values(p: Pmf, spec: FlatSpec) -> np.ndarray:
    if not validate_monotone_with_flats(p, spec):
        raise ValueError(
            f"pmf is not flat on regions {spec.w.tolist()} with strict drops between them"
        )
    return group_pmf(p, spec).values


def sigma_grouped(p: Pmf, spec: FlatSpec) -> np.ndarray:
    """m x m limit covariance of sqrt(n) (grouped MLE - truth).

    Entry (i, j) is ``delta_ij p'_i / w_i - p'_i p'_j``.
    """
    g = _grouped_values(p, spec)
    return np.diag(g / spec.w) - np.outer(g, g)


def sigma_star(p: Pmf, spec: FlatSpec) -> np.ndarray:
    """k x k limit covariance of sqrt(n) (flat MLE - truth), ``A S A^T``."""
    A = spec.expansion_matrix()
    return A @ sigma_grouped(p, spec) @ A.T


def is_covariance(S: np.ndarray, sym_tol: float = 1e-12, eig_tol: float = 1e-10) -> bool:
    """Symmetry check, plus a PSD check for matrices up to 50 x 50."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        return False
    if np.max(np.abs(S - S.T), initial=0.0) > sym_tol:
        return False
    if S.shape[0] <= PSD_CHECK_MAX_DIM:
        return bool(np.linalg.eigvalsh(S).min() >= -eig_tol)
    return True


def limit_l2_risk_flat(p: Pmf, spec: FlatSpec) -> float:
    """lim E[n l2^2] of the flat MLE: sum_j w_j p'_j (1/w_j - p'_j)."""
    g = _grouped_values(p, spec)
    w = spec.w
    return float(np.sum(w * g * (1.0 / w - g)))


def _harmonic(w: np.ndarray) -> np.ndarray:
    return np.array([np.sum(1.0 / np.arange(1, n + 1)) for n in w.tolist()])


def limit_l2_risk_grenander(p: Pmf, spec: FlatSpec) -> float:
    """lim E[n l2^2] of the Grenander estimator: sum_j sum_{q<=w_j} p'_j (1/q - p'_j)."""
    g = _grouped_values(p, spec)
    return float(np.sum(g * (_harmonic(spec.w) - spec.w * g)))


def limit_hellinger_risk_flat(p: Pmf, spec: FlatSpec) -> float:
    """lim E[n H^2] of the flat MLE: (1/8) sum_j w_j (1/w_j - p'_j)."""
    g = _grouped_values(p, spec)
    w = spec.w
    return float(np.sum(w * (1.0 / w - g)) / 8.0)


def limit_hellinger_risk_grenander(p: Pmf, spec: FlatSpec) -> float:
    g = _grouped_values(p, spec)
    return float(np.sum(_harmonic(spec.w) - spec.w * g) / 8.0)


LIMIT_RISKS = {
    "l2": (limit_l2_risk_flat, limit_l2_risk_grenander),
    "hellinger": (limit_hellinger_risk_flat, limit_hellinger_risk_grenander),
}
