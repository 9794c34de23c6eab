"""Estimators of a monotone pmf from observed counts.

Each estimator maps a :class:`~monopmf.core.CountVector` to a
:class:`~monopmf.core.Pmf` on the same support. ``flat_mle`` also takes
the known flat-region lengths.
"""

from __future__ import annotations

import numpy as np

from .core import CountVector, FlatSpec, GroupedEstimate, Pmf, expand, group_counts
from .isotonic import WeightedSeq, lcm_left_derivatives, pava_decreasing

__all__ = [
    "ESTIMATORS",
    "empirical_estimator",
    "flat_mle",
    "flat_mle_grouped",
    "grenander_estimator",
    "grenander_lcm",
    "grouped_unrestricted_mle",
    "rearrangement_estimator",
]


def empirical_estimator(c: CountVector) -> Pmf:
    """Relative frequencies n_i / n, the unrestricted MLE."""
    return Pmf(c.counts / c.n)


def rearrangement_estimator(c: CountVector) -> Pmf:
    """Empirical frequencies sorted into nonincreasing order (stable)."""
    p = c.counts / c.n
    order = np.argsort(-p, kind="stable")
    return Pmf(p[order])


def grenander_estimator(c: CountVector) -> Pmf:
    """Antitonic regression of the empirical frequencies with unit weights.

    Equal to the left derivatives of the least concave majorant of the
    empirical CDF; see :func:`grenander_lcm` for that route.
    """
    p = c.counts / c.n
    return Pmf(pava_decreasing(WeightedSeq(p, np.ones(c.k))))


def grenander_lcm(c: CountVector) -> Pmf:
    return lcm_left_derivatives(c)


def grouped_unrestricted_mle(c: CountVector, spec: FlatSpec) -> GroupedEstimate:
    """Per-region MLE n'_j / (w_j n) ignoring the order between regions."""
    grouped = group_counts(c, spec)
    return GroupedEstimate(grouped / (spec.w * c.n), spec)


def flat_mle_grouped(c: CountVector, spec: FlatSpec) -> GroupedEstimate:
    """Order-restricted MLE of the region values.

    Weighted antitonic regression of :func:`grouped_unrestricted_mle`
    with the region lengths as weights.
    """
    raw = grouped_unrestricted_mle(c, spec)
    fitted = pava_decreasing(WeightedSeq(raw.values, spec.w.astype(float)))
    return GroupedEstimate(fitted, spec)


def flat_mle(c: CountVector, spec: FlatSpec) -> Pmf:
    """MLE of a nonincreasing pmf that is constant on each region of ``spec``.

    Regions with no observations get probability zero; the likelihood is
    maximized over the closed constraint set, where neighbouring regions
    may tie.

    Raises
    ------
    DimensionMismatchError
        If ``spec`` does not cover exactly the support of ``c``.
    """
    return expand(flat_mle_grouped(c, spec))


def _flat(c: CountVector, spec: FlatSpec | None) -> Pmf:
    if spec is None:
        raise ValueError("the flat estimator needs flat-region lengths")
    return flat_mle(c, spec)


ESTIMATORS = {
    "empirical": lambda c, spec=None: empirical_estimator(c),
    "rearrangement": lambda c, spec=None: rearrangement_estimator(c),
    "grenander": lambda c, spec=None: grenander_estimator(c),
    "flat": _flat,
}
