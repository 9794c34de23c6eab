"""Domain types for monotone pmfs with known flat regions.

All containers are frozen dataclasses holding read-only numpy arrays, so
instances can be shared freely between worker processes and threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

SUM_TOL = 1e-12
FLAT_TOL = 1e-12


class DimensionMismatchError(ValueError):
    """Raised when a FlatSpec does not cover the support of a vector."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Pmf:
    """Probability vector on the support {1, ..., k}."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float).ravel()
        if p.size < 1:
            raise ValueError("a pmf needs at least one support point")
        if not np.all(np.isfinite(p)):
            raise ValueError("pmf entries must be finite")
        if np.any(p < 0):
            raise ValueError(f"pmf entries must be nonnegative; got {p}")
        total = p.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"pmf entries must sum to 1 (got {total!r})")
        object.__setattr__(self, "probs", _frozen(p))

    @property
    def k(self) -> int:
        return self.probs.size

    def __len__(self) -> int:
        return self.k

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)


@dataclass(frozen=True)
class FlatSpec:
    """Lengths ``w`` of the flat regions, in support order.

    ``q`` holds the 1-based first index of every region and is always
    derived from ``w``.
    """

    w: np.ndarray
    q: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        raw = np.asarray(self.w).ravel()
        if raw.size < 1:
            raise ValueError("a FlatSpec needs at least one region")
        if raw.dtype.kind == "f":
            if not np.all(raw == np.round(raw)):
                raise ValueError(f"region lengths must be integers; got {raw}")
        elif raw.dtype.kind not in "iu":
            raise ValueError(f"region lengths must be integers; got {raw}")
        w = raw.astype(np.int64)
        if np.any(w < 1):
            raise ValueError(f"region lengths must be >= 1; got {w}")
        q = np.concatenate(([1], 1 + np.cumsum(w)[:-1])).astype(np.int64)
        object.__setattr__(self, "w", _frozen(w))
        object.__setattr__(self, "q", _frozen(q))

    @property
    def m(self) -> int:
        return self.w.size

    @property
    def k(self) -> int:
        return int(self.w.sum())

    def region_index(self) -> np.ndarray:
        """0-based region of every support point, length k."""
        return np.repeat(np.arange(self.m), self.w)

    def expansion_matrix(self) -> np.ndarray:
        """The k x m 0/1 matrix repeating grouped values over their regions."""
        A = np.zeros((self.k, self.m))
        A[np.arange(self.k), self.region_index()] = 1.0
        return A

    def expand_values(self, values) -> np.ndarray:
        """Repeat each region value over its region; ``A @ values`` without building A."""
        v = np.asarray(values, dtype=float).ravel()
        if v.size != self.m:
            raise DimensionMismatchError(f"{v.size} values for {self.m} flat regions")
        return np.repeat(v, self.w)

    def check_support(self, k: int) -> None:
        if self.k != k:
            raise DimensionMismatchError(
                f"flat regions {self.w.tolist()} cover {self.k} points "
                f"but the support has k={k}"
            )

    @classmethod
    def ones(cls, k: int) -> "FlatSpec":
        return cls(np.ones(k, dtype=np.int64))


@dataclass(frozen=True)
class CountVector:
    """Observed counts n_i on the support {1, ..., k}."""

    counts: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.counts).ravel()
        if raw.size < 1:
            raise ValueError("a count vector needs at least one entry")
        if raw.dtype.kind == "f" and not np.all(raw == np.round(raw)):
            raise ValueError(f"counts must be integers; got {raw}")
        if raw.dtype.kind not in "iuf":
            raise ValueError(f"counts must be integers; got {raw}")
        c = raw.astype(np.int64)
        if np.any(c < 0):
            raise ValueError(f"counts must be nonnegative; got {c}")
        if c.sum() < 1:
            raise ValueError("sample size n must be at least 1")
        object.__setattr__(self, "counts", _frozen(c))

    @property
    def k(self) -> int:
        return self.counts.size

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @classmethod
    def from_samples(cls, samples: Iterable[int], k: int | None = None) -> "CountVector":
        """Tally positive integer observations into counts over {1..k}.

        ``k`` defaults to the largest observed value.
        """
        x = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples)
        if x.size == 0:
            raise ValueError("no observations")
        if x.dtype.kind == "f" and not np.all(x == np.round(x)):
            raise ValueError("observations must be integers")
        x = x.astype(np.int64)
        if np.any(x < 1):
            raise ValueError("observations must be >= 1")
        top = int(x.max())
        if k is None:
            k = top
        elif top > k:
            raise DimensionMismatchError(f"observation {top} lies outside the support 1..{k}")
        return cls(np.bincount(x - 1, minlength=k))


@dataclass(frozen=True)
class GroupedEstimate:
    """One probability value per flat region, with the region lengths as weights."""

    values: np.ndarray
    spec: FlatSpec

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size != self.spec.m:
            raise DimensionMismatchError(
                f"{v.size} grouped values for {self.spec.m} flat regions"
            )
        if np.any(v < 0):
            raise ValueError(f"grouped values must be nonnegative; got {v}")
        total = float(np.dot(self.spec.w, v))
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"weighted grouped values must sum to 1 (got {total!r})")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def weights(self) -> np.ndarray:
        return self.spec.w


def validate_monotone_with_flats(p: Pmf, spec: FlatSpec, strict: bool = True) -> bool:
    """Check that ``p`` is constant on each region of ``spec`` and decreasing across them.

    With ``strict=False`` neighbouring regions may share a value, which is
    the shape of the order-restricted estimators in finite samples.

    Raises
    ------
    DimensionMismatchError
        If the regions do not cover exactly the support of ``p``.
    """
    spec.check_support(p.k)
    probs = p.probs
    for start, length in zip(spec.q - 1, spec.w):
        block = probs[start:start + length]
        if block.max() - block.min() > FLAT_TOL:
            return False
    heads = probs[spec.q - 1]
    drops = heads[:-1] - heads[1:]
    if strict:
        return bool(np.all(drops > FLAT_TOL))
    return bool(np.all(drops >= -FLAT_TOL))


def mixture_of_uniforms(components: Sequence[tuple[float, int]]) -> tuple[Pmf, FlatSpec]:
    """Pmf of sum_c mass_c * U(top_c), with U(t) uniform on {1..t}.

    Parameters
    ----------
    components
        ``(mass, top)`` pairs with positive masses summing to one and
        strictly increasing tops.

    Returns
    -------
    pmf, spec
        The mixture and the flat regions it induces; a region ends at
        every ``top``.
    """
    if len(components) == 0:
        raise ValueError("a mixture needs at least one component")
    masses = np.array([float(c[0]) for c in components])
    tops_raw = [c[1] for c in components]
    if any(int(t) != t for t in tops_raw):
        raise ValueError(f"component tops must be integers; got {tops_raw}")
    tops = np.array([int(t) for t in tops_raw], dtype=np.int64)
    if np.any(masses <= 0):
        raise ValueError(f"component masses must be positive; got {masses.tolist()}")
    if abs(masses.sum() - 1.0) > SUM_TOL:
        raise ValueError(f"component masses must sum to 1; got {masses.sum()!r}")
    if tops[0] < 1 or np.any(np.diff(tops) <= 0):
        raise ValueError(f"component tops must be positive and strictly increasing; got {tops.tolist()}")

    w = np.diff(np.concatenate(([0], tops)))
    # value on region j collects every component whose top reaches it
    dens = masses / tops
    grouped = np.cumsum(dens[::-1])[::-1]
    spec = FlatSpec(w)
    probs = np.repeat(grouped, w)
    # absorb rounding of the mass total so the pmf sums to one exactly enough
    probs = probs / probs.sum()
    return Pmf(probs), spec


def group_counts(c: CountVector, spec: FlatSpec) -> np.ndarray:
    """Total count of each flat region, length m."""
    spec.check_support(c.k)
    return np.add.reduceat(c.counts, spec.q - 1)


def group_pmf(p: Pmf, spec: FlatSpec) -> GroupedEstimate:
    """Average ``p`` over each region and renormalize.

    For a pmf that is flat on ``spec`` this recovers the region values,
    so ``expand(group_pmf(p, spec))`` reproduces ``p``.
    """
    spec.check_support(p.k)
    sums = np.add.reduceat(p.probs, spec.q - 1)
    return GroupedEstimate(sums / sums.sum() / spec.w, spec)


def expand(g: GroupedEstimate) -> Pmf:
    return Pmf(g.spec.expand_values(g.values))
