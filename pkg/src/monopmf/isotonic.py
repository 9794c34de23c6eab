"""Weighted antitonic regression and least concave majorants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CountVector, Pmf


@dataclass(frozen=True)
class WeightedSeq:
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        w = np.array(self.weights, dtype=float).ravel()
        if v.size < 1:
            raise ValueError("cannot regress an empty sequence")
        if v.size != w.size:
            raise ValueError(f"{v.size} values but {w.size} weights")
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(w))):
            raise ValueError("values and weights must be finite")
        if np.any(w <= 0):
            raise ValueError(f"weights must be positive; got {w}")
        v.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)


def pava_decreasing(s: WeightedSeq) -> np.ndarray:
    """Nonincreasing fit minimizing sum_j w_j (s_j - f_j)^2.

    Pool-adjacent-violators over a stack of blocks. A block whose right
    neighbour has a strictly larger value is merged with it into their
    weighted average, and merging cascades leftwards. Blocks that are
    never pooled keep their input value bit for bit.
    """
    values = s.values
    weights = s.weights
    # parallel stacks: block value, block weight, block length
    bv: list[float] = []
    bw: list[float] = []
    bn: list[int] = []
    for v, w in zip(values.tolist(), weights.tolist()):
        cur_v, cur_w, cur_n = v, w, 1
        while bv and bv[-1] < cur_v:
            pv, pw, pn = bv.pop(), bw.pop(), bn.pop()
            tot = pw + cur_w
            cur_v = (pv * pw + cur_v * cur_w) / tot
            cur_w = tot
            cur_n += pn
        bv.append(cur_v)
        bw.append(cur_w)
        bn.append(cur_n)
    return np.repeat(np.array(bv), bn)


def _upper_hull(x: np.ndarray, y: np.ndarray) -> list[int]:
    # monotone chain; x strictly increasing, integer coordinates keep the
    # orientation test exact
    hull: list[int] = []
    for i in range(x.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def lcm_left_derivatives(c: CountVector) -> Pmf:
    """Left slopes at 1..k of the least concave majorant of the empirical CDF.

    The majorant is taken over the points (i, F_n(i)) for i = 0..k. Hull
    construction works on the integer cumulative counts, so the vertex set
    is exact; only the final slopes are rounded.
    """
    cum = np.concatenate(([0], np.cumsum(c.counts)))
    x = np.arange(c.k + 1, dtype=np.int64)
    hull = _upper_hull(x, cum)
    n = c.n
    out = np.empty(c.k)
    for a, b in zip(hull[:-1], hull[1:]):
        out[a:b] = (cum[b] - cum[a]) / (n * (b - a))
    return Pmf(out)
