"""Slow, independent reference computations used to check the fast paths.

None of these import the code under test.
"""

import itertools

import numpy as np


def compositions(m):
    """All ways to cut 0..m-1 into consecutive blocks, as lists of (start, stop)."""
    for cuts in itertools.product((False, True), repeat=m - 1):
        edges = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [m]
        yield list(zip(edges[:-1], edges[1:]))


def brute_force_antitonic(values, weights):
    """Nonincreasing weighted least squares fit by enumerating block partitions.

    The optimum is piecewise constant with each piece equal to the weighted
    mean of its inputs, so scanning every consecutive partition and keeping
    the best feasible candidate finds it.
    """
    v = np.asarray(values, dtype=float)
    w = np.asarray(weights, dtype=float)
    best, best_err = None, np.inf
    for blocks in compositions(v.size):
        f = np.empty_like(v)
        for a, b in blocks:
            f[a:b] = np.dot(w[a:b], v[a:b]) / w[a:b].sum()
        if np.any(np.diff(f) > 1e-12):
            continue
        err = np.dot(w, (v - f) ** 2)
        if err < best_err:
            best, best_err = f, err
    return best


def brute_force_lcm_slopes(counts):
    """Left slopes of the least concave majorant of the empirical CDF.

    The majorant at an integer x is the largest chord value over all pairs
    of CDF points bracketing x.
    """
    c = np.asarray(counts, dtype=float)
    F = np.concatenate(([0.0], np.cumsum(c) / c.sum()))
    k = c.size
    maj = np.empty(k + 1)
    for x in range(k + 1):
        best = F[x]
        for a in range(x + 1):
            for b in range(x, k + 1):
                if b > a:
                    best = max(best, F[a] + (F[b] - F[a]) * (x - a) / (b - a))
        maj[x] = best
    return np.diff(maj)


def grouped_loglik(region_counts, values):
    """sum_j n'_j log f'_j with 0 log 0 = 0; -inf when a used region gets zero mass."""
    n = np.asarray(region_counts, dtype=float)
    f = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(n > 0, n * np.log(f), 0.0)
    return terms.sum(axis=-1)


def simplex_grid(m, step=1e-3):
    """Region masses t on the simplex mesh {t_j = i_j * step, sum t_j = 1}, shape (N, m)."""
    steps = int(round(1 / step))
    if m == 1:
        return np.ones((1, 1))
    if m == 2:
        i = np.arange(steps + 1)
        return np.stack([i, steps - i], axis=1) / steps
    if m == 3:
        i, j = np.meshgrid(np.arange(steps + 1), np.arange(steps + 1), indexing="ij")
        keep = i + j <= steps
        i, j = i[keep], j[keep]
        return np.stack([i, j, steps - i - j], axis=1) / steps
    raise ValueError("grid only implemented for m <= 3")


def best_grid_loglik(region_counts, w, step=1e-3):
    """Max log-likelihood over monotone grid points of the grouped model."""
    t = simplex_grid(len(w), step)
    f = t / np.asarray(w, dtype=float)
    feasible = np.all(np.diff(f, axis=1) <= 1e-15, axis=1)
    return grouped_loglik(region_counts, f[feasible]).max()
