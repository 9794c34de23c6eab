"""Seeded Monte Carlo comparison of the estimators.

Random streams
--------------
Every replicate draws from its own generator: numpy's ``PCG64`` bit
generator seeded by ``SeedSequence(seed, spawn_key=(n, replicate))``.
A replicate's counts therefore depend only on the experiment seed, the
sample size and the replicate index. The worker count and the order in
which sample sizes are listed do not matter. All estimators in one
replicate share that replicate's counts.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .asymptotics import sigma_star
from .core import CountVector, FlatSpec, Pmf, group_pmf, mixture_of_uniforms
from .estimators import ESTIMATORS, flat_mle, flat_mle_grouped, grouped_unrestricted_mle
from .metrics import METRICS

log = logging.getLogger(__name__)

ESTIMATOR_NAMES = ("empirical", "rearrangement", "grenander", "flat")
METRIC_NAMES = ("l2", "hellinger", "l1")


def replicate_rng(seed: int, n: int, replicate: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(n), int(replicate)))
    return np.random.Generator(np.random.PCG64(ss))


def sample_counts(p: Pmf, n: int, rng: np.random.Generator) -> CountVector:
    """Draw a Mult(n, p) count vector.

    numpy draws multinomials as a chain of conditional binomials, so the
    stream is fully determined by ``rng``.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1; got {n}")
    return CountVector(rng.multinomial(int(n), p.probs))


@dataclass(frozen=True)
class ExperimentConfig:
    components: tuple[tuple[float, int], ...]
    sample_sizes: tuple[int, ...]
    replications: int
    seed: int
    estimators: tuple[str, ...] = ESTIMATOR_NAMES
    metrics: tuple[str, ...] = ("l2", "hellinger")
    label: str = "mixture"

    def __post_init__(self):
        object.__setattr__(self, "components", tuple((float(m), int(t)) for m, t in self.components))
        object.__setattr__(self, "sample_sizes", tuple(int(n) for n in self.sample_sizes))
        object.__setattr__(self, "estimators", tuple(self.estimators))
        object.__setattr__(self, "metrics", tuple(self.metrics))
        if not self.sample_sizes:
            raise ValueError("at least one sample size is required")
        if any(n < 1 for n in self.sample_sizes):
            raise ValueError(f"sample sizes must be positive; got {self.sample_sizes}")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        bad = [e for e in self.estimators if e not in ESTIMATOR_NAMES]
        if bad or not self.estimators:
            raise ValueError(f"unknown estimators {bad}; choose from {ESTIMATOR_NAMES}")
        bad = [m for m in self.metrics if m not in METRIC_NAMES]
        if bad or not self.metrics:
            raise ValueError(f"unknown metrics {bad}; choose from {METRIC_NAMES}")
        # fail early on a bad mixture
        mixture_of_uniforms(self.components)

    def truth(self) -> tuple[Pmf, FlatSpec]:
        return mixture_of_uniforms(self.components)


@dataclass(frozen=True)
class RiskSummary:
    """Losses of one estimator under one metric at one sample size.

    Whiskers follow the 1.5 x IQR convention: they reach the most extreme
    losses still within 1.5 IQR of the quartiles.
    """

    estimator: str
    metric: str
    n: int
    losses: np.ndarray = field(repr=False)
    mean: float
    median: float
    q1: float
    q3: float
    whisker_low: float
    whisker_high: float
    minimum: float
    maximum: float

    @classmethod
    def from_losses(cls, estimator: str, metric: str, n: int, losses) -> "RiskSummary":
        x = np.asarray(losses, dtype=float)
        q1, med, q3 = np.percentile(x, [25, 50, 75])
        iqr = q3 - q1
        low = x[x >= q1 - 1.5 * iqr].min()
        high = x[x <= q3 + 1.5 * iqr].max()
        return cls(estimator, metric, int(n), x, float(x.mean()), float(med), float(q1),
                   float(q3), float(low), float(high), float(x.min()), float(x.max()))

    @property
    def scaled_losses(self) -> np.ndarray:
        return self.n * self.losses

    @property
    def scaled_mean(self) -> float:
        return self.n * self.mean


def _simulate_block(probs, w, n, start, stop, seed, estimators, metrics):
    p = Pmf(probs)
    spec = FlatSpec(w)
    truth_grouped = group_pmf(p, spec).values
    wf = spec.w.astype(float)
    metric_fns = [METRICS[m] for m in metrics]
    losses = np.empty((stop - start, len(estimators), len(metrics)))
    grouped_err = np.empty((stop - start, 2))
    for row, rep in enumerate(range(start, stop)):
        counts = sample_counts(p, n, replicate_rng(seed, n, rep))
        for e, name in enumerate(estimators):
            est = ESTIMATORS[name](counts, spec)
            for j, fn in enumerate(metric_fns):
                losses[row, e, j] = fn(est.probs, p.probs)
        fitted = flat_mle_grouped(counts, spec).values
        raw = grouped_unrestricted_mle(counts, spec).values
        grouped_err[row, 0] = np.sum(wf * (fitted - truth_grouped) ** 2)
        grouped_err[row, 1] = np.sum(wf * (raw - truth_grouped) ** 2)
    return losses, grouped_err


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    edges = np.linspace(0, total, parts + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


@dataclass
class ExperimentResult:
    """Raw replicate output of :func:`simulate`.

    ``losses[n]`` has shape (replications, estimators, metrics).
    ``grouped_errors[n]`` holds, per replicate, the weighted squared
    error of the flat MLE's region values and of the unconstrained
    per-region MLE, both measured against the true region values.
    """

    config: ExperimentConfig
    losses: dict[int, np.ndarray]
    grouped_errors: dict[int, np.ndarray]

    def summaries(self) -> list[RiskSummary]:
        cfg = self.config
        out = []
        for n in cfg.sample_sizes:
            for e, est in enumerate(cfg.estimators):
                for j, metric in enumerate(cfg.metrics):
                    out.append(RiskSummary.from_losses(est, metric, n, self.losses[n][:, e, j]))
        return out

    def dominance_violations(self) -> int:
        """Replicates where pooling increased the weighted grouped error."""
        return int(sum(np.count_nonzero(g[:, 0] > g[:, 1]) for g in self.grouped_errors.values()))


def simulate(cfg: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    p, spec = cfg.truth()
    losses, grouped = {}, {}
    for n in dict.fromkeys(cfg.sample_sizes):
        args = (p.probs, spec.w, n)
        tail = (cfg.seed, cfg.estimators, cfg.metrics)
        if workers <= 1:
            blocks = [_simulate_block(*args, 0, cfg.replications, *tail)]
        else:
            spans = _chunks(cfg.replications, 4 * workers)
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_simulate_block, *args, a, b, *tail) for a, b in spans]
                blocks = [f.result() for f in futures]
        losses[n] = np.concatenate([b[0] for b in blocks])
        grouped[n] = np.concatenate([b[1] for b in blocks])
        log.debug("%s n=%d: %d replicates", cfg.label, n, cfg.replications)
    return ExperimentResult(cfg, losses, grouped)


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> list[RiskSummary]:
    """One RiskSummary per (sample size, estimator, metric), in that nesting order."""
    return simulate(cfg, workers).summaries()


def empirical_covariance_check(p: Pmf, spec: FlatSpec, n: int, reps: int, seed: int) -> float:
    """Max entrywise gap between the sample covariance of sqrt(n)(flat MLE - p) and its limit."""
    target = sigma_star(p, spec)
    draws = np.empty((reps, p.k))
    for rep in range(reps):
        counts = sample_counts(p, n, replicate_rng(seed, n, rep))
        draws[rep] = flat_mle(counts, spec).probs
    scaled = np.sqrt(n) * (draws - p.probs)
    cov = np.atleast_2d(np.cov(scaled, rowvar=False))
    return float(np.max(np.abs(cov - target)))
