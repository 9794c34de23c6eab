"""Text formats read and written by the command line tool.

Data files (UTF-8, one record per line, ``#`` starts a comment line):

* counts mode: ``index,count`` lines covering 1..k once each, with an
  optional non-numeric header such as ``index,count``;
* samples mode: one positive integer observation per line.

Pmf CSV as written by ``monopmf estimate``: ``# key=value`` metadata lines,
an ``index,probability`` header, then one row per support point with 12
significant digits.

Experiment config: ``key = value`` lines. ``mixture`` may be repeated,
and ``mixture.<label>`` names a mixture::

    # two mixtures, both at n = 20 and n = 100
    mixture.top = 0.2:4, 0.8:8
    mixture.center = 0.15:4, 0.1:8, 0.75:12
    sample_sizes = 20, 100
    replications = 1000
    seed = 7
    estimators = empirical, rearrangement, grenander, flat
    metrics = l2, hellinger
    workers = 1
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import CountVector, FlatSpec, Pmf
from .simulate import ExperimentConfig, ExperimentResult, RiskSummary

PROB_FMT = ".12g"
LOSS_FMT = ".17g"
DEFAULT_SEED = 20190101

PAPER_FIG1 = (
    ("fig1-top", ((0.2, 4), (0.8, 8))),
    ("fig1-center", ((0.15, 4), (0.1, 8), (0.75, 12))),
    ("fig1-bottom", ((0.25, 2), (0.2, 4), (0.15, 6), (0.4, 8))),
)


class DataFileError(ValueError):
    """Malformed input; the message names the offending line."""


def _records(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def _int_field(token: str, lineno: int, what: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise DataFileError(f"line {lineno}: {what} {token.strip()!r} is not an integer") from None


def parse_counts(text: str) -> CountVector:
    records = _records(text)
    if records and not records[0][1].split(",")[0].strip().lstrip("+-").isdigit():
        records = records[1:]  # header
    if not records:
        raise DataFileError("no count records found")
    by_index: dict[int, int] = {}
    for lineno, line in records:
        parts = line.split(",")
        if len(parts) != 2:
            raise DataFileError(f"line {lineno}: expected 'index,count', got {line!r}")
        idx = _int_field(parts[0], lineno, "index")
        cnt = _int_field(parts[1], lineno, "count")
        if idx < 1:
            raise DataFileError(f"line {lineno}: index {idx} must be >= 1")
        if cnt < 0:
            raise DataFileError(f"line {lineno}: count {cnt} must be nonnegative")
        if idx in by_index:
            raise DataFileError(f"line {lineno}: index {idx} appears more than once")
        by_index[idx] = cnt
    k = max(by_index)
    missing = sorted(set(range(1, k + 1)) - set(by_index))
    if missing:
        raise DataFileError(f"indices must cover 1..{k}; missing {missing[:5]}")
    counts = np.array([by_index[i] for i in range(1, k + 1)])
    if counts.sum() < 1:
        raise DataFileError("total count must be at least 1")
    return CountVector(counts)


def parse_samples(text: str) -> CountVector:
    values = []
    for lineno, line in _records(text):
        v = _int_field(line, lineno, "observation")
        if v < 1:
            raise DataFileError(f"line {lineno}: observation {v} must be >= 1")
        values.append(v)
    if not values:
        raise DataFileError("no observations found")
    return CountVector.from_samples(values)


def read_data_file(path, mode: str = "auto") -> CountVector:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataFileError(f"cannot read {path}: {exc}") from None
    if mode == "auto":
        records = _records(text)
        mode = "counts" if records and "," in records[0][1] else "samples"
    if mode == "counts":
        return parse_counts(text)
    if mode == "samples":
        return parse_samples(text)
    raise ValueError(f"unknown data mode {mode!r}")


def parse_flats(text: str) -> FlatSpec:
    try:
        w = [int(t) for t in text.split(",")]
    except ValueError:
        raise DataFileError(f"flat-region lengths must be comma-separated integers; got {text!r}") from None
    try:
        return FlatSpec(np.array(w))
    except ValueError as exc:
        raise DataFileError(str(exc)) from None


def format_prob(x: float) -> str:
    return format(float(x), PROB_FMT)


def pmf_to_csv(p: Pmf, meta: dict) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}={value}\n")
    buf.write("index,probability\n")
    for i, v in enumerate(p.probs, start=1):
        buf.write(f"{i},{format_prob(v)}\n")
    return buf.getvalue()


def pmf_to_json_obj(p: Pmf, meta: dict) -> dict:
    return {**meta, "probabilities": [float(format_prob(v)) for v in p.probs]}


def parse_pmf_csv(text: str) -> Pmf:
    """Read back a pmf written by :func:`pmf_to_csv` (a weights file).

    The weights are renormalized, so any nonnegative ``index,weight``
    table is accepted.
    """
    records = _records(text)
    if records and records[0][1].lower().startswith("index"):
        records = records[1:]
    rows = {}
    for lineno, line in records:
        parts = line.split(",")
        if len(parts) != 2:
            raise DataFileError(f"line {lineno}: expected 'index,weight', got {line!r}")
        idx = _int_field(parts[0], lineno, "index")
        try:
            rows[idx] = float(parts[1])
        except ValueError:
            raise DataFileError(f"line {lineno}: weight {parts[1]!r} is not a number") from None
    if not rows or sorted(rows) != list(range(1, len(rows) + 1)):
        raise DataFileError("weight indices must cover 1..k exactly once")
    w = np.array([rows[i] for i in range(1, len(rows) + 1)])
    if np.any(w < 0) or w.sum() <= 0:
        raise DataFileError("weights must be nonnegative with a positive total")
    return Pmf(w / w.sum())


# -- experiment configs ------------------------------------------------------

def parse_components(text: str) -> tuple[tuple[float, int], ...]:
    """``"0.2:4, 0.8:8"`` -> ((0.2, 4), (0.8, 8))."""
    comps = []
    for token in text.split(","):
        token = token.strip()
        try:
            mass, top = token.split(":")
            comps.append((float(mass), int(top)))
        except ValueError:
            raise DataFileError(f"mixture component {token!r} is not 'mass:top'") from None
    return tuple(comps)


def int_list(text: str, key: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise DataFileError(f"{key} must be comma-separated integers; got {text!r}") from None


def name_list(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


@dataclass
class SimulationPlan:
    mixtures: list[tuple[str, tuple[tuple[float, int], ...]]]
    sample_sizes: tuple[int, ...] = (20, 100)
    replications: int = 1000
    seed: int = DEFAULT_SEED
    estimators: tuple[str, ...] = ("empirical", "rearrangement", "grenander", "flat")
    metrics: tuple[str, ...] = ("l2", "hellinger")
    workers: int = 1

    def configs(self) -> list[ExperimentConfig]:
        if not self.mixtures:
            raise DataFileError("no mixture given")
        return [
            ExperimentConfig(comps, self.sample_sizes, self.replications, self.seed,
                             self.estimators, self.metrics, label)
            for label, comps in self.mixtures
        ]


def preset(name: str) -> SimulationPlan:
    if name == "paper-fig1":
        return SimulationPlan(mixtures=list(PAPER_FIG1))
    raise DataFileError(f"unknown preset {name!r}; available: paper-fig1")


def parse_config(text: str, base: SimulationPlan | None = None) -> SimulationPlan:
    plan = base if base is not None else SimulationPlan(mixtures=[])
    mixtures = []
    updates = {}
    for lineno, line in _records(text):
        if "=" not in line:
            raise DataFileError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "mixture" or key.startswith("mixture."):
            label = key.partition(".")[2] or f"mixture{len(mixtures) + 1}"
            mixtures.append((label, parse_components(value)))
        elif key == "sample_sizes":
            updates[key] = int_list(value, key)
        elif key in ("replications", "seed", "workers"):
            ints = int_list(value, key)
            if len(ints) != 1:
                raise DataFileError(f"line {lineno}: {key} takes one integer")
            updates[key] = ints[0]
        elif key in ("estimators", "metrics"):
            updates[key] = name_list(value)
        else:
            raise DataFileError(f"line {lineno}: unknown key {key!r}")
    if mixtures:
        updates["mixtures"] = mixtures
    return replace(plan, **updates)


# -- simulation output -------------------------------------------------------

LOSS_HEADER = ["mixture", "estimator", "metric", "n", "replicate", "loss", "scaled_loss"]
SUMMARY_HEADER = ["mixture", "estimator", "metric", "n", "replications", "mean", "scaled_mean",
                  "median", "q1", "q3", "whisker_low", "whisker_high", "min", "max"]


def _fmt(x: float) -> str:
    return format(float(x), LOSS_FMT)


def write_losses(results: Sequence[ExperimentResult], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(LOSS_HEADER)
    for res in results:
        cfg = res.config
        for n in cfg.sample_sizes:
            arr = res.losses[n]
            for e, est in enumerate(cfg.estimators):
                for j, metric in enumerate(cfg.metrics):
                    for rep, loss in enumerate(arr[:, e, j]):
                        writer.writerow([cfg.label, est, metric, n, rep, _fmt(loss), _fmt(n * loss)])


def write_summary(rows: Iterable[tuple[str, RiskSummary, tuple | None]], fh, oracle: bool) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    header = SUMMARY_HEADER + (["limit_flat", "limit_grenander"] if oracle else [])
    writer.writerow(header)
    for label, s, limits in rows:
        row = [label, s.estimator, s.metric, s.n, s.losses.size, _fmt(s.mean), _fmt(s.scaled_mean),
               _fmt(s.median), _fmt(s.q1), _fmt(s.q3), _fmt(s.whisker_low), _fmt(s.whisker_high),
               _fmt(s.minimum), _fmt(s.maximum)]
        if oracle:
            row += [_fmt(v) for v in limits] if limits else ["", ""]
        writer.writerow(row)
