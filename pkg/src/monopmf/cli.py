"""Command line interface.

Exit codes
----------
0  success
2  usage, parse or config error
3  flat regions do not match the observed support
4  output directory not writable
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from pathlib import Path

from . import formats
from .asymptotics import LIMIT_RISKS
from .core import DimensionMismatchError
from .estimators import ESTIMATORS
from .formats import DataFileError
from .metrics import METRICS
from .plotting import write_boxplot_svg
from .simulate import ESTIMATOR_NAMES, simulate

EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_OUTPUT = 4

log = logging.getLogger("monopmf")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(args):
    counts = formats.read_data_file(args.input, args.mode)
    spec = formats.parse_flats(args.flats) if args.flats else None
    if spec is not None and spec.k != counts.k:
        raise DimensionMismatchError(
            f"flat regions {spec.w.tolist()} cover {spec.k} points but the data "
            f"has support 1..{counts.k} (region {spec.m} ends at index {spec.k})"
        )
    return counts, spec


def cmd_estimate(args) -> int:
    counts, spec = _load(args)
    if args.estimator == "flat" and spec is None:
        raise CliError("--flats is required for the flat estimator", EXIT_USAGE)
    est = ESTIMATORS[args.estimator](counts, spec)
    meta = {"estimator": args.estimator, "n": counts.n, "k": counts.k}
    if spec is not None and args.estimator == "flat":
        meta["flats"] = ",".join(map(str, spec.w.tolist()))
    if args.format == "json":
        sys.stdout.write(json.dumps(formats.pmf_to_json_obj(est, meta), indent=2) + "\n")
    else:
        sys.stdout.write(formats.pmf_to_csv(est, meta))
    return 0


def cmd_compare(args) -> int:
    counts, spec = _load(args)
    names = [n for n in ESTIMATOR_NAMES if n != "flat" or spec is not None]
    est = {name: ESTIMATORS[name](counts, spec).probs for name in names}
    pairs = []
    for a, b in itertools.combinations(names, 2):
        pairs.append((a, b, *(METRICS[m](est[a], est[b]) for m in ("l2", "hellinger", "l1"))))

    if args.format == "json":
        obj = {
            "n": counts.n,
            "k": counts.k,
            "estimates": {k: [float(formats.format_prob(v)) for v in p] for k, p in est.items()},
            "distances": [dict(zip(("a", "b", "l2_squared", "hellinger_squared", "l1"), row))
                          for row in pairs],
        }
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
        return 0
    out = sys.stdout
    out.write("index," + ",".join(names) + "\n")
    for i in range(counts.k):
        out.write(f"{i + 1}," + ",".join(formats.format_prob(est[n][i]) for n in names) + "\n")
    out.write("\na,b,l2_squared,hellinger_squared,l1\n")
    for a, b, *vals in pairs:
        out.write(f"{a},{b}," + ",".join(formats.format_prob(v) for v in vals) + "\n")
    return 0


def _plan(args) -> formats.SimulationPlan:
    plan = formats.preset(args.preset) if args.preset else formats.SimulationPlan(mixtures=[])
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise DataFileError(f"cannot read config {args.config}: {exc}") from None
        plan = formats.parse_config(text, plan)
    env_seed = os.environ.get("MONOPMF_SEED")
    if env_seed is not None:
        try:
            plan.seed = int(env_seed)
        except ValueError:
            raise DataFileError(f"MONOPMF_SEED={env_seed!r} is not an integer") from None
    if args.mixture:
        plan.mixtures = [(f"mixture{i}", formats.parse_components(m))
                         for i, m in enumerate(args.mixture, start=1)]
    if args.n:
        plan.sample_sizes = formats.int_list(args.n, "--n")
    for attr in ("reps", "seed", "workers"):
        value = getattr(args, attr)
        if value is not None:
            setattr(plan, {"reps": "replications"}.get(attr, attr), value)
    if args.estimators:
        plan.estimators = formats.name_list(args.estimators)
    if args.metrics:
        plan.metrics = formats.name_list(args.metrics)
    return plan


def cmd_simulate(args) -> int:
    plan = _plan(args)
    configs = plan.configs()
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".monopmf-write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise CliError(f"output directory {out} is not writable: {exc}", EXIT_OUTPUT) from None

    results = []
    for cfg in configs:
        log.info("simulating %s: n=%s, %d replicates, seed %d",
                 cfg.label, list(cfg.sample_sizes), cfg.replications, cfg.seed)
        results.append(simulate(cfg, workers=plan.workers))

    rows = []
    for res in results:
        p, spec = res.config.truth()
        for s in res.summaries():
            limits = None
            if s.metric in LIMIT_RISKS:
                flat_fn, gren_fn = LIMIT_RISKS[s.metric]
                limits = (flat_fn(p, spec), gren_fn(p, spec))
            rows.append((res.config.label, s, limits))

    try:
        with open(out / "losses.csv", "w", encoding="utf-8", newline="") as fh:
            formats.write_losses(results, fh)
        with open(out / "summary.csv", "w", encoding="utf-8", newline="") as fh:
            formats.write_summary(rows, fh, oracle=args.check_asymptotics)
        if args.svg:
            for res in results:
                summaries = res.summaries()
                for n in res.config.sample_sizes:
                    for metric in res.config.metrics:
                        group = [s for s in summaries if s.n == n and s.metric == metric]
                        path = out / f"boxplot_{res.config.label}_{metric}_n{n}.svg"
                        write_boxplot_svg(group, path, f"{res.config.label}, n = {n}")
    except OSError as exc:
        raise CliError(f"cannot write to {out}: {exc}", EXIT_OUTPUT) from None
    log.info("wrote results to %s", out)
    return 0


def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="data file (index,count lines or one observation per line)")
    p.add_argument("--mode", choices=("auto", "counts", "samples"), default="auto")
    p.add_argument("--flats", help="comma-separated flat-region lengths, e.g. 4,4")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monopmf",
        description="Estimate monotone probability mass functions with known flat regions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate a pmf from data")
    _add_data_args(p)
    p.add_argument("--estimator", choices=tuple(ESTIMATORS), default="flat")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("compare", help="all estimators side by side with pairwise distances")
    _add_data_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="Monte Carlo risk comparison")
    p.add_argument("--preset", choices=("paper-fig1",))
    p.add_argument("--config", help="key = value experiment file")
    p.add_argument("--mixture", action="append", help="mixture as mass:top pairs, e.g. 0.2:4,0.8:8")
    p.add_argument("--n", help="comma-separated sample sizes")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--estimators")
    p.add_argument("--metrics")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--svg", action="store_true", help="also write boxplots")
    p.add_argument("--check-asymptotics", action="store_true",
                   help="add closed-form limits of the n-scaled risks to summary.csv")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"monopmf: {exc}", file=sys.stderr)
        return exc.code
    except DimensionMismatchError as exc:
        print(f"monopmf: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except ValueError as exc:
        print(f"monopmf: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
