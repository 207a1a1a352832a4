"""Experiment runner: algorithm x distribution x n x trial grids to CSV/JSON.

Every run gets its own seed derived from ``(base_seed, n, trial)``, so a row
can be reproduced on its own with a direct library call.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import _rr_fast
from .adversary import AdversaryOracle, new_scc_adversary, new_uniform_adversary
from .constant_round import ConstantRoundParams, compute_d, er_constant_retry, er_constant_sort
from .distributions import expected_classes, expected_rank, make_distribution, sample_ranks
from .model import TruthOracle
from .parallel import cr_sort, er_sort
from .round_robin import round_robin_sort

ALGORITHMS = ("cr", "er", "er-constant", "round-robin")
FIELDS = ("algorithm", "distribution", "params", "n", "trial", "seed",
          "comparisons", "rounds", "wall_seconds")
DEFAULT_CEILING = 2 * 10**9


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    algorithm: str
    distribution: str
    params: dict
    n_grid: list
    trials: int = 1
    base_seed: int = 0
    prune: bool = True
    override_d: int = None
    k_hint: int = None
    lambda_frac: float = None  # er-constant: fixed lambda instead of the retry loop
    adversary: tuple = None  # ("f", 4) or ("ell", 2)
    timing: bool = False
    ceiling: float = DEFAULT_CEILING

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        self.n_grid = [int(n) for n in self.n_grid]
        if not self.n_grid:
            raise ConfigError("n_grid is empty")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigError(f"n_grid must be strictly increasing, got {self.n_grid}")
        if self.n_grid[0] < 1:
            raise ConfigError("sizes must be at least 1")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.adversary is not None:
            kind, value = self.adversary
            if kind not in ("f", "ell"):
                raise ConfigError("adversary takes f=<int> or ell=<int>")
            for n in self.n_grid:
                if kind == "f" and (value < 1 or n % value):
                    raise ConfigError(f"adversary class size f={value} must divide n={n}")
                if kind == "ell" and not 1 <= value <= n / 2:
                    raise ConfigError(f"adversary needs 1 <= ell <= n/2, got ell={value}, n={n}")
        else:
            try:
                self.dist = make_distribution(self.distribution, self.params)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.lambda_frac is not None:
            try:
                ConstantRoundParams(self.lambda_frac, override_d=self.override_d)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None

    def params_text(self):
        if self.adversary is not None:
            return f"{self.adversary[0]}={self.adversary[1]}"
        return ";".join(f"{k}={_fmt(v)}" for k, v in sorted(self.dist.params.items()))

    def distribution_name(self):
        return "adversary" if self.adversary is not None else self.dist.name


@dataclass
class ResultRow:
    algorithm: str
    distribution: str
    params: str
    n: int
    trial: int
    seed: int
    comparisons: int
    rounds: int
    wall_seconds: object = ""


@dataclass
class FitReport:
    slope: float
    intercept: float
    r_squared: float
    relative_spread: float
    algorithm: str = ""
    distribution: str = ""
    params: str = ""
    points: int = 0


def _fmt(v):
    return repr(float(v)) if isinstance(v, float) else str(v)


def trial_seed(base_seed, n, trial):
    """Stable per-run seed."""
    return int(np.random.SeedSequence([base_seed, n, trial]).generate_state(1)[0])


def predicted_comparisons(config, n):
    """Rough upper estimate of one run's test count, for the resource guard."""
    if config.adversary is not None:
        return n * n
    k = expected_classes(config.dist, n) + 1
    if config.algorithm == "round-robin":
        # each element tests at most once per other group
        return n * min(2 * expected_rank(config.dist, n) + 1, k)
    if config.algorithm == "er-constant":
        return n * (compute_d(0.4) + k * max(1.0, math.log2(n)))
    return n * k * max(1.0, math.log2(n))


def _oracle(config, n, seed):
    if config.adversary is None:
        return TruthOracle(sample_ranks(config.dist, n, seed))
    kind, value = config.adversary
    state = new_uniform_adversary(n, value) if kind == "f" else new_scc_adversary(n, value)
    return AdversaryOracle(state)


def run_one(config, n, seed):
    """``(comparisons, rounds)`` of one run."""
    oracle = _oracle(config, n, seed)
    algo = config.algorithm
    if algo == "round-robin":
        if isinstance(oracle, TruthOracle) and n <= _rr_fast.MAX_N:
            comparisons, _ = _rr_fast.round_robin_count(oracle._labels)
        else:
            comparisons = round_robin_sort(oracle).comparisons
        return comparisons, 0
    if algo == "cr":
        res = cr_sort(oracle, k_hint=config.k_hint, prune=config.prune)
    elif algo == "er":
        res = er_sort(oracle, k_hint=config.k_hint, prune=config.prune)
    elif config.lambda_frac is not None:
        params = ConstantRoundParams(config.lambda_frac, override_d=config.override_d)
        res = er_constant_sort(oracle, params, rng_seed=seed)
    else:
        res = er_constant_retry(oracle, rng_seed=seed, override_d=config.override_d)
    return res.metrics.total_comparisons, res.metrics.rounds


def run_experiment(config):
    """One row per ``(n, trial)``, ordered by ``n`` then ``trial``."""
    predicted = sum(predicted_comparisons(config, n) for n in config.n_grid) * config.trials
    if predicted > config.ceiling:
        raise ConfigError(
            f"grid would need about {predicted:.3g} comparisons, above the ceiling of "
            f"{config.ceiling:.3g}; shrink the grid or trials, or raise the ceiling"
        )
    rows = []
    for n in config.n_grid:
        for t in range(config.trials):
            seed = trial_seed(config.base_seed, n, t)
            start = time.perf_counter()
            comparisons, rounds = run_one(config, n, seed)
            wall = round(time.perf_counter() - start, 6) if config.timing else ""
            rows.append(ResultRow(config.algorithm, config.distribution_name(), config.params_text(),
                                  n, t, seed, comparisons, rounds, wall))
    return rows


def linear_fit(rows):
    """Least-squares line of comparisons against n over ``rows``."""
    xs = np.array([r.n for r in rows], dtype=float)
    ys = np.array([r.comparisons for r in rows], dtype=float)
    if len(set(xs.tolist())) < 3:
        raise ValueError("a fit needs at least 3 distinct sizes")
    slope, intercept = np.polyfit(xs, ys, 1)
    fit = slope * xs + intercept
    ss_res = float(np.sum((ys - fit) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    if ss_tot == 0:
        r2 = 1.0 if ss_res <= 1e-9 * max(1.0, float(np.sum(ys**2))) else 0.0
    else:
        r2 = min(1.0, max(0.0, 1 - ss_res / ss_tot))
    dev = np.abs(ys - fit)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(dev == 0, 0.0, dev / np.abs(fit))
    first = rows[0]
    return FitReport(float(slope), float(intercept), float(r2), float(rel.max()),
                     first.algorithm, first.distribution, first.params, len(rows))


def fit_groups(rows):
    """A fit per ``(algorithm, distribution, params)`` group with enough sizes."""
    groups = {}
    for r in rows:
        groups.setdefault((r.algorithm, r.distribution, r.params), []).append(r)
    fits = []
    for key in sorted(groups):
        if len({r.n for r in groups[key]}) >= 3:
            fits.append(linear_fit(groups[key]))
    return fits


def format_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELDS)
    for r in rows:
        writer.writerow([getattr(r, f) for f in FIELDS])
    return buf.getvalue()


def format_json(rows, fits):
    doc = {"rows": [asdict(r) for r in rows], "fits": [asdict(f) for f in fits]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def read_csv(text):
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        wall = rec["wall_seconds"]
        out.append(ResultRow(rec["algorithm"], rec["distribution"], rec["params"], int(rec["n"]),
                             int(rec["trial"]), int(rec["seed"]), int(rec["comparisons"]),
                             int(rec["rounds"]), float(wall) if wall else ""))
    return out


def write_results(rows, fits, path, fmt="csv"):
    text = format_csv(rows) if fmt == "csv" else format_json(rows, fits)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc.strerror or exc}") from exc


def parse_grid(text):
    """``a:b:step`` (inclusive) or a comma list."""
    try:
        if ":" in text:
            a, b, step = (int(float(p)) for p in text.split(":"))
            if step < 1:
                raise ValueError
            return list(range(a, b + 1, step))
        return [int(float(p)) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"bad --n-grid {text!r}; use a:b:step or a comma list") from None


def parse_keyvals(items):
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"bad --param {item!r}; use key=value")
        out[key.strip()] = value.strip()
    return out


def parse_adversary(text):
    kind, sep, value = text.partition("=")
    try:
        return kind.strip(), int(value)
    except ValueError:
        raise ConfigError(f"bad --adversary {text!r}; use f=<int> or ell=<int>") from None


def build_parser():
    p = argparse.ArgumentParser(prog="ecsort", description="Run equivalence class sorting experiments.")
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--dist", default="uniform", help="uniform, geometric, poisson or zeta")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="distribution parameter, repeatable (k, p, lambda, s)")
    p.add_argument("--n-grid", required=True, help="a:b:step (inclusive) or a comma list")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-prune", action="store_true", help="test pairs even when already entailed")
    p.add_argument("--override-d", type=int, help="cycle count for er-constant")
    p.add_argument("--lambda", dest="lambda_frac", type=float,
                   help="fixed class fraction for er-constant (no retry)")
    p.add_argument("--k-hint", type=int)
    p.add_argument("--adversary", metavar="f=INT|ell=INT", help="answer tests adversarially")
    p.add_argument("--timing", action="store_true", help="fill wall_seconds (breaks byte-stability)")
    p.add_argument("--ceiling", type=float, default=DEFAULT_CEILING,
                   help="refuse grids predicted to need more comparisons than this")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = ExperimentConfig(
            algorithm=args.algo,
            distribution=args.dist,
            params=parse_keyvals(args.param),
            n_grid=parse_grid(args.n_grid),
            trials=args.trials,
            base_seed=args.seed,
            prune=not args.no_prune,
            override_d=args.override_d,
            k_hint=args.k_hint,
            lambda_frac=args.lambda_frac,
            adversary=parse_adversary(args.adversary) if args.adversary else None,
            timing=args.timing,
            ceiling=args.ceiling,
        )
        rows = run_experiment(config)
    except ConfigError as exc:
        print(f"ecsort: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failures of a run
        print(f"ecsort: run failed: {exc}", file=sys.stderr)
        return 1
    try:
        write_results(rows, fit_groups(rows), args.out, args.format)
    except OSError as exc:
        print(f"ecsort: {exc}", file=sys.stderr)
        return 1
    return 0
