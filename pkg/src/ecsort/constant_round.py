"""Constant-round ER sorting when every class holds at least ``lambda * n`` elements.

The comparisons along ``d`` random Hamiltonian cycles are made first (two
rounds per cycle, three when ``n`` is odd). Arcs answered Same form a
class-pure digraph whose large strongly connected components are then tested
against all still-unclassified elements, ``|C|`` comparisons per round.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .machine import Machine, SortResult
from .model import Mode, RunMetrics
from .parallel import er_sort
from .scc import components_as_lists, strongly_connected_components

GAMMA = 0.25
MAX_LAMBDA = 0.4


class ConstantRoundFailure(RuntimeError):
    """Some element was not reached by any retained component."""

    def __init__(self, message, metrics, info):
        super().__init__(message)
        self.metrics = metrics
        self.info = info


def _check_lambda(lam):
    if not 0 < lam <= MAX_LAMBDA:
        raise ValueError(f"lambda must lie in (0, {MAX_LAMBDA}], got {lam}")


def compute_d(lam):
    """Smallest ``d`` with ``(1 + lam) ln 2 - d lam^2 / 8 < 0``."""
    _check_lambda(lam)
    return math.floor(8 * (1 + lam) * math.log(2) / lam**2) + 1


def log_term(lam, gamma=GAMMA):
    """``a ln a + b ln b - (1 - lam) ln(1 - lam)`` with ``a, b = 1 - (1 -/+ gamma) lam / 2``."""
    a = 1 - (1 - gamma) / 2 * lam
    b = 1 - (1 + gamma) / 2 * lam
    return a * math.log(a) + b * math.log(b) - (1 - lam) * math.log(1 - lam)


def log_term_taylor_bound(lam):
    """Upper bound on :func:`log_term` (gamma = 1/4) from cubic bounds on ``ln(1 - x)``."""
    def upper(x):
        return -x - x**2 / 2 - x**3 / 4

    def lower(x):
        return -x - x**2 / 2 - x**3 / 2

    a, b = 3 * lam / 8, 5 * lam / 8
    return (1 - a) * upper(a) + (1 - b) * upper(b) - (1 - lam) * lower(lam)


def log_term_quartic_bound(lam):
    return -3743 / 8192 * lam**4 + 19 / 256 * lam**3 - 15 / 64 * lam**2


def failure_exponent(lam, d, gamma=GAMMA):
    """Per-``n`` exponent of the failure probability for ``d`` cycles; negative is good."""
    return (1 + lam) * math.log(2) + d * log_term(lam, gamma)


@dataclass(frozen=True)
class ConstantRoundParams:
    lambda_frac: float
    gamma: float = GAMMA
    override_d: int = None

    def __post_init__(self):
        _check_lambda(self.lambda_frac)
        if self.override_d is not None and self.override_d < 1:
            raise ValueError("override_d must be at least 1")

    @property
    def d(self):
        if self.override_d is not None:
            return self.override_d
        return compute_d(self.lambda_frac)


@dataclass
class CycleUnionGraph:
    n: int
    cycles: np.ndarray  # (d, n); row j visits cycles[j, 0] -> cycles[j, 1] -> ... -> cycles[j, 0]

    @property
    def d(self):
        return self.cycles.shape[0]

    def cycle_arcs(self):
        """All ``d * n`` arcs, cycle by cycle, as ``(tails, heads)``."""
        return self.cycles.ravel(), np.roll(self.cycles, -1, axis=1).ravel()

    @property
    def arcs(self):
        """Distinct directed arcs of the union, shape ``(m, 2)``."""
        tails, heads = self.cycle_arcs()
        return np.unique(np.stack([tails, heads], axis=1), axis=0)


def sample_cycle_union(n, d, rng_seed=None):
    if n < 3:
        raise ValueError("a Hamiltonian cycle needs at least 3 vertices")
    if d < 1:
        raise ValueError("d must be at least 1")
    rng = np.random.default_rng(rng_seed)
    cycles = np.stack([rng.permutation(n) for _ in range(d)])
    return CycleUnionGraph(n, cycles)


def _position_masks(n):
    pos = np.arange(n)
    if n % 2 == 0:
        return [pos % 2 == 0, pos % 2 == 1]
    # the closing arc n-1 -> 0 shares a vertex with arc 0
    return [(pos % 2 == 0) & (pos < n - 1), pos % 2 == 1, pos == n - 1]


def er_constant_sort(oracle, params, rng_seed=None, n=None, metrics=None, record=False, trace=None):
    """One attempt of the constant-round algorithm for a fixed ``lambda``.

    Raises :class:`ConstantRoundFailure` when the retained components do not
    reach every element; a returned partition is always correct.
    """
    machine = Machine(oracle, n, Mode.ER, metrics=metrics, record=record, trace=trace)
    n = machine.n
    lam, d = params.lambda_frac, params.d
    start_rounds = machine.metrics.rounds
    info = {"lambda": lam, "d": d, "step2_rounds": 0, "step3_rounds": [], "kept_components": 0}
    if n < 3:
        if n == 2:
            machine.run([(0, 1)])
        info["step2_rounds"] = machine.metrics.rounds - start_rounds
        return machine.result(**info, trace=machine.trace)

    graph = sample_cycle_union(n, d, rng_seed)
    tails, heads = graph.cycle_arcs()
    keys = np.minimum(tails, heads) * n + np.maximum(tails, heads)
    _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    fresh = np.zeros(len(keys), dtype=bool)
    fresh[first] = True
    same = np.zeros(len(keys), dtype=bool)

    # step 2: results are only needed to build the Same-arc digraph, so they
    # are not folded into the knowledge graph one by one
    for j in range(d):
        base = j * n
        for mask in _position_masks(n):
            idx = base + np.flatnonzero(mask & fresh[base:base + n])
            if len(idx):
                same[idx] = machine.run(np.stack([tails[idx], heads[idx]], axis=1), apply=False)
    same = same[first][inverse.ravel()]
    info["step2_rounds"] = machine.metrics.rounds - start_rounds

    # step 3
    comp = strongly_connected_components(n, tails[same], heads[same])
    threshold = lam * n / 8
    kept = [c for c in components_as_lists(comp) if len(c) >= threshold]
    kept.sort(key=lambda c: (-len(c), c[0]))
    info["kept_components"] = len(kept)

    state = machine.state
    for c in kept:
        for x in c[1:]:
            state.apply_result(c[0], x, True)

    unclassified = np.ones(n, dtype=bool)
    for c in kept:
        if not unclassified[c[0]]:
            info["step3_rounds"].append(0)
            continue
        members = np.asarray(c, dtype=np.int64)
        unclassified[members] = False
        targets = np.flatnonzero(unclassified)
        size = len(members)
        n_rounds = -(-len(targets) // size)
        for r in range(n_rounds):
            t = targets[r * size:(r + 1) * size]
            hit = machine.run(np.stack([members[:len(t)], t], axis=1))
            unclassified[t[hit]] = False
        info["step3_rounds"].append(n_rounds)

    if unclassified.any():
        raise ConstantRoundFailure(
            f"{int(unclassified.sum())} elements unclassified at lambda={lam}",
            machine.metrics,
            info,
        )
    return machine.result(**info, trace=machine.trace)


def er_constant_retry(oracle, rng_seed=None, n=None, override_d=None, max_d=None,
                      start_lambda=MAX_LAMBDA, record=False):
    """Constant-round sort with unknown ``lambda``: halve it after each failure.

    Falls back to :func:`er_sort` once ``lambda < 1/n`` or once the cycle count
    for the current ``lambda`` would exceed ``max_d``.
    """
    oracle_n = oracle.n if n is None else n
    metrics = RunMetrics()
    trace = [] if record else None
    seeds = np.random.SeedSequence(rng_seed)
    failed = []
    lam = start_lambda
    while lam >= 1 / oracle_n:
        params = ConstantRoundParams(lam, override_d=override_d)
        if max_d is not None and params.d > max_d:
            break
        seed = int(seeds.spawn(1)[0].generate_state(1)[0])
        try:
            res = er_constant_sort(oracle, params, seed, oracle_n, metrics=metrics, trace=trace)
        except ConstantRoundFailure:
            failed.append(lam)
            lam /= 2
            continue
        info = dict(res.info, failed_lambdas=failed, fallback=False)
        return SortResult(res.state, metrics, info)

    res = er_sort(oracle, oracle_n, metrics=metrics, trace=trace)
    info = dict(res.info, failed_lambdas=failed, fallback=True)
    info["lambda"] = None
    return SortResult(res.state, metrics, info)
