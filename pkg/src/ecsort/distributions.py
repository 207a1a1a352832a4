"""Class distributions re-indexed most-likely-first and truncated at ``n``.

A sample assigns each element the *rank* of its class: rank 0 is the most
probable class, rank 1 the next, and so on. Ranks ``>= n`` are piled onto
``n``. The rank sample doubles as ground-truth labels, and twice its sum bounds
the round-robin test count of the same instance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from .model import GroundTruth


@dataclass(frozen=True)
class Uniform:
    k: int
    name = "uniform"

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"uniform needs an integer k >= 1, got {self.k}")

    @property
    def params(self):
        return {"k": self.k}

    def ranked_pmf(self, m):
        out = np.zeros(m)
        out[: min(m, self.k)] = 1 / self.k
        return out

    def draw(self, rng, n):
        return rng.integers(0, self.k, size=n)


@dataclass(frozen=True)
class Geometric:
    p: float
    name = "geometric"

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError(f"geometric needs 0 < p < 1, got {self.p}")

    @property
    def params(self):
        return {"p": self.p}

    def ranked_pmf(self, m):
        i = np.arange(m)
        return self.p**i * (1 - self.p)

    def draw(self, rng, n):
        # heads before the first tail; numpy counts trials up to the first success
        return rng.geometric(1 - self.p, size=n) - 1


@dataclass(frozen=True)
class Poisson:
    lam: float
    name = "poisson"

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"poisson needs lambda > 0, got {self.lam}")

    @property
    def params(self):
        return {"lambda": self.lam}

    def _order(self, max_value):
        """Outcomes ``0..V`` sorted most-likely-first, ``V`` large enough to
        rank every outcome up to ``max_value`` exactly."""
        max_value = max(int(max_value), 0)
        floor_lp = stats.poisson.logpmf(np.arange(max_value + 1), self.lam).min()
        top = max(max_value, 2 * int(self.lam) + 10)
        while stats.poisson.logpmf(top, self.lam) >= floor_lp:
            top *= 2
        values = np.arange(top + 1)
        # ties (e.g. lam-1 and lam for integer lam) go to the smaller outcome
        logp = np.round(stats.poisson.logpmf(values, self.lam), 10)
        return values[np.lexsort((values, -logp))]

    def rank_of(self, values):
        values = np.asarray(values, dtype=np.int64)
        order = self._order(values.max() if values.size else 0)
        rank = np.empty(len(order), dtype=np.int64)
        rank[order] = np.arange(len(order))
        return rank[values]

    def ranked_pmf(self, m):
        top = int(self.lam + 12 * math.sqrt(self.lam) + 40 + m)
        pmf = np.sort(stats.poisson.pmf(np.arange(top + 1), self.lam))[::-1]
        return pmf[:m]

    def draw(self, rng, n):
        return self.rank_of(rng.poisson(self.lam, size=n))


@dataclass(frozen=True)
class Zeta:
    s: float
    name = "zeta"

    def __post_init__(self):
        if not self.s > 1:
            raise ValueError(f"zeta needs s > 1, got {self.s}")

    @property
    def params(self):
        return {"s": self.s}

    def ranked_pmf(self, m):
        return np.arange(1, m + 1, dtype=float) ** -self.s / special.zeta(self.s)

    def tail(self, n):
        """Mass of ranks ``>= n`` (classes ``n+1, n+2, ...``)."""
        return special.zeta(self.s, n + 1) / special.zeta(self.s)

    def draw(self, rng, n):
        cdf = np.cumsum(self.ranked_pmf(n))
        # searchsorted returns n for the tail, which is exactly the pile-up rank
        return np.searchsorted(cdf, rng.random(n), side="right")


DISTRIBUTIONS = {
    "uniform": (Uniform, {"k": int}),
    "geometric": (Geometric, {"p": float}),
    "poisson": (Poisson, {"lambda": float}),
    "zeta": (Zeta, {"s": float}),
}


def _parse_number(text, kind):
    if kind is int:
        return int(text)
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def make_distribution(name, params):
    """Build a distribution from a name and ``{key: value}`` (strings allowed)."""
    if name not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {name!r}; choose from {sorted(DISTRIBUTIONS)}")
    cls, keys = DISTRIBUTIONS[name]
    params = dict(params)
    if name == "poisson" and "lam" in params:
        params["lambda"] = params.pop("lam")
    if set(params) != set(keys):
        raise ValueError(f"{name} takes parameters {sorted(keys)}, got {sorted(params)}")
    values = []
    for key, kind in keys.items():
        v = params[key]
        values.append(_parse_number(v, kind) if isinstance(v, str) else kind(v))
    return cls(*values)


def sample_ranks(dist, n, rng_seed=None):
    """``n`` independent ranks from ``dist``, truncated at ``n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(rng_seed)
    return np.minimum(np.asarray(dist.draw(rng, n), dtype=np.int64), n)


def truncated_pmf(dist, n):
    """Exact law of one truncated rank: entries ``0..n-1`` then the pile-up at ``n``."""
    head = np.asarray(dist.ranked_pmf(n), dtype=float)
    if isinstance(dist, Zeta):
        tail = dist.tail(n)
    elif isinstance(dist, Geometric):
        tail = dist.p**n
    else:
        tail = max(0.0, 1.0 - head.sum())
    return np.append(head, tail)


def expected_rank(dist, n):
    pmf = truncated_pmf(dist, n)
    return float(np.dot(np.arange(n + 1), pmf))


def expected_classes(dist, n):
    """Expected number of distinct ranks among ``n`` draws."""
    pmf = truncated_pmf(dist, n)
    return float(np.sum(-np.expm1(n * np.log1p(-np.minimum(pmf, 1 - 1e-16)))))


def zeta_mean(s):
    """Mean class index (1-based) of the zeta law, finite for ``s > 2``."""
    if s <= 2:
        raise ValueError("zeta mean is finite only for s > 2")
    return special.zeta(s - 1) / special.zeta(s)


def dominance_bound(ranks):
    return 2 * int(np.sum(ranks, dtype=np.int64))


def realize_labels(ranks):
    return GroundTruth(tuple(int(r) for r in ranks))
