import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ecsort.constant_round import (
    ConstantRoundFailure, ConstantRoundParams, compute_d, er_constant_retry, er_constant_sort,
    failure_exponent, log_term, log_term_quartic_bound, log_term_taylor_bound, sample_cycle_union,
)
from ecsort.model import Mode, TruthOracle, validate_er_round
from ecsort.scc import components_as_lists, strongly_connected_components

from conftest import partition_of


def _closed_form_d(lam):
    # independent oracle: first integer d making (1 + lam) ln 2 - d lam^2 / 8 negative
    d = 1
    while (1 + lam) * math.log(2) - d * lam * lam / 8 >= 0:
        d += 1
    return d


@pytest.mark.parametrize("lam, d", [(0.4, 49), (0.2, 167), (1 / 3, 67)])
def test_compute_d(lam, d):
    assert compute_d(lam) == d == _closed_form_d(lam)


@pytest.mark.parametrize("lam", [0.5, 0.0, -0.1])
def test_compute_d_range(lam):
    with pytest.raises(ValueError):
        compute_d(lam)


@pytest.mark.parametrize("lam", np.linspace(0.01, 0.4, 40))
def test_bound_chain(lam):
    assert log_term(lam) <= log_term_taylor_bound(lam) + 1e-15
    assert math.isclose(log_term_taylor_bound(lam), log_term_quartic_bound(lam), rel_tol=1e-9, abs_tol=1e-15)
    assert log_term_quartic_bound(lam) <= -lam * lam / 8
    assert failure_exponent(lam, compute_d(lam)) < 0


def test_cycle_union_shapes():
    g = sample_cycle_union(3, 1, 0)
    arcs = {tuple(a) for a in g.arcs.tolist()}
    assert len(arcs) == 3
    # one directed triangle: each vertex has out- and in-degree 1
    assert sorted(a for a, _ in arcs) == [0, 1, 2] and sorted(b for _, b in arcs) == [0, 1, 2]
    g = sample_cycle_union(5, 2, 1)
    assert len(g.arcs) <= 10
    assert np.bincount(g.arcs[:, 0], minlength=5).max() <= 2
    assert np.array_equal(sample_cycle_union(50, 3, 9).arcs, sample_cycle_union(50, 3, 9).arcs)
    for row in sample_cycle_union(40, 4, 2).cycles:
        assert sorted(row.tolist()) == list(range(40))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 60), st.integers(0, 200), st.integers(0, 2**32 - 1))
def test_scc_matches_scipy(n, m, seed):
    rng = np.random.default_rng(seed)
    tails, heads = rng.integers(0, n, m), rng.integers(0, n, m)
    ours = strongly_connected_components(n, tails, heads)
    graph = coo_matrix((np.ones(m), (tails, heads)), shape=(n, n))
    _, theirs = connected_components(graph, directed=True, connection="strong")
    canon = lambda comp: sorted(sorted(c) for c in components_as_lists(comp))
    assert canon(ours) == canon(theirs)


def test_thirds_sorted():
    labels = np.repeat([0, 1, 2], 10)
    res = er_constant_sort(TruthOracle(labels), ConstantRoundParams(0.333), rng_seed=5)
    assert res.state.groups() == partition_of(labels)


def test_small_class_fails_cleanly():
    labels = np.array([0] * 299 + [1])
    try:
        res = er_constant_sort(TruthOracle(labels), ConstantRoundParams(0.4, override_d=4), rng_seed=3)
    except ConstantRoundFailure:
        return
    assert res.state.groups() == partition_of(labels)


def test_rounds_do_not_grow_with_n():
    params = ConstantRoundParams(1 / 3)
    rounds = {}
    for n in (300, 3000, 30000):
        labels = np.arange(n) % 3
        res = er_constant_sort(TruthOracle(labels), params, rng_seed=n)
        assert res.state.groups() == partition_of(labels)
        rounds[n] = res.metrics.rounds
        assert res.info["step2_rounds"] == 2 * params.d
    assert max(rounds.values()) - min(rounds.values()) <= 3


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 150), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_retry_always_correct_and_legal(n, k, seed):
    labels = np.random.default_rng(seed).integers(0, k, n)
    res = er_constant_retry(TruthOracle(labels), rng_seed=seed, override_d=4, record=True)
    assert res.state.groups() == partition_of(labels)
    for mode, pairs in res.info["trace"]:
        assert mode is Mode.ER and validate_er_round(pairs)


def test_retry_singleton_class():
    # the lone element is only kept as its own component once lam * n / 8 <= 1
    labels = np.array([1] * 99 + [0])
    res = er_constant_retry(TruthOracle(labels), rng_seed=0, override_d=3)
    assert res.state.groups() == partition_of(labels)
    assert res.info["failed_lambdas"] == [0.4, 0.2, 0.1]
    assert res.info["lambda"] == 0.05


def test_retry_max_d_triggers_fallback():
    labels = np.array([1] * 99 + [0])
    res = er_constant_retry(TruthOracle(labels), rng_seed=0, max_d=100)
    assert res.info["fallback"] and res.info["lambda"] is None
    assert res.state.groups() == partition_of(labels)


def test_thirds_no_fallback():
    labels = np.arange(900) % 3
    res = er_constant_retry(TruthOracle(labels), rng_seed=1)
    assert not res.info["fallback"] and res.info["failed_lambdas"] == []
