import numpy as np
import pytest


def random_labels(rng, n, k, profile="uniform"):
    """Labels over at most ``k`` classes with a chosen class-size profile."""
    if profile == "uniform":
        return rng.integers(0, k, n)
    if profile == "skewed":
        w = 0.5 ** np.arange(k)
        return rng.choice(k, size=n, p=w / w.sum())
    if profile == "singleton":
        # one tiny class among large ones
        labels = rng.integers(1, max(k, 2), n)
        labels[rng.integers(0, n)] = 0
        return labels
    raise ValueError(profile)


def partition_of(labels):
    groups = {}
    for i, c in enumerate(labels):
        groups.setdefault(int(c), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("abcdefgh")), k)):
        terminalreporter.write_line(ACCEPTANCE[key])
