"""
Round robin on random class distributions
=========================================

Classes are drawn from a distribution and ranked most-likely-first. The
sequential round-robin sort then needs a number of tests that grows linearly
in n for the geometric, Poisson and uniform families and for zeta with s > 2.
"""

# %%
from ecsort import make_distribution, sample_ranks, dominance_bound
from ecsort.bench import ExperimentConfig, linear_fit, run_experiment

dist = make_distribution("geometric", {"p": "1/2"})
ranks = sample_ranks(dist, 20, rng_seed=1)
print("ranks:", ranks.tolist(), "twice the rank sum:", dominance_bound(ranks))

# %%
# A short grid per family, with a least-squares line through all rows.
grid = list(range(1000, 10001, 1000))
for name, params in [("uniform", {"k": "10"}), ("geometric", {"p": "1/10"}),
                     ("poisson", {"lambda": "5"}), ("zeta", {"s": "2.5"}), ("zeta", {"s": "1.5"})]:
    rows = run_experiment(ExperimentConfig("round-robin", name, params, grid, trials=3, base_seed=1))
    fit = linear_fit(rows)
    print(f"{name:9s} {fit.params:10s} slope={fit.slope:7.2f} r2={fit.r_squared:.4f} "
          f"spread={fit.relative_spread:.1%}")
