"""Equivalence class sorting in a simulated parallel comparison model."""

from .adversary import (
    AdversaryMode,
    AdversaryOracle,
    AdversaryState,
    Verdict,
    adversary_answer,
    certify_floor,
    new_scc_adversary,
    new_uniform_adversary,
)
from .bench import ExperimentConfig, FitReport, ResultRow, linear_fit, run_experiment, write_results
from .constant_round import (
    ConstantRoundFailure,
    ConstantRoundParams,
    compute_d,
    er_constant_retry,
    er_constant_sort,
    sample_cycle_union,
)
from .distributions import (
    Geometric,
    Poisson,
    Uniform,
    Zeta,
    dominance_bound,
    make_distribution,
    realize_labels,
    sample_ranks,
)
from .knowledge import ContradictionError, PartitionState, Relation, new_partition
from .model import (
    GroundTruth,
    IllegalRoundError,
    Mode,
    Oracle,
    Result,
    RunMetrics,
    TruthOracle,
    execute_round,
    make_truth_oracle,
)
from .parallel import Answer, cr_sort, er_sort, merge_answers_pair
from .round_robin import round_robin_sort
