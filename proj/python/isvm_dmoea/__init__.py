"""Dynamic multi-objective optimization with incremental-SVM seeding.

The compiled core exposes the benchmark suite, the quality metrics, the
incremental kernel classifier, and the experiment driver.
"""

from ._core import (
    KernelMachine,
    Problem,
    benchmarks,
    dmigd,
    dominates,
    environment_configs,
    igd,
    migd,
    problem,
    reference_front,
    run_experiment,
    time_index,
    train_svm,
)

__all__ = [
    "KernelMachine",
    "Problem",
    "benchmarks",
    "dmigd",
    "dominates",
    "environment_configs",
    "igd",
    "migd",
    "problem",
    "reference_front",
    "run_experiment",
    "time_index",
    "train_svm",
]
