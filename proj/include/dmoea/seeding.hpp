#pragma once

#include <cstdint>
#include <vector>

#include "dmoea/dmop.hpp"
#include "dmoea/optimizers.hpp"
#include "dmoea/rng.hpp"
#include "dmoea/svm.hpp"

namespace dmoea {

/// Training data for the population classifier: positives are the decision
/// vectors of a Pareto-optimal set, negatives are random in-bounds vectors
/// that do not coincide with any positive. |negatives| == |positives|.
struct TrainingBatch {
  std::vector<DecisionVector> positives;
  std::vector<DecisionVector> negatives;
};

struct SeedingConfig {
  // Candidates drawn per requested seed. Classifier queries cost a handful of
  // kernel evaluations each -- far cheaper than objective evaluations -- and
  // the acceptance region is a thin tube around past optima, so acceptance
  // rates are often well under a percent and the pool must be deep for the
  // filter to matter. Raising this improves recall of classifier-approved
  // candidates; past ~300 the extra accepts increasingly come from stale
  // regions and crowd out fresh diversity.
  int candidate_multiplier = 200;
  double svm_regularization = 10.0;
  double svm_scale = 0.0;  // <= 0: grid-search on the first training batch
  int grid_folds = 5;
};

/// How each new environment's initial population is produced.
enum class SeedingMode {
  Classifier,    // filter random candidates through the trained machine
  RandomRestart  // plain random reinitialization
};

TrainingBatch build_training_batch(const std::vector<DecisionVector>& positives,
                                   const DynamicProblem& problem,
                                   RandomSource& rng);

/// `count` uniform in-bounds decision vectors, coordinates drawn in order.
std::vector<DecisionVector> generate_candidates(const DynamicProblem& problem,
                                                std::size_t count,
                                                RandomSource& rng);

/// Keeps candidates with positive decision value, in order, up to `target`;
/// tops up with uniform random vectors from `fallback` on a shortfall.
std::vector<DecisionVector> filter_candidates(
    const KernelMachine& machine, const std::vector<DecisionVector>& candidates,
    std::size_t target, const DynamicProblem& problem, RandomSource& fallback);

struct DynamicRunResult {
  /// Front approximation found in each environment, in visit order.
  std::vector<std::vector<Individual>> pos_per_change;
  /// Classifier training-set size after each environment (Classifier mode).
  std::vector<std::size_t> classifier_samples;
  /// Kernel scale actually used (after any grid search), 0 if untrained.
  double kernel_scale = 0.0;
};

/// Runs one optimizer across every environment of `config`: environment k
/// is frozen at t = time_index(k * config.frequency, config), the first
/// environment starts from a random population, and later ones start from
/// seeds chosen per `mode`. In Classifier mode the machine is trained after
/// each environment on that environment's front approximation and persists
/// across changes. `initial_generations`, when positive, replaces the
/// optimizer's generation budget for the first environment only: the first
/// front is obtained by an undisturbed full optimization, and every later
/// environment gets the (typically shorter) per-change budget — both modes
/// receive the same budgets. `machine_override`, when set, replaces the
/// trained machine as the filter and disables training (testing hook).
DynamicRunResult run_dynamic(const DynamicProblem& problem,
                             const EnvironmentConfig& config,
                             OptimizerKind optimizer,
                             const OptimizerConfig& optimizer_config,
                             const SeedingConfig& seeding, SeedingMode mode,
                             std::uint64_t run_seed,
                             int initial_generations = 0,
                             const KernelMachine* machine_override = nullptr);

}  // namespace dmoea
