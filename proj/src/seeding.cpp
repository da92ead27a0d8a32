#include "dmoea/seeding.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace dmoea {

namespace {

// Independent draw streams per environment. The candidate stream is shared
// by both seeding modes: a random restart takes the first population_size
// vectors of exactly the stream the classifier mode filters, so a filter
// that accepts everything reproduces the restart bit for bit.
RandomSource substream(std::uint64_t run_seed, const char* purpose, int change) {
  return RandomSource(
      hash_mix(hash_mix(run_seed, std::string_view(purpose)),
               static_cast<std::uint64_t>(change)));
}

bool coincides(const DecisionVector& x, const std::vector<DecisionVector>& set) {
  return std::find(set.begin(), set.end(), x) != set.end();
}

// Euclidean closeness at which two decision vectors are treated as the same
// training sample: indistinguishable to the classifier, but enough separation
// to keep the kernel matrix invertible.
constexpr double kTrainTolerance = 1e-4;

bool near(const DecisionVector& a, const DecisionVector& b) {
  if (a.size() != b.size()) return false;
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d2 += diff * diff;
  }
  return d2 < kTrainTolerance * kTrainTolerance;
}

}  // namespace

TrainingBatch build_training_batch(const std::vector<DecisionVector>& positives,
                                   const DynamicProblem& problem,
                                   RandomSource& rng) {
  if (positives.empty())
    throw std::invalid_argument("build_training_batch: no positives");
  for (const DecisionVector& p : positives)
    if (!problem.contains(p))
      throw std::invalid_argument("build_training_batch: positive out of bounds");
  TrainingBatch batch;
  batch.positives = positives;
  batch.negatives.reserve(positives.size());
  while (batch.negatives.size() < positives.size()) {
    DecisionVector x(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d)
      x[d] = rng.uniform(problem.lower[d], problem.upper[d]);
    if (!coincides(x, batch.positives)) batch.negatives.push_back(std::move(x));
  }
  return batch;
}

std::vector<DecisionVector> generate_candidates(const DynamicProblem& problem,
                                                std::size_t count,
                                                RandomSource& rng) {
  std::vector<DecisionVector> candidates;
  candidates.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    DecisionVector x(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d)
      x[d] = rng.uniform(problem.lower[d], problem.upper[d]);
    candidates.push_back(std::move(x));
  }
  return candidates;
}

std::vector<DecisionVector> filter_candidates(
    const KernelMachine& machine, const std::vector<DecisionVector>& candidates,
    std::size_t target, const DynamicProblem& problem, RandomSource& fallback) {
  if (target == 0)
    throw std::invalid_argument("filter_candidates: zero target");
  std::vector<DecisionVector> kept;
  kept.reserve(target);
  for (const DecisionVector& c : candidates) {
    if (kept.size() == target) break;
    if (machine.decision_value(c) > 0.0) kept.push_back(c);
  }
  while (kept.size() < target) {
    DecisionVector x(problem.dimension);
    for (int d = 0; d < problem.dimension; ++d)
      x[d] = fallback.uniform(problem.lower[d], problem.upper[d]);
    kept.push_back(std::move(x));
  }
  return kept;
}

DynamicRunResult run_dynamic(const DynamicProblem& problem,
                             const EnvironmentConfig& config,
                             OptimizerKind optimizer,
                             const OptimizerConfig& optimizer_config,
                             const SeedingConfig& seeding, SeedingMode mode,
                             std::uint64_t run_seed, int initial_generations,
                             const KernelMachine* machine_override) {
  const auto pop_size = static_cast<std::size_t>(optimizer_config.population_size);
  const int changes = config.changes();
  if (changes <= 0)
    throw std::invalid_argument("run_dynamic: schedule visits no environment");

  DynamicRunResult result;
  std::unique_ptr<KernelMachine> machine;
  for (int change = 0; change < changes; ++change) {
    const double t = time_index(static_cast<long>(change) * config.frequency, config);
    RandomSource candidate_rng = substream(run_seed, "candidates", change);

    const KernelMachine* filter =
        machine_override ? machine_override : machine.get();
    std::vector<DecisionVector> seeds;
    if (mode == SeedingMode::Classifier && filter != nullptr) {
      const std::size_t pool =
          pop_size * static_cast<std::size_t>(seeding.candidate_multiplier);
      RandomSource fallback_rng = substream(run_seed, "fallback", change);
      seeds = filter_candidates(*filter,
                                generate_candidates(problem, pool, candidate_rng),
                                pop_size, problem, fallback_rng);
    } else {
      seeds = generate_candidates(problem, pop_size, candidate_rng);
    }

    OptimizerConfig cell_config = optimizer_config;
    if (change == 0 && initial_generations > 0)
      cell_config.generations = initial_generations;
    cell_config.seed = hash_mix(hash_mix(run_seed, std::string_view("optimizer")),
                                static_cast<std::uint64_t>(change));
    OptimizerResult found = run_optimizer(
        optimizer, problem, t, evaluate_population(problem, t, seeds), cell_config);

    if (mode == SeedingMode::Classifier && machine_override == nullptr) {
      // Grow the classifier with this environment's front approximation;
      // vectors within kTrainTolerance of one it already stores are skipped so
      // the kernel matrix stays well conditioned (near-duplicates carry no
      // information and make the margin system numerically singular).
      std::vector<DecisionVector> fresh;
      for (const Individual& ind : found.pos) {
        bool stored = false;
        if (machine)
          for (const LabeledSample& s : machine->samples())
            if (near(s.x, ind.decision)) {
              stored = true;
              break;
            }
        bool listed = false;
        for (const DecisionVector& f : fresh)
          if (near(f, ind.decision)) {
            listed = true;
            break;
          }
        if (!stored && !listed) fresh.push_back(ind.decision);
      }
      if (!fresh.empty()) {
        RandomSource negative_rng = substream(run_seed, "negatives", change);
        TrainingBatch batch = build_training_batch(fresh, problem, negative_rng);
        if (!machine) {
          std::vector<LabeledSample> first_batch;
          for (std::size_t i = 0; i < batch.positives.size(); ++i) {
            first_batch.push_back({batch.positives[i], 1});
            first_batch.push_back({batch.negatives[i], -1});
          }
          double scale = seeding.svm_scale;
          if (!(scale > 0.0)) {
            const int folds = std::min<int>(
                seeding.grid_folds, static_cast<int>(first_batch.size()));
            scale = grid_search_scale(first_batch, default_scale_grid(first_batch),
                                      folds, seeding.svm_regularization);
          }
          machine = std::make_unique<KernelMachine>(
              KernelConfig{scale, seeding.svm_regularization});
        }
        for (std::size_t i = 0; i < batch.positives.size(); ++i) {
          machine->increment({batch.positives[i], 1});
          machine->increment({batch.negatives[i], -1});
        }
      }
      result.classifier_samples.push_back(machine ? machine->size() : 0);
      if (machine) result.kernel_scale = machine->config().scale;
    } else if (mode == SeedingMode::Classifier) {
      result.classifier_samples.push_back(machine_override->size());
      result.kernel_scale = machine_override->config().scale;
    }

    result.pos_per_change.push_back(std::move(found.pos));
  }
  return result;
}

}  // namespace dmoea
