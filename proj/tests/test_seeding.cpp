#include "doctest.h"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dmoea/benchmarks.hpp"
#include "dmoea/seeding.hpp"
#include "oracles.hpp"

using namespace dmoea;

namespace {

// A machine whose decision value is +1 everywhere: a single positive sample
// trains to alpha = 0, bias = 1.
KernelMachine accept_all(int dimension) {
  KernelMachine machine(KernelConfig{1.0, 10.0});
  machine.increment({DecisionVector(static_cast<std::size_t>(dimension), 0.5), 1});
  return machine;
}

KernelMachine reject_all(int dimension) {
  KernelMachine machine(KernelConfig{1.0, 10.0});
  machine.increment({DecisionVector(static_cast<std::size_t>(dimension), 0.5), -1});
  return machine;
}

bool same_fronts(const std::vector<std::vector<Individual>>& a,
                 const std::vector<std::vector<Individual>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != b[k].size()) return false;
    for (std::size_t i = 0; i < a[k].size(); ++i)
      if (a[k][i].decision != b[k][i].decision ||
          a[k][i].objectives != b[k][i].objectives)
        return false;
  }
  return true;
}

}  // namespace

TEST_CASE("stub machines behave as universal filters") {
  const KernelMachine yes = accept_all(10);
  const KernelMachine no = reject_all(10);
  RandomSource rng(12345);
  const DynamicProblem problem = make_problem(BenchmarkId::dMOP2);
  for (const DecisionVector& x : generate_candidates(problem, 20, rng)) {
    CHECK(yes.decision_value(x) > 0.0);
    CHECK(no.decision_value(x) < 0.0);
  }
}

TEST_CASE("training batches pair every positive with a fresh negative") {
  const DynamicProblem problem = make_problem(BenchmarkId::DIMP2);
  RandomSource rng(99);
  std::vector<DecisionVector> positives = generate_candidates(problem, 7, rng);
  RandomSource batch_rng(1000);
  const TrainingBatch batch = build_training_batch(positives, problem, batch_rng);
  CHECK(batch.positives == positives);
  REQUIRE(batch.negatives.size() == positives.size());
  for (const DecisionVector& x : batch.negatives) {
    CHECK(problem.contains(x));
    CHECK(std::find(positives.begin(), positives.end(), x) == positives.end());
  }
  // Same stream, same batch.
  RandomSource again(1000);
  CHECK(build_training_batch(positives, problem, again).negatives ==
        batch.negatives);
  RandomSource other(1001);
  CHECK(build_training_batch(positives, problem, other).negatives !=
        batch.negatives);
  CHECK_THROWS_AS(build_training_batch({}, problem, batch_rng),
                  std::invalid_argument);
  positives[0][0] = 2.5;  // outside [0,1]
  CHECK_THROWS_AS(build_training_batch(positives, problem, batch_rng),
                  std::invalid_argument);
}

TEST_CASE("candidate generation draws coordinates in document order") {
  const DynamicProblem problem = make_problem(BenchmarkId::HE7);
  RandomSource rng(424242);
  const auto candidates = generate_candidates(problem, 6, rng);
  REQUIRE(candidates.size() == 6);
  RandomSource replay(424242);
  for (const DecisionVector& x : candidates) {
    REQUIRE(x.size() == static_cast<std::size_t>(problem.dimension));
    CHECK(problem.contains(x));
    for (int d = 0; d < problem.dimension; ++d)
      CHECK(x[static_cast<std::size_t>(d)] ==
            replay.uniform(problem.lower[d], problem.upper[d]));
  }
}

TEST_CASE("filtering keeps accepted candidates in order and tops up") {
  const DynamicProblem problem = make_problem(BenchmarkId::dMOP2);
  RandomSource rng(777);
  const auto candidates = generate_candidates(problem, 12, rng);

  SUBCASE("accept-all reproduces the candidate prefix") {
    RandomSource fallback(1);
    const auto kept =
        filter_candidates(accept_all(10), candidates, 5, problem, fallback);
    REQUIRE(kept.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(kept[i] == candidates[i]);
  }
  SUBCASE("reject-all falls back to the dedicated stream") {
    RandomSource fallback(2026);
    const auto kept =
        filter_candidates(reject_all(10), candidates, 4, problem, fallback);
    RandomSource replay(2026);
    const auto expected = generate_candidates(problem, 4, replay);
    CHECK(kept == expected);
  }
  SUBCASE("a discriminating machine keeps its side of the split") {
    std::vector<LabeledSample> training;
    for (double base : {0.05, 0.1, 0.15})
      training.push_back({DecisionVector(10, base), 1});
    for (double base : {0.85, 0.9, 0.95})
      training.push_back({DecisionVector(10, base), -1});
    const KernelMachine machine = train_batch(training, KernelConfig{1.0, 10.0});
    std::vector<DecisionVector> mixed = {
        DecisionVector(10, 0.12), DecisionVector(10, 0.88),
        DecisionVector(10, 0.08), DecisionVector(10, 0.92),
        DecisionVector(10, 0.11)};
    RandomSource fallback(3);
    const auto kept = filter_candidates(machine, mixed, 5, problem, fallback);
    REQUIRE(kept.size() == 5);
    CHECK(kept[0] == mixed[0]);
    CHECK(kept[1] == mixed[2]);
    CHECK(kept[2] == mixed[4]);
    for (std::size_t i = 3; i < 5; ++i) CHECK(problem.contains(kept[i]));
    // A smaller target stops at the first accepted candidates.
    RandomSource unused(4);
    const auto two = filter_candidates(machine, mixed, 2, problem, unused);
    CHECK(two == std::vector<DecisionVector>{mixed[0], mixed[2]});
  }
  SUBCASE("zero target is rejected") {
    RandomSource fallback(5);
    CHECK_THROWS_AS(
        filter_candidates(accept_all(10), candidates, 0, problem, fallback),
        std::invalid_argument);
  }
}

TEST_CASE("a dynamic run visits every scheduled environment") {
  const DynamicProblem problem = make_problem(BenchmarkId::dMOP2);
  const EnvironmentConfig config = environment_config("C1");
  OptimizerConfig opt;
  opt.population_size = 8;
  opt.generations = 3;
  SeedingConfig seeding;

  SUBCASE("random restart") {
    const DynamicRunResult result =
        run_dynamic(problem, config, OptimizerKind::Nsga2, opt, seeding,
                    SeedingMode::RandomRestart, 555);
    REQUIRE(result.pos_per_change.size() == 20);
    CHECK(result.classifier_samples.empty());
    CHECK(result.kernel_scale == 0.0);
    for (const auto& pos : result.pos_per_change) {
      CHECK(!pos.empty());
      for (const Individual& ind : pos) {
        CHECK(problem.contains(ind.decision));
        for (const Individual& other : pos)
          CHECK_FALSE(oracle::dominates(other.objectives, ind.objectives));
      }
    }
    // Bitwise reproducible, and seed-sensitive.
    const DynamicRunResult rerun =
        run_dynamic(problem, config, OptimizerKind::Nsga2, opt, seeding,
                    SeedingMode::RandomRestart, 555);
    CHECK(same_fronts(result.pos_per_change, rerun.pos_per_change));
    const DynamicRunResult shifted =
        run_dynamic(problem, config, OptimizerKind::Nsga2, opt, seeding,
                    SeedingMode::RandomRestart, 556);
    CHECK_FALSE(same_fronts(result.pos_per_change, shifted.pos_per_change));
  }

  SUBCASE("classifier mode trains a growing machine") {
    SeedingConfig fixed = seeding;
    fixed.svm_scale = 0.7;
    const DynamicRunResult result =
        run_dynamic(problem, config, OptimizerKind::Nsga2, opt, fixed,
                    SeedingMode::Classifier, 555);
    REQUIRE(result.pos_per_change.size() == 20);
    REQUIRE(result.classifier_samples.size() == 20);
    CHECK(result.kernel_scale == 0.7);
    CHECK(result.classifier_samples.front() > 0);
    for (std::size_t k = 0; k < result.classifier_samples.size(); ++k) {
      // Positives and negatives arrive in pairs.
      CHECK(result.classifier_samples[k] % 2 == 0);
      if (k > 0)
        CHECK(result.classifier_samples[k] >= result.classifier_samples[k - 1]);
    }
  }

  SUBCASE("grid search runs when no scale is pinned") {
    const DynamicRunResult result =
        run_dynamic(problem, config, OptimizerKind::Nsga2, opt, seeding,
                    SeedingMode::Classifier, 808);
    CHECK(result.kernel_scale > 0.0);
  }

  SUBCASE("particle swarm path") {
    const DynamicRunResult result =
        run_dynamic(problem, config, OptimizerKind::Mopso, opt, seeding,
                    SeedingMode::RandomRestart, 555);
    REQUIRE(result.pos_per_change.size() == 20);
    for (const auto& pos : result.pos_per_change) {
      CHECK(!pos.empty());
      CHECK(pos.size() <= 16);  // default archive capacity 2n
    }
  }
}

TEST_CASE("an accept-everything filter reproduces the random restart exactly") {
  // The classifier pipeline draws its candidate pool from the same stream a
  // random restart reads, so a filter that accepts everything must yield the
  // same initial populations, the same optimizer trajectories, and the same
  // fronts, bit for bit.
  const DynamicProblem problem = make_problem(BenchmarkId::FDA4);
  const EnvironmentConfig config = environment_config("C1");
  OptimizerConfig opt;
  opt.population_size = 6;
  opt.generations = 2;
  SeedingConfig seeding;
  const KernelMachine stub = accept_all(problem.dimension);
  for (OptimizerKind kind : {OptimizerKind::Nsga2, OptimizerKind::Mopso}) {
    const DynamicRunResult filtered =
        run_dynamic(problem, config, kind, opt, seeding, SeedingMode::Classifier,
                    31415, 0, &stub);
    const DynamicRunResult restarted =
        run_dynamic(problem, config, kind, opt, seeding,
                    SeedingMode::RandomRestart, 31415);
    CHECK(same_fronts(filtered.pos_per_change, restarted.pos_per_change));
    REQUIRE(filtered.classifier_samples.size() == 20);
    CHECK(filtered.classifier_samples.front() == stub.size());
  }
}
