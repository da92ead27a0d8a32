#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dmoea/dmop.hpp"

namespace dmoea {

enum class OptimizerKind { Nsga2, Mopso };

struct OptimizerConfig {
  int population_size = 100;
  int generations = 50;
  double crossover_prob = 0.9;
  double crossover_eta = 20.0;
  double mutation_eta = 20.0;
  double mutation_prob = -1.0;   // < 0: 1/dimension
  int archive_capacity = -1;     // < 0: 2 * population_size (particle swarm)
  std::uint64_t seed = 0;
};

/// Optional per-generation observers, used by tests and diagnostics.
/// `population` fires after each survival step; `archive` fires after each
/// particle-swarm archive update.
struct GenerationHooks {
  std::function<void(int, const std::vector<Individual>&)> population;
  std::function<void(int, const std::vector<Individual>&)> archive;
};

/// Fast nondominated sort: front indices into `pop`, best front first.
/// Every individual appears in exactly one front.
std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<Individual>& pop);

/// Crowding distances for one front. Boundary solutions per objective get
/// +inf; interior ones accumulate normalized neighbor gaps; objectives with
/// zero span contribute zero. Fronts of size <= 2 are all +inf.
std::vector<double> crowding_distance(const std::vector<Individual>& front);

struct OptimizerResult {
  std::vector<Individual> population;  // final population (NSGA-II) or swarm
  std::vector<Individual> pos;         // the optimizer's front approximation
};

/// Runs one optimizer on a frozen-time snapshot of the problem, starting
/// from `init` (must be nonempty, in bounds, and already evaluated at t).
/// NSGA-II returns the nondominated subset of its final population; the
/// particle swarm returns its external archive.
OptimizerResult run_optimizer(OptimizerKind kind, const DynamicProblem& problem,
                              double t, const std::vector<Individual>& init,
                              const OptimizerConfig& config,
                              const GenerationHooks* hooks = nullptr);

/// Evaluates decision vectors at time t into Individuals.
std::vector<Individual> evaluate_population(const DynamicProblem& problem,
                                            double t,
                                            const std::vector<DecisionVector>& xs);

}  // namespace dmoea
