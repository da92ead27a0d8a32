#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dmoea {

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

/// One candidate solution together with its evaluated objectives and the
/// bookkeeping fields used by the population-based optimizers.
struct Individual {
  DecisionVector decision;
  ObjectiveVector objectives;
  int rank = 0;          // nondomination front index, 0 = best
  double crowding = 0.0; // crowding distance within its front
};

/// An environment schedule: how severe each change is (n_t), how many
/// generations pass between changes (tau_t), and the total budget (tau_T).
struct EnvironmentConfig {
  std::string name;
  int severity = 10;           // n_t
  int frequency = 20;          // tau_t, generations per environment
  int total_generations = 400; // tau_T

  int changes() const { return total_generations / frequency; }
};

/// Discrete time index for a generation counter under a schedule:
/// t = (1/n_t) * floor(tau / tau_t).
double time_index(long generation, const EnvironmentConfig& config);

/// A time-dependent multi-objective minimization problem on a box domain.
/// `evaluate` must reject decision vectors outside the box.
struct DynamicProblem {
  std::string name;
  int dimension = 0;
  int objective_count = 0;
  std::vector<double> lower, upper;
  std::function<ObjectiveVector(const DecisionVector&, double)> evaluate;

  bool contains(const DecisionVector& x) const;
};

/// Strict Pareto dominance for minimization: a is no worse everywhere and
/// strictly better somewhere. Exact comparisons, no tolerance.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// The members of `pop` not dominated by any member, in input order.
/// Duplicates by decision vector are collapsed to the first occurrence.
std::vector<Individual> nondominated_subset(const std::vector<Individual>& pop);

}  // namespace dmoea
