#include "dmoea/dmop.hpp"

#include <cmath>
#include <stdexcept>

namespace dmoea {

double time_index(long generation, const EnvironmentConfig& config) {
  if (generation < 0) throw std::invalid_argument("time_index: negative generation");
  if (config.severity <= 0 || config.frequency <= 0)
    throw std::invalid_argument("time_index: nonpositive schedule parameters");
  const long periods = generation / config.frequency;
  return static_cast<double>(periods) / config.severity;
}

bool DynamicProblem::contains(const DecisionVector& x) const {
  if (x.size() != static_cast<std::size_t>(dimension)) return false;
  for (int i = 0; i < dimension; ++i)
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  return true;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("dominates: mismatched objective vectors");
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

std::vector<Individual> nondominated_subset(const std::vector<Individual>& pop) {
  std::vector<Individual> result;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < pop.size() && keep; ++j)
      if (j != i && dominates(pop[j].objectives, pop[i].objectives)) keep = false;
    for (const Individual& chosen : result)
      if (keep && chosen.decision == pop[i].decision) keep = false;
    if (keep) result.push_back(pop[i]);
  }
  return result;
}

}  // namespace dmoea
