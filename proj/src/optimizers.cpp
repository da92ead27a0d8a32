#include "dmoea/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dmoea/rng.hpp"

namespace dmoea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void clamp_to_bounds(const DynamicProblem& problem, DecisionVector& x) {
  for (int d = 0; d < problem.dimension; ++d)
    x[d] = std::fmin(std::fmax(x[d], problem.lower[d]), problem.upper[d]);
}

// Simulated binary crossover, bounded form: each variable crosses with
// probability 1/2, children are symmetric around the parents and clipped
// by the spread factors the box bounds allow.
std::pair<DecisionVector, DecisionVector> sbx(const DynamicProblem& problem,
                                              const DecisionVector& a,
                                              const DecisionVector& b,
                                              double eta, RandomSource& rng) {
  DecisionVector c1 = a, c2 = b;
  for (int d = 0; d < problem.dimension; ++d) {
    if (rng.uniform01() > 0.5) continue;
    const double y1 = std::min(a[d], b[d]);
    const double y2 = std::max(a[d], b[d]);
    if (!(y2 - y1 > 1e-14)) continue;
    const double lo = problem.lower[d], hi = problem.upper[d];
    const double rand = rng.uniform01();
    auto spread = [&](double beta) {
      const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      if (rand <= 1.0 / alpha)
        return std::pow(rand * alpha, 1.0 / (eta + 1.0));
      return std::pow(1.0 / (2.0 - rand * alpha), 1.0 / (eta + 1.0));
    };
    const double beta_lo = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
    const double beta_hi = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
    double child1 = 0.5 * ((y1 + y2) - spread(beta_lo) * (y2 - y1));
    double child2 = 0.5 * ((y1 + y2) + spread(beta_hi) * (y2 - y1));
    child1 = std::fmin(std::fmax(child1, lo), hi);
    child2 = std::fmin(std::fmax(child2, lo), hi);
    if (rng.uniform01() <= 0.5) std::swap(child1, child2);
    c1[d] = child1;
    c2[d] = child2;
  }
  return {std::move(c1), std::move(c2)};
}

// Bounded polynomial mutation.
void polynomial_mutation(const DynamicProblem& problem, DecisionVector& x,
                         double eta, double prob, RandomSource& rng) {
  for (int d = 0; d < problem.dimension; ++d) {
    if (rng.uniform01() > prob) continue;
    const double lo = problem.lower[d], hi = problem.upper[d];
    const double span = hi - lo;
    const double r = rng.uniform01();
    const double mut_pow = 1.0 / (eta + 1.0);
    double deltaq;
    if (r <= 0.5) {
      const double xy = 1.0 - (x[d] - lo) / span;
      const double val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(xy, eta + 1.0);
      deltaq = std::pow(val, mut_pow) - 1.0;
    } else {
      const double xy = 1.0 - (hi - x[d]) / span;
      const double val =
          2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(xy, eta + 1.0);
      deltaq = 1.0 - std::pow(val, mut_pow);
    }
    x[d] = std::fmin(std::fmax(x[d] + deltaq * span, lo), hi);
  }
}

// (rank, crowding) order used by tournament selection.
bool beats(const Individual& a, const Individual& b) {
  return a.rank < b.rank || (a.rank == b.rank && a.crowding > b.crowding);
}

// Assigns ranks and per-front crowding distances in place.
void grade_population(std::vector<Individual>& pop) {
  const auto fronts = nondominated_sort(pop);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    std::vector<Individual> members;
    members.reserve(fronts[r].size());
    for (std::size_t idx : fronts[r]) members.push_back(pop[idx]);
    const std::vector<double> crowd = crowding_distance(members);
    for (std::size_t m = 0; m < fronts[r].size(); ++m) {
      pop[fronts[r][m]].rank = static_cast<int>(r);
      pop[fronts[r][m]].crowding = crowd[m];
    }
  }
}

std::vector<Individual> run_nsga2(const DynamicProblem& problem, double t,
                                  std::vector<Individual> pop,
                                  const OptimizerConfig& config,
                                  const GenerationHooks* hooks) {
  const std::size_t n = pop.size();
  if (n % 2 != 0)
    throw std::invalid_argument("run_optimizer: population size must be even");
  RandomSource rng(config.seed);
  const double mutation_prob = config.mutation_prob > 0.0
                                   ? config.mutation_prob
                                   : 1.0 / problem.dimension;
  grade_population(pop);
  for (int gen = 1; gen <= config.generations; ++gen) {
    std::vector<Individual> combined = pop;
    combined.reserve(2 * n);
    auto tournament = [&]() -> const Individual& {
      const Individual& a = pop[rng.index(n)];
      const Individual& b = pop[rng.index(n)];
      return beats(b, a) ? b : a;
    };
    for (std::size_t pair = 0; pair < n / 2; ++pair) {
      const Individual& p1 = tournament();
      const Individual& p2 = tournament();
      DecisionVector c1 = p1.decision, c2 = p2.decision;
      if (rng.uniform01() <= config.crossover_prob) {
        auto crossed = sbx(problem, p1.decision, p2.decision,
                           config.crossover_eta, rng);
        c1 = std::move(crossed.first);
        c2 = std::move(crossed.second);
      }
      polynomial_mutation(problem, c1, config.mutation_eta, mutation_prob, rng);
      polynomial_mutation(problem, c2, config.mutation_eta, mutation_prob, rng);
      for (DecisionVector* child : {&c1, &c2}) {
        Individual ind;
        ind.decision = std::move(*child);
        ind.objectives = problem.evaluate(ind.decision, t);
        combined.push_back(std::move(ind));
      }
    }

    // (mu + lambda) survival: whole fronts first, crowding breaks the last.
    const auto fronts = nondominated_sort(combined);
    std::vector<Individual> next;
    next.reserve(n);
    for (std::size_t r = 0; r < fronts.size() && next.size() < n; ++r) {
      std::vector<Individual> members;
      members.reserve(fronts[r].size());
      for (std::size_t idx : fronts[r]) members.push_back(combined[idx]);
      const std::vector<double> crowd = crowding_distance(members);
      for (std::size_t m = 0; m < members.size(); ++m) {
        members[m].rank = static_cast<int>(r);
        members[m].crowding = crowd[m];
      }
      if (next.size() + members.size() <= n) {
        for (Individual& ind : members) next.push_back(std::move(ind));
      } else {
        std::vector<std::size_t> order(members.size());
        for (std::size_t m = 0; m < order.size(); ++m) order[m] = m;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return members[a].crowding > members[b].crowding;
                         });
        for (std::size_t m = 0; next.size() < n; ++m)
          next.push_back(std::move(members[order[m]]));
      }
    }
    pop = std::move(next);
    if (hooks && hooks->population) hooks->population(gen, pop);
  }
  return pop;
}

// Objective-space grid over the archive, ten divisions per objective.
struct ArchiveGrid {
  std::map<long, std::vector<std::size_t>> cells;

  explicit ArchiveGrid(const std::vector<Individual>& archive) {
    const std::size_t m = archive.front().objectives.size();
    std::vector<double> lo(m, kInf), hi(m, -kInf);
    for (const Individual& a : archive)
      for (std::size_t k = 0; k < m; ++k) {
        lo[k] = std::min(lo[k], a.objectives[k]);
        hi[k] = std::max(hi[k], a.objectives[k]);
      }
    for (std::size_t i = 0; i < archive.size(); ++i) {
      long id = 0;
      for (std::size_t k = 0; k < m; ++k) {
        int bin = 0;
        if (hi[k] > lo[k]) {
          const double f = (archive[i].objectives[k] - lo[k]) / (hi[k] - lo[k]);
          bin = std::min(9, static_cast<int>(f * 10.0));
        }
        id = id * 10 + bin;
      }
      cells[id].push_back(i);
    }
  }
};

// Keeps the archive mutually nondominated; exact decision duplicates of an
// existing member are dropped.
void archive_insert(std::vector<Individual>& archive, const Individual& cand) {
  for (const Individual& a : archive) {
    if (dominates(a.objectives, cand.objectives)) return;
    if (a.decision == cand.decision) return;
  }
  std::erase_if(archive, [&](const Individual& a) {
    return dominates(cand.objectives, a.objectives);
  });
  archive.push_back(cand);
}

void archive_prune(std::vector<Individual>& archive, std::size_t capacity,
                   RandomSource& rng) {
  while (archive.size() > capacity) {
    const ArchiveGrid grid(archive);
    const std::vector<std::size_t>* densest = nullptr;
    for (const auto& [id, members] : grid.cells)
      if (!densest || members.size() > densest->size()) densest = &members;
    const std::size_t victim = (*densest)[rng.index(densest->size())];
    archive.erase(archive.begin() + static_cast<std::ptrdiff_t>(victim));
  }
}

const Individual& select_leader(const std::vector<Individual>& archive,
                                RandomSource& rng) {
  const ArchiveGrid grid(archive);
  double total = 0.0;
  for (const auto& [id, members] : grid.cells)
    total += 10.0 / static_cast<double>(members.size());
  double ticket = rng.uniform01() * total;
  const std::vector<std::size_t>* chosen = nullptr;
  for (const auto& [id, members] : grid.cells) {
    chosen = &members;
    ticket -= 10.0 / static_cast<double>(members.size());
    if (ticket <= 0.0) break;
  }
  return archive[(*chosen)[rng.index(chosen->size())]];
}

std::pair<std::vector<Individual>, std::vector<Individual>> run_mopso(
    const DynamicProblem& problem, double t, std::vector<Individual> swarm,
    const OptimizerConfig& config, const GenerationHooks* hooks) {
  const std::size_t n = swarm.size();
  const std::size_t capacity =
      config.archive_capacity > 0
          ? static_cast<std::size_t>(config.archive_capacity)
          : 2 * n;
  if (capacity < n)
    throw std::invalid_argument(
        "run_optimizer: archive capacity below population size");
  RandomSource rng(config.seed);
  const double inertia = 0.4, cognitive = 1.0, social = 1.0;
  const double mutation_prob = config.mutation_prob > 0.0
                                   ? config.mutation_prob
                                   : 1.0 / problem.dimension;
  std::vector<double> vmax(problem.dimension);
  for (int d = 0; d < problem.dimension; ++d)
    vmax[d] = 0.2 * (problem.upper[d] - problem.lower[d]);

  std::vector<DecisionVector> velocity(n,
                                       DecisionVector(problem.dimension, 0.0));
  std::vector<Individual> pbest = swarm;
  std::vector<Individual> archive;
  for (const Individual& p : swarm) archive_insert(archive, p);
  archive_prune(archive, capacity, rng);

  for (int gen = 1; gen <= config.generations; ++gen) {
    for (std::size_t i = 0; i < n; ++i) {
      const Individual& leader = select_leader(archive, rng);
      DecisionVector& x = swarm[i].decision;
      for (int d = 0; d < problem.dimension; ++d) {
        const double r1 = rng.uniform01(), r2 = rng.uniform01();
        double v = inertia * velocity[i][d] +
                   cognitive * r1 * (pbest[i].decision[d] - x[d]) +
                   social * r2 * (leader.decision[d] - x[d]);
        v = std::fmin(std::fmax(v, -vmax[d]), vmax[d]);
        velocity[i][d] = v;
        x[d] += v;
        if (x[d] < problem.lower[d] || x[d] > problem.upper[d]) {
          x[d] = std::fmin(std::fmax(x[d], problem.lower[d]), problem.upper[d]);
          velocity[i][d] = -velocity[i][d];
        }
      }
      if (rng.uniform01() < 0.1)
        polynomial_mutation(problem, x, config.mutation_eta, mutation_prob, rng);
      swarm[i].objectives = problem.evaluate(x, t);
      if (dominates(swarm[i].objectives, pbest[i].objectives))
        pbest[i] = swarm[i];
      else if (!dominates(pbest[i].objectives, swarm[i].objectives) &&
               rng.uniform01() < 0.5)
        pbest[i] = swarm[i];
    }
    for (const Individual& p : swarm) archive_insert(archive, p);
    archive_prune(archive, capacity, rng);
    if (hooks && hooks->population) hooks->population(gen, swarm);
    if (hooks && hooks->archive) hooks->archive(gen, archive);
  }
  return {std::move(swarm), std::move(archive)};
}

}  // namespace

std::vector<std::vector<std::size_t>> nondominated_sort(
    const std::vector<Individual>& pop) {
  const std::size_t n = pop.size();
  std::vector<int> dominated_by(n, 0);
  std::vector<std::vector<std::size_t>> dominates_list(n);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dominates(pop[i].objectives, pop[j].objectives))
        dominates_list[i].push_back(j);
      else if (dominates(pop[j].objectives, pop[i].objectives))
        ++dominated_by[i];
    }
  for (std::size_t i = 0; i < n; ++i)
    if (dominated_by[i] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t i : current)
      for (std::size_t j : dominates_list[i])
        if (--dominated_by[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<Individual>& front) {
  const std::size_t n = front.size();
  if (n == 0) return {};
  if (n <= 2) return std::vector<double>(n, kInf);
  const std::size_t m = front.front().objectives.size();
  std::vector<double> distance(n, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a].objectives[k] < front[b].objectives[k];
    });
    const double span =
        front[order.back()].objectives[k] - front[order.front()].objectives[k];
    if (!(span > 0.0)) continue;  // uninformative objective
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (distance[order[i]] != kInf)
        distance[order[i]] += (front[order[i + 1]].objectives[k] -
                               front[order[i - 1]].objectives[k]) /
                              span;
  }
  return distance;
}

std::vector<Individual> evaluate_population(
    const DynamicProblem& problem, double t,
    const std::vector<DecisionVector>& xs) {
  std::vector<Individual> pop;
  pop.reserve(xs.size());
  for (const DecisionVector& x : xs) {
    Individual ind;
    ind.decision = x;
    ind.objectives = problem.evaluate(x, t);
    pop.push_back(std::move(ind));
  }
  return pop;
}

OptimizerResult run_optimizer(OptimizerKind kind, const DynamicProblem& problem,
                              double t, const std::vector<Individual>& init,
                              const OptimizerConfig& config,
                              const GenerationHooks* hooks) {
  if (init.empty())
    throw std::invalid_argument("run_optimizer: empty initial population");
  if (init.size() != static_cast<std::size_t>(config.population_size))
    throw std::invalid_argument(
        "run_optimizer: initial population size does not match config");
  if (config.generations < 0)
    throw std::invalid_argument("run_optimizer: negative generation count");
  for (const Individual& ind : init) {
    if (!problem.contains(ind.decision))
      throw std::invalid_argument("run_optimizer: initial member out of bounds");
    if (ind.objectives.size() != static_cast<std::size_t>(problem.objective_count))
      throw std::invalid_argument("run_optimizer: initial member not evaluated");
  }

  OptimizerResult result;
  if (kind == OptimizerKind::Nsga2) {
    result.population = run_nsga2(problem, t, init, config, hooks);
    result.pos = nondominated_subset(result.population);
  } else {
    auto [swarm, archive] = run_mopso(problem, t, init, config, hooks);
    result.population = std::move(swarm);
    result.pos = std::move(archive);
  }
  return result;
}

}  // namespace dmoea
