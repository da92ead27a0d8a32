#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmoea/benchmarks.hpp"
#include "dmoea/seeding.hpp"

namespace dmoea {

/// The four algorithm variants of the study: two plain optimizers with
/// random restarts, and the same optimizers seeded by the classifier.
enum class AlgoVariant { Nsga2, Mopso, IsvmNsga2, IsvmMopso };

const char* algo_name(AlgoVariant algo);
AlgoVariant algo_from_name(const std::string& name);

struct ExperimentSpec {
  std::vector<BenchmarkId> problems;
  std::vector<std::string> configs;  // names from C1..C8
  std::vector<AlgoVariant> algos;
  int seeds = 5;  // seed indices 0..seeds-1
  std::uint64_t base_seed = 20150915;
  int population_size = 100;
  int generations_per_change = 0;  // <= 0: the config's change period tau_t
  int initial_generations = 50;    // budget for the first environment only
  int candidate_multiplier = 200;  // see SeedingConfig::candidate_multiplier
  double svm_regularization = 10.0;
  double svm_scale = 0.0;       // <= 0: grid search
  std::size_t reference_points = 0;  // 0: 500 (two obj.) or 990 (three obj.)
  int workers = 0;              // 0: hardware concurrency
};

/// One (problem, config, algorithm, seed) cell of the experiment grid.
struct RunRecord {
  std::string problem;
  std::string config;
  AlgoVariant algo;
  int seed_index = 0;
  std::vector<double> t_per_change;
  std::vector<double> igd_per_change;
  double migd = 0.0;
  double wallclock_s = 0.0;
};

/// Runs the full grid. Record order is canonical (problem, config, algo,
/// seed) regardless of scheduling.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec);

/// Writes per-run traces (trace_<problem>_<config>_<algo>_s<seed>.csv),
/// summary.csv, aggregate.csv (DMIGD per problem x algorithm), and
/// spec.json into `out_dir`. Creates the directory if needed.
void write_results(const std::vector<RunRecord>& records,
                   const ExperimentSpec& spec, const std::string& out_dir);

std::uint64_t run_seed_for(const ExperimentSpec& spec, const std::string& problem,
                           const std::string& config, AlgoVariant algo,
                           int seed_index);

}  // namespace dmoea
