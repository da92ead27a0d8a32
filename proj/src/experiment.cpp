#include "dmoea/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "dmoea/metrics.hpp"

namespace dmoea {

namespace {

struct AlgoTraits {
  OptimizerKind optimizer;
  SeedingMode mode;
};

AlgoTraits traits(AlgoVariant algo) {
  switch (algo) {
    case AlgoVariant::Nsga2: return {OptimizerKind::Nsga2, SeedingMode::RandomRestart};
    case AlgoVariant::Mopso: return {OptimizerKind::Mopso, SeedingMode::RandomRestart};
    case AlgoVariant::IsvmNsga2: return {OptimizerKind::Nsga2, SeedingMode::Classifier};
    case AlgoVariant::IsvmMopso: return {OptimizerKind::Mopso, SeedingMode::Classifier};
  }
  throw std::invalid_argument("unknown algorithm variant");
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::size_t default_reference_points(int objective_count) {
  return objective_count == 2 ? 500 : 990;
}

RunRecord run_cell(const ExperimentSpec& spec, BenchmarkId problem_id,
                   const std::string& config_name, AlgoVariant algo,
                   int seed_index) {
  const BenchmarkInfo info = benchmark_info(problem_id);
  const DynamicProblem problem = make_problem(problem_id);
  const EnvironmentConfig config = environment_config(config_name);
  const AlgoTraits how = traits(algo);

  OptimizerConfig optimizer_config;
  optimizer_config.population_size = spec.population_size;
  optimizer_config.generations = spec.generations_per_change > 0
                                     ? spec.generations_per_change
                                     : config.frequency;

  SeedingConfig seeding;
  seeding.candidate_multiplier = spec.candidate_multiplier;
  seeding.svm_regularization = spec.svm_regularization;
  seeding.svm_scale = spec.svm_scale;

  const std::uint64_t run_seed =
      run_seed_for(spec, info.name, config_name, algo, seed_index);

  const auto started = std::chrono::steady_clock::now();
  const DynamicRunResult run =
      run_dynamic(problem, config, how.optimizer, optimizer_config, seeding,
                  how.mode, run_seed, spec.initial_generations);
  const auto finished = std::chrono::steady_clock::now();

  const std::size_t points = spec.reference_points
                                 ? spec.reference_points
                                 : default_reference_points(info.objective_count);
  RunRecord record;
  record.problem = info.name;
  record.config = config_name;
  record.algo = algo;
  record.seed_index = seed_index;
  record.wallclock_s = std::chrono::duration<double>(finished - started).count();
  for (int change = 0; change < config.changes(); ++change) {
    const double t =
        time_index(static_cast<long>(change) * config.frequency, config);
    const ReferenceFront front = sample_reference_front(problem_id, t, points);
    std::vector<ObjectiveVector> approximation;
    approximation.reserve(run.pos_per_change[change].size());
    for (const Individual& ind : run.pos_per_change[change])
      approximation.push_back(ind.objectives);
    record.t_per_change.push_back(t);
    record.igd_per_change.push_back(igd(front.points, approximation));
  }
  record.migd = migd(record.igd_per_change);
  return record;
}

}  // namespace

const char* algo_name(AlgoVariant algo) {
  switch (algo) {
    case AlgoVariant::Nsga2: return "NSGA2";
    case AlgoVariant::Mopso: return "MOPSO";
    case AlgoVariant::IsvmNsga2: return "ISVM-NSGA2";
    case AlgoVariant::IsvmMopso: return "ISVM-MOPSO";
  }
  throw std::invalid_argument("unknown algorithm variant");
}

AlgoVariant algo_from_name(const std::string& name) {
  for (AlgoVariant algo : {AlgoVariant::Nsga2, AlgoVariant::Mopso,
                           AlgoVariant::IsvmNsga2, AlgoVariant::IsvmMopso})
    if (name == algo_name(algo)) return algo;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::uint64_t run_seed_for(const ExperimentSpec& spec, const std::string& problem,
                           const std::string& config, AlgoVariant algo,
                           int seed_index) {
  std::uint64_t h = hash_mix(spec.base_seed, std::string_view("run"));
  h = hash_mix(h, std::string_view(problem));
  h = hash_mix(h, std::string_view(config));
  h = hash_mix(h, std::string_view(algo_name(algo)));
  return hash_mix(h, static_cast<std::uint64_t>(seed_index));
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec) {
  if (spec.problems.empty() || spec.configs.empty() || spec.algos.empty())
    throw std::invalid_argument("run_experiment: empty grid axis");
  if (spec.seeds <= 0)
    throw std::invalid_argument("run_experiment: need at least one seed");

  struct Cell {
    BenchmarkId problem;
    std::string config;
    AlgoVariant algo;
    int seed_index;
  };
  std::vector<Cell> cells;
  for (BenchmarkId problem : spec.problems)
    for (const std::string& config : spec.configs)
      for (AlgoVariant algo : spec.algos)
        for (int seed = 0; seed < spec.seeds; ++seed)
          cells.push_back({problem, config, algo, seed});

  std::vector<RunRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size() || failed.load()) return;
      try {
        records[i] = run_cell(spec, cells[i].problem, cells[i].config,
                              cells[i].algo, cells[i].seed_index);
      } catch (const std::exception& e) {
        std::scoped_lock lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = e.what();
        return;
      }
    }
  };
  unsigned workers = spec.workers > 0 ? static_cast<unsigned>(spec.workers)
                                      : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, cells.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& thread : pool) thread.join();
  if (failed.load()) throw std::runtime_error("run_experiment: " + failure);
  return records;
}

void write_results(const std::vector<RunRecord>& records,
                   const ExperimentSpec& spec, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw std::runtime_error("write_results: cannot create " + out_dir);

  std::vector<const RunRecord*> ordered;
  ordered.reserve(records.size());
  for (const RunRecord& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const RunRecord* a, const RunRecord* b) {
              const std::string_view algo_a = algo_name(a->algo);
              const std::string_view algo_b = algo_name(b->algo);
              return std::tie(a->problem, a->config, algo_a, a->seed_index) <
                     std::tie(b->problem, b->config, algo_b, b->seed_index);
            });

  auto open = [&](const std::string& name) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("write_results: cannot open " + name);
    return out;
  };

  for (const RunRecord* r : ordered) {
    std::ofstream out = open("trace_" + r->problem + "_" + r->config + "_" +
                             algo_name(r->algo) + "_s" +
                             std::to_string(r->seed_index) + ".csv");
    out << "change,t,igd\n";
    for (std::size_t k = 0; k < r->igd_per_change.size(); ++k)
      out << k << ',' << format_double(r->t_per_change[k]) << ','
          << format_double(r->igd_per_change[k]) << '\n';
  }

  {
    std::ofstream out = open("summary.csv");
    out << "problem,config,algorithm,seed,migd,wallclock_s\n";
    for (const RunRecord* r : ordered) {
      char wall[32];
      std::snprintf(wall, sizeof wall, "%.6f", r->wallclock_s);
      out << r->problem << ',' << r->config << ',' << algo_name(r->algo) << ','
          << r->seed_index << ',' << format_double(r->migd) << ',' << wall
          << '\n';
    }
  }

  {
    // DMIGD: median MIGD across seeds, then mean across configurations.
    std::ofstream out = open("aggregate.csv");
    out << "problem,algorithm,dmigd\n";
    std::vector<std::pair<std::string, AlgoVariant>> groups;
    for (const RunRecord* r : ordered) {
      std::pair<std::string, AlgoVariant> key{r->problem, r->algo};
      if (std::find(groups.begin(), groups.end(), key) == groups.end())
        groups.push_back(key);
    }
    for (const auto& [problem, algo] : groups) {
      std::vector<std::string> configs;
      for (const RunRecord* r : ordered)
        if (r->problem == problem && r->algo == algo &&
            std::find(configs.begin(), configs.end(), r->config) == configs.end())
          configs.push_back(r->config);
      std::vector<double> migd_per_config;
      for (const std::string& config : configs) {
        std::vector<double> seeds;
        for (const RunRecord* r : ordered)
          if (r->problem == problem && r->algo == algo && r->config == config)
            seeds.push_back(r->migd);
        migd_per_config.push_back(median(std::move(seeds)));
      }
      out << problem << ',' << algo_name(algo) << ','
          << format_double(dmigd(migd_per_config)) << '\n';
    }
  }

  {
    nlohmann::json j;
    std::vector<std::string> problem_names;
    for (BenchmarkId id : spec.problems)
      problem_names.push_back(benchmark_info(id).name);
    std::vector<std::string> algo_names;
    for (AlgoVariant algo : spec.algos) algo_names.push_back(algo_name(algo));
    j["problems"] = problem_names;
    j["configs"] = spec.configs;
    j["algorithms"] = algo_names;
    j["seeds"] = spec.seeds;
    j["base_seed"] = spec.base_seed;
    j["population_size"] = spec.population_size;
    j["generations_per_change"] = spec.generations_per_change;
    j["initial_generations"] = spec.initial_generations;
    j["candidate_multiplier"] = spec.candidate_multiplier;
    j["svm_regularization"] = spec.svm_regularization;
    j["svm_scale"] = spec.svm_scale;
    j["reference_points"] = spec.reference_points;
    j["workers"] = spec.workers;
    std::ofstream out = open("spec.json");
    out << j.dump(2) << '\n';
  }
}

}  // namespace dmoea
