#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dmoea/benchmarks.hpp"
#include "dmoea/experiment.hpp"

namespace {

int run_experiment_command(const std::vector<std::string>& problems,
                           const std::vector<std::string>& configs,
                           const std::vector<std::string>& algos,
                           const dmoea::ExperimentSpec& base, bool paper_scale,
                           bool pop_given, bool configs_given,
                           const std::string& out_dir) {
  dmoea::ExperimentSpec spec = base;
  for (const std::string& name : problems)
    spec.problems.push_back(dmoea::benchmark_from_name(name));
  for (const std::string& name : algos)
    spec.algos.push_back(dmoea::algo_from_name(name));
  spec.configs = configs;
  for (const std::string& name : spec.configs)
    dmoea::environment_config(name);  // validate early
  if (paper_scale) {
    if (!pop_given) spec.population_size = 200;
    if (!configs_given) {
      spec.configs.clear();
      for (const dmoea::EnvironmentConfig& config :
           dmoea::all_environment_configs())
        spec.configs.push_back(config.name);
    }
  }
  const std::vector<dmoea::RunRecord> records = dmoea::run_experiment(spec);
  dmoea::write_results(records, spec, out_dir);
  std::printf("wrote %zu runs to %s\n", records.size(), out_dir.c_str());
  return 0;
}

int ref_front_command(const std::string& problem, double t, std::size_t count,
                      const std::string& out_path) {
  const dmoea::BenchmarkId id = dmoea::benchmark_from_name(problem);
  if (count == 0)
    count = dmoea::benchmark_info(id).objective_count == 2 ? 500 : 990;
  const dmoea::ReferenceFront front = dmoea::sample_reference_front(id, t, count);
  if (out_path.empty() || out_path == "-") {
    dmoea::write_front_csv(front, std::cout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "cannot open %s\n", out_path.c_str());
    return 3;
  }
  dmoea::write_front_csv(front, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dynamic multi-objective benchmark runner with classifier-seeded "
      "reinitialization"};
  app.require_subcommand(1);

  // run: execute an experiment grid and write CSV results.
  CLI::App* run = app.add_subcommand("run", "run an experiment grid");
  std::vector<std::string> problems{"FDA4", "FDA5", "DIMP2",
                                    "dMOP2", "HE7",  "HE9"};
  std::vector<std::string> configs{"C1", "C5"};
  std::vector<std::string> algos{"NSGA2", "MOPSO", "ISVM-NSGA2", "ISVM-MOPSO"};
  dmoea::ExperimentSpec spec;
  std::string out_dir;
  bool paper_scale = false;
  run->add_option("--problems", problems, "benchmark functions")
      ->delimiter(',');
  auto* configs_opt =
      run->add_option("--configs", configs, "environment schedules (C1..C8)")
          ->delimiter(',');
  run->add_option("--algos", algos, "algorithm variants")->delimiter(',');
  run->add_option("--seeds", spec.seeds, "number of independent runs per cell");
  auto* pop_opt =
      run->add_option("--pop", spec.population_size, "population size");
  run->add_option("--gens-per-change", spec.generations_per_change,
                  "optimizer generations per environment "
                  "(0 = the schedule's change period)");
  run->add_option("--initial-gens", spec.initial_generations,
                  "generation budget for the first environment only "
                  "(0 = same as later environments)");
  run->add_option("--candidate-mult", spec.candidate_multiplier,
                  "random candidates drawn per requested seed");
  run->add_option("--svm-l", spec.svm_regularization,
                  "box constraint of the classifier's dual problem");
  run->add_option("--svm-scale", spec.svm_scale,
                  "kernel scale (default: cross-validated grid search)");
  run->add_option("--ref-points", spec.reference_points,
                  "reference front sample size (default 500/990)");
  run->add_option("--base-seed", spec.base_seed, "seed of the whole grid");
  run->add_option("--workers", spec.workers, "worker threads (0 = hardware)");
  run->add_flag("--full-paper-scale", paper_scale,
                "population 200 and all configurations C1..C8");
  run->add_option("--out", out_dir, "output directory")->required();

  // ref-front: sample an analytic Pareto front as CSV.
  CLI::App* ref = app.add_subcommand("ref-front", "sample a true Pareto front");
  std::string ref_problem;
  double ref_t = 0.0;
  std::size_t ref_count = 0;
  std::string ref_out;
  ref->add_option("--problem", ref_problem, "benchmark function")->required();
  ref->add_option("--t", ref_t, "time index")->required();
  ref->add_option("--count", ref_count, "points to sample (0 = default)");
  ref->add_option("--out", ref_out, "output file ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed())
      return run_experiment_command(problems, configs, algos, spec, paper_scale,
                                    pop_opt->count() > 0,
                                    configs_opt->count() > 0, out_dir);
    return ref_front_command(ref_problem, ref_t, ref_count, ref_out);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
