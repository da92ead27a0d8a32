#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "dmoea/benchmarks.hpp"
#include "dmoea/experiment.hpp"
#include "dmoea/metrics.hpp"
#include "dmoea/svm.hpp"

namespace py = pybind11;
using namespace dmoea;

namespace {

std::vector<std::string> benchmark_names() {
  std::vector<std::string> names;
  for (const BenchmarkInfo& info : all_benchmarks()) names.push_back(info.name);
  return names;
}

std::vector<std::string> config_names() {
  std::vector<std::string> names;
  for (const EnvironmentConfig& config : all_environment_configs())
    names.push_back(config.name);
  return names;
}

std::vector<ObjectiveVector> reference_front_py(const std::string& problem,
                                                double t, std::size_t count) {
  const BenchmarkId id = benchmark_from_name(problem);
  if (count == 0)
    count = benchmark_info(id).objective_count == 2 ? 500 : 990;
  return sample_reference_front(id, t, count).points;
}

KernelMachine train_svm(const std::vector<DecisionVector>& xs,
                        const std::vector<int>& ys, double scale,
                        double regularization) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("train_svm: len(xs) != len(ys)");
  std::vector<LabeledSample> samples;
  samples.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    samples.push_back({xs[i], ys[i]});
  return train_batch(samples, KernelConfig{scale, regularization});
}

py::dict record_to_dict(const RunRecord& record) {
  py::dict out;
  out["problem"] = record.problem;
  out["config"] = record.config;
  out["algorithm"] = std::string(algo_name(record.algo));
  out["seed"] = record.seed_index;
  out["t_per_change"] = record.t_per_change;
  out["igd_per_change"] = record.igd_per_change;
  out["migd"] = record.migd;
  out["wallclock_s"] = record.wallclock_s;
  return out;
}

py::list run_experiment_py(const std::vector<std::string>& problems,
                           const std::vector<std::string>& configs,
                           const std::vector<std::string>& algorithms,
                           int seeds, int population_size,
                           int generations_per_change, int initial_generations,
                           int candidate_multiplier,
                           double svm_regularization, double svm_scale,
                           std::size_t reference_points, std::uint64_t base_seed,
                           int workers, const std::string& out_dir) {
  ExperimentSpec spec;
  for (const std::string& name : problems)
    spec.problems.push_back(benchmark_from_name(name));
  spec.configs = configs;
  for (const std::string& name : algorithms)
    spec.algos.push_back(algo_from_name(name));
  spec.seeds = seeds;
  spec.population_size = population_size;
  spec.generations_per_change = generations_per_change;
  spec.initial_generations = initial_generations;
  spec.candidate_multiplier = candidate_multiplier;
  spec.svm_regularization = svm_regularization;
  spec.svm_scale = svm_scale;
  spec.reference_points = reference_points;
  spec.base_seed = base_seed;
  spec.workers = workers;
  std::vector<RunRecord> records;
  {
    py::gil_scoped_release release;
    records = run_experiment(spec);
    if (!out_dir.empty()) write_results(records, spec, out_dir);
  }
  py::list out;
  for (const RunRecord& record : records) out.append(record_to_dict(record));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamic multi-objective optimization with incremental-SVM "
            "population seeding";

  m.def("benchmarks", &benchmark_names,
        "Names of the six dynamic benchmark problems.");
  m.def("environment_configs", &config_names,
        "Names of the change-severity/frequency configurations (C1..C8).");

  py::class_<DynamicProblem>(m, "Problem")
      .def_property_readonly(
          "name", [](const DynamicProblem& p) { return p.name; })
      .def_property_readonly(
          "dimension", [](const DynamicProblem& p) { return p.dimension; })
      .def_property_readonly(
          "objective_count",
          [](const DynamicProblem& p) { return p.objective_count; })
      .def_property_readonly(
          "lower", [](const DynamicProblem& p) { return p.lower; })
      .def_property_readonly(
          "upper", [](const DynamicProblem& p) { return p.upper; })
      .def(
          "evaluate",
          [](const DynamicProblem& p, const DecisionVector& x, double t) {
            return p.evaluate(x, t);
          },
          py::arg("x"), py::arg("t"),
          "Objective vector of decision vector x at time index t.")
      .def(
          "contains",
          [](const DynamicProblem& p, const DecisionVector& x) {
            return p.contains(x);
          },
          py::arg("x"));

  m.def(
      "problem",
      [](const std::string& name) { return make_problem(benchmark_from_name(name)); },
      py::arg("name"), "Builds one of the six benchmark problems by name.");

  m.def("reference_front", &reference_front_py, py::arg("problem"),
        py::arg("t"), py::arg("count") = 0,
        "Samples the true Pareto front at time index t (count=0 picks the "
        "study default: 500 points for two objectives, 990 for three).");

  m.def(
      "time_index",
      [](long generation, const std::string& config) {
        return time_index(generation, environment_config(config));
      },
      py::arg("generation"), py::arg("config"),
      "The time index t active at a generation under a named configuration.");

  m.def(
      "dominates",
      [](const ObjectiveVector& a, const ObjectiveVector& b) {
        return dominates(a, b);
      },
      py::arg("a"), py::arg("b"), "Pareto dominance for minimization.");
  m.def("igd", &igd, py::arg("reference"), py::arg("approximation"),
        "Inverted generational distance from a reference front.");
  m.def("migd", &migd, py::arg("igd_values"), "Mean IGD over a run.");
  m.def("dmigd", &dmigd, py::arg("migd_values"),
        "Mean MIGD over environment configurations.");

  py::class_<KernelMachine>(m, "KernelMachine")
      .def(py::init([](double scale, double regularization) {
             return KernelMachine(KernelConfig{scale, regularization});
           }),
           py::arg("scale") = 1.0, py::arg("regularization") = 10.0)
      .def(
          "increment",
          [](KernelMachine& machine, const DecisionVector& x, int y) {
            machine.increment({x, y});
          },
          py::arg("x"), py::arg("y"),
          "Inserts one labeled sample (y is +1 or -1) and restores the KKT "
          "conditions.")
      .def("decision_value", &KernelMachine::decision_value, py::arg("x"))
      .def("classify", &KernelMachine::classify, py::arg("x"))
      .def_property_readonly("size", &KernelMachine::size)
      .def_property_readonly("bias", &KernelMachine::bias)
      .def_property_readonly("alphas", &KernelMachine::alphas)
      .def("to_json", &KernelMachine::to_json);

  m.def("train_svm", &train_svm, py::arg("xs"), py::arg("ys"),
        py::arg("scale") = 1.0, py::arg("regularization") = 10.0,
        "Trains a classifier by inserting the samples in order.");

  m.def("run_experiment", &run_experiment_py, py::arg("problems"),
        py::arg("configs"), py::arg("algorithms"), py::arg("seeds") = 1,
        py::arg("population_size") = 100,
        py::arg("generations_per_change") = 0,
        py::arg("initial_generations") = 50,
        py::arg("candidate_multiplier") = 200,
        py::arg("svm_regularization") = 10.0, py::arg("svm_scale") = 0.0,
        py::arg("reference_points") = 0, py::arg("base_seed") = 20150915,
        py::arg("workers") = 0, py::arg("out_dir") = std::string(),
        "Runs the experiment grid and returns one record per "
        "(problem, config, algorithm, seed); optionally writes the CSV "
        "outputs to out_dir.");
}
