// Acceptance gate: every check below must pass for the build to be
// considered complete. Each criterion prints exactly one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dmoea/benchmarks.hpp"
#include "dmoea/experiment.hpp"
#include "dmoea/metrics.hpp"
#include "dmoea/optimizers.hpp"
#include "dmoea/rng.hpp"
#include "dmoea/seeding.hpp"
#include "dmoea/svm.hpp"
#include "oracles.hpp"

using namespace dmoea;
namespace fs = std::filesystem;

namespace {

bool all_passed = true;

void report(int criterion, bool ok, const std::string& description) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              description.c_str());
  std::fflush(stdout);
  all_passed = all_passed && ok;
}

std::vector<LabeledSample> random_dataset(RandomSource& rng, std::size_t n,
                                          std::size_t dim) {
  std::vector<LabeledSample> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    samples[i].x.resize(dim);
    for (double& v : samples[i].x) v = rng.uniform(-1.0, 1.0);
    samples[i].y = rng.uniform01() < 0.5 ? 1 : -1;
  }
  samples[0].y = 1;
  if (n > 1) samples[1].y = -1;
  return samples;
}

// ---------------------------------------------------------------- 1 and 2

struct SvmSweepOutcome {
  int datasets = 0;
  int order_mismatches = 0;    // criterion 1
  double worst_probe_gap = 0.0;
  int kkt_violations = 0;      // criterion 2
  double elapsed_s = 0.0;
};

void check_kkt_once(const KernelMachine& machine, int* violations) {
  const KktReport rep = kkt_partition(machine);
  const double c = machine.config().regularization;
  const double a_tol = 1e-9 * std::max(1.0, c);
  for (std::size_t i = 0; i < machine.size(); ++i) {
    const double a = machine.alphas()[i];
    switch (rep.tags[i]) {
      case KktSet::Margin:
        if (!(a > -a_tol && a < c + a_tol && std::fabs(rep.g[i]) <= 1e-6))
          ++*violations;
        break;
      case KktSet::Bounded:
        if (!(std::fabs(a - c) <= a_tol && rep.g[i] <= 1e-6)) ++*violations;
        break;
      case KktSet::Remaining:
        if (!(std::fabs(a) <= a_tol && rep.g[i] >= -1e-6)) ++*violations;
        break;
    }
  }
  if (std::fabs(rep.h) > 1e-8) ++*violations;
}

SvmSweepOutcome svm_sweep() {
  const auto started = std::chrono::steady_clock::now();
  SvmSweepOutcome out;
  RandomSource rng(hash_mix(20150915, "acceptance-svm"));
  const double c_values[] = {1.0, 10.0, 100.0};
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + rng.index(59);   // 2..60
    const std::size_t dim = 2 + rng.index(11); // 2..12
    std::vector<LabeledSample> samples = random_dataset(rng, n, dim);
    KernelConfig config;
    config.regularization = c_values[round % 3];
    config.scale = default_scale_grid(samples)[2];  // median pairwise distance

    // Insert in the given order, checking the KKT partition as we go.
    KernelMachine ordered(config);
    for (const LabeledSample& s : samples) {
      ordered.increment(s);
      check_kkt_once(ordered, &out.kkt_violations);
    }

    // Insert in a shuffled order; the trained classifier must agree.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.index(i)]);
    KernelMachine shuffled(config);
    for (std::size_t i : perm) shuffled.increment(samples[i]);
    check_kkt_once(shuffled, &out.kkt_violations);

    bool mismatch = false;
    for (std::size_t i = 0; i < n; ++i)
      if (shuffled.tags()[i] != ordered.tags()[perm[i]]) mismatch = true;
    for (int probe = 0; probe < 50; ++probe) {
      DecisionVector x(dim);
      for (double& v : x) v = rng.uniform(-1.2, 1.2);
      const double gap =
          std::fabs(ordered.decision_value(x) - shuffled.decision_value(x));
      out.worst_probe_gap = std::max(out.worst_probe_gap, gap);
      if (gap > 1e-4) mismatch = true;
    }
    if (mismatch) ++out.order_mismatches;
    ++out.datasets;
  }
  out.elapsed_s = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  return out;
}

// --------------------------------------------------------------------- 3

bool igd_against_oracle() {
  RandomSource rng(hash_mix(20150915, "acceptance-igd"));
  for (int round = 0; round < 1000; ++round) {
    const std::size_t refs = 1 + rng.index(40);
    const std::size_t approx = 1 + rng.index(40);
    const std::size_t m = 2 + rng.index(2);
    std::vector<ObjectiveVector> reference(refs), approximation(approx);
    for (auto& p : reference) {
      p.resize(m);
      for (double& v : p) v = rng.uniform(0.0, 5.0);
    }
    for (auto& p : approximation) {
      p.resize(m);
      for (double& v : p) v = rng.uniform(0.0, 5.0);
    }
    const double ours = igd(reference, approximation);
    const double expected = oracle::igd(reference, approximation);
    if (std::fabs(ours - expected) > 1e-12) return false;
  }
  return true;
}

// --------------------------------------------------------------------- 4

bool sort_against_oracle() {
  RandomSource rng(hash_mix(20150915, "acceptance-sort"));
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 1 + rng.index(50);
    const std::size_t m = 2 + rng.index(2);
    std::vector<Individual> pop(n);
    for (auto& ind : pop) {
      ind.objectives.resize(m);
      for (double& v : ind.objectives) v = static_cast<double>(rng.index(6));
    }
    auto ours = nondominated_sort(pop);
    auto expected = oracle::peel_fronts(pop);
    if (ours.size() != expected.size()) return false;
    for (std::size_t k = 0; k < ours.size(); ++k) {
      std::sort(ours[k].begin(), ours[k].end());
      std::sort(expected[k].begin(), expected[k].end());
      if (ours[k] != expected[k]) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------------- 5

bool degenerate_filter_matches_restart() {
  const DynamicProblem problem = make_problem(BenchmarkId::FDA4);
  const EnvironmentConfig config = environment_config("C1");
  OptimizerConfig opt;
  opt.population_size = 6;
  opt.generations = 2;
  SeedingConfig seeding;
  KernelMachine stub(KernelConfig{1.0, 10.0});
  stub.increment({DecisionVector(static_cast<std::size_t>(problem.dimension), 0.5), 1});
  for (OptimizerKind kind : {OptimizerKind::Nsga2, OptimizerKind::Mopso}) {
    const DynamicRunResult filtered =
        run_dynamic(problem, config, kind, opt, seeding, SeedingMode::Classifier,
                    31415, 0, &stub);
    const DynamicRunResult restarted = run_dynamic(
        problem, config, kind, opt, seeding, SeedingMode::RandomRestart, 31415);
    if (filtered.pos_per_change.size() != restarted.pos_per_change.size())
      return false;
    for (std::size_t k = 0; k < filtered.pos_per_change.size(); ++k) {
      const auto& a = filtered.pos_per_change[k];
      const auto& b = restarted.pos_per_change[k];
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].decision != b[i].decision || a[i].objectives != b[i].objectives)
          return false;
    }
  }
  return true;
}

// ----------------------------------------------------------------- 6 and 7

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Desk-scale study: pop 100, 20 changes at the schedule's own generation
// budget (50 generations to settle the first environment), configs C1 and
// C5, 5 seeds per cell, run through the canonical experiment pipeline.
std::vector<RunRecord> run_desk_study() {
  ExperimentSpec spec;
  spec.problems = {BenchmarkId::FDA4, BenchmarkId::FDA5, BenchmarkId::dMOP2};
  spec.configs = {"C1", "C5"};
  spec.algos = {AlgoVariant::Nsga2, AlgoVariant::IsvmNsga2};
  std::vector<RunRecord> records = run_experiment(spec);

  // The swarm variants join on FDA4 only, for the sanity window check.
  ExperimentSpec swarm = spec;
  swarm.problems = {BenchmarkId::FDA4};
  swarm.algos = {AlgoVariant::Mopso, AlgoVariant::IsvmMopso};
  std::vector<RunRecord> extra = run_experiment(swarm);
  records.insert(records.end(), extra.begin(), extra.end());
  return records;
}

double median_migd(const std::vector<RunRecord>& records,
                   const std::string& problem, const std::string& config,
                   AlgoVariant algo) {
  std::vector<double> values;
  for (const RunRecord& record : records)
    if (record.problem == problem && record.algo == algo &&
        (config.empty() || record.config == config))
      values.push_back(record.migd);
  return median_of(values);
}

// --------------------------------------------------------------------- 8

bool swarm_archive_property() {
  const DynamicProblem problem = make_problem(BenchmarkId::FDA4);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RandomSource rng(hash_mix(seed, "acceptance-swarm"));
    std::vector<DecisionVector> xs(20);
    for (auto& x : xs) {
      x.resize(static_cast<std::size_t>(problem.dimension));
      for (std::size_t d = 0; d < x.size(); ++d)
        x[d] = rng.uniform(problem.lower[d], problem.upper[d]);
    }
    OptimizerConfig config;
    config.population_size = 20;
    config.generations = 10;
    config.seed = seed;
    bool ok = true;
    GenerationHooks hooks;
    hooks.archive = [&](int, const std::vector<Individual>& archive) {
      if (archive.empty() || archive.size() > 40) ok = false;
      for (const Individual& a : archive)
        for (const Individual& b : archive)
          if (oracle::dominates(a.objectives, b.objectives)) ok = false;
    };
    run_optimizer(OptimizerKind::Mopso, problem, 0.0,
                  evaluate_population(problem, 0.0, xs), config, &hooks);
    if (!ok) return false;
  }
  return true;
}

// --------------------------------------------------------------------- 9

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string mask_wallclock(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) {
      const auto cut = line.rfind(',');
      if (cut != std::string::npos) line.resize(cut);
    }
    header = false;
    out << line << '\n';
  }
  return out.str();
}

bool experiment_rerun_is_byte_identical() {
  ExperimentSpec spec;
  spec.problems = {BenchmarkId::dMOP2, BenchmarkId::FDA4};
  spec.configs = {"C1"};
  spec.algos = {AlgoVariant::Nsga2, AlgoVariant::IsvmNsga2};
  spec.seeds = 2;
  spec.population_size = 8;
  spec.generations_per_change = 2;
  spec.reference_points = 60;
  spec.workers = 3;

  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const fs::path base = fs::temp_directory_path() /
                        ("dmoea_acceptance_" +
                         std::to_string(static_cast<unsigned long long>(stamp)));
  const fs::path first = base / "first";
  const fs::path second = base / "second";
  bool ok = true;
  try {
    write_results(run_experiment(spec), spec, first.string());
    write_results(run_experiment(spec), spec, second.string());
    for (const auto& entry : fs::directory_iterator(first)) {
      const std::string name = entry.path().filename().string();
      if (!fs::exists(second / name)) ok = false;
      std::string a = slurp(entry.path());
      std::string b = slurp(second / name);
      if (name == "summary.csv") {
        a = mask_wallclock(a);
        b = mask_wallclock(b);
      }
      if (a != b) ok = false;
    }
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(second))
      ++files;
    // 2 problems x 1 config x 2 algos x 2 seeds traces + 3 other files.
    if (files != 8 + 3) ok = false;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "criterion 9 raised: %s\n", e.what());
    ok = false;
  }
  fs::remove_all(base);
  return ok;
}

}  // namespace

int main() {
  try {
    const SvmSweepOutcome svm = svm_sweep();
    {
      char text[256];
      std::snprintf(text, sizeof text,
                    "incremental and batch training agree on %d random "
                    "datasets (worst probe gap %.3g, %.1fs)",
                    svm.datasets, svm.worst_probe_gap, svm.elapsed_s);
      report(1, svm.order_mismatches == 0 && svm.elapsed_s < 60.0, text);
    }
    {
      char text[160];
      std::snprintf(text, sizeof text,
                    "KKT partition is exact after every insertion (%d "
                    "violations)",
                    svm.kkt_violations);
      report(2, svm.kkt_violations == 0, text);
    }
    report(3, igd_against_oracle(),
           "IGD matches the double-loop reference within 1e-12 on 1000 sets");
    report(4, sort_against_oracle(),
           "nondominated sort equals iterative peeling on 500 populations");
    report(5, degenerate_filter_matches_restart(),
           "an accept-everything filter reproduces random restarts bitwise");

    const std::vector<RunRecord> desk = run_desk_study();
    {
      // Per function, pooled over both change schedules and all seeds.
      bool ok = true;
      std::string detail;
      double dmop2_gain = 0.0;
      for (const char* problem : {"FDA4", "FDA5", "dMOP2"}) {
        const double plain =
            median_migd(desk, problem, "", AlgoVariant::Nsga2);
        const double seeded =
            median_migd(desk, problem, "", AlgoVariant::IsvmNsga2);
        if (!(seeded <= plain)) ok = false;
        const double gain = plain > 0.0 ? (plain - seeded) / plain : 0.0;
        if (std::string(problem) == "dMOP2") dmop2_gain = gain;
        char part[96];
        std::snprintf(part, sizeof part, " %s %.4g->%.4g (%+.1f%%)", problem,
                      plain, seeded, 100.0 * gain);
        detail += part;
      }
      if (!(dmop2_gain >= 0.20)) ok = false;
      char text[384];
      std::snprintf(text, sizeof text,
                    "classifier seeding lowers median MIGD on every function "
                    "(%s); dMOP2 improvement >= 20%%",
                    detail.c_str());
      report(6, ok, text);
    }
    {
      bool ok = true;
      std::string detail;
      for (AlgoVariant algo : {AlgoVariant::Nsga2, AlgoVariant::IsvmNsga2,
                               AlgoVariant::Mopso, AlgoVariant::IsvmMopso}) {
        const double value = median_migd(desk, "FDA4", "", algo);
        if (!(value >= 0.02 && value <= 1.0)) ok = false;
        char part[64];
        std::snprintf(part, sizeof part, " %s %.4g", algo_name(algo), value);
        detail += part;
      }
      char text[256];
      std::snprintf(text, sizeof text,
                    "every algorithm lands in the plausible FDA4 MIGD window "
                    "[0.02, 1.0] (%s)",
                    detail.c_str());
      report(7, ok, text);
    }
    report(8, swarm_archive_property(),
           "swarm archive stays nondominated and within capacity on 5 runs");
    report(9, experiment_rerun_is_byte_identical(),
           "experiment reruns byte-identical apart from wall time");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 2;
  }
  return all_passed ? 0 : 1;
}
