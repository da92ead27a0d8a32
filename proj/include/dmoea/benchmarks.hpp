#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dmoea/dmop.hpp"

namespace dmoea {

enum class BenchmarkId { FDA4, FDA5, DIMP2, dMOP2, HE7, HE9 };

/// How the optimum moves when t changes: the optimal decision vectors
/// (PosOnly), both decision vectors and front (Both), or the front alone
/// (PofOnly).
enum class ChangeType { PosOnly, Both, PofOnly };

struct BenchmarkInfo {
  BenchmarkId id;
  const char* name;
  int dimension;
  int objective_count;
  ChangeType change_type;
};

const std::vector<BenchmarkInfo>& all_benchmarks();
BenchmarkInfo benchmark_info(BenchmarkId id);
BenchmarkId benchmark_from_name(const std::string& name);

/// Constructs the time-dependent evaluator for one benchmark.
DynamicProblem make_problem(BenchmarkId id);

/// The standard environment schedules C1..C8. Errors on unknown names.
const std::vector<EnvironmentConfig>& all_environment_configs();
EnvironmentConfig environment_config(const std::string& name);

/// A sampled true Pareto front at a fixed time index.
struct ReferenceFront {
  double t = 0.0;
  std::vector<ObjectiveVector> points;
};

/// Samples `count` points from the analytic Pareto-optimal front at time t.
/// Two-objective fronts are sampled uniformly in the front parameter;
/// three-objective fronts use a cell-centered grid on the parameter square.
ReferenceFront sample_reference_front(BenchmarkId id, double t, std::size_t count);

/// Writes a front as CSV: header f1,...,fm then one row per point
/// ('.' decimal separator, comma delimiter, LF line endings).
void write_front_csv(const ReferenceFront& front, std::ostream& out);

}  // namespace dmoea
