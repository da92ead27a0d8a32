#include "dmoea/benchmarks.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace dmoea {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Severity of the change at time index t, shared by several benchmarks.
double sine_shift(double t) { return std::sin(0.5 * kPi * t); }

// Time-dependent exponent of the two-objective front shape.
double shape_exponent(double t) { return 0.75 * sine_shift(t) + 1.25; }

ObjectiveVector eval_fda4(const DecisionVector& x, double t) {
  const double G = std::fabs(sine_shift(t));
  double g = 0.0;
  for (std::size_t i = 2; i < x.size(); ++i) g += (x[i] - G) * (x[i] - G);
  const double c1 = std::cos(0.5 * kPi * x[0]), s1 = std::sin(0.5 * kPi * x[0]);
  const double c2 = std::cos(0.5 * kPi * x[1]), s2 = std::sin(0.5 * kPi * x[1]);
  return {(1 + g) * c1 * c2, (1 + g) * c1 * s2, (1 + g) * s1};
}

ObjectiveVector eval_fda5(const DecisionVector& x, double t) {
  const double G = std::fabs(sine_shift(t));
  const double F = 1.0 + 100.0 * std::pow(sine_shift(t), 4.0);
  double g = G;
  for (std::size_t i = 2; i < x.size(); ++i) g += (x[i] - G) * (x[i] - G);
  const double y1 = std::pow(x[0], F), y2 = std::pow(x[1], F);
  const double c1 = std::cos(0.5 * kPi * y1), s1 = std::sin(0.5 * kPi * y1);
  const double c2 = std::cos(0.5 * kPi * y2), s2 = std::sin(0.5 * kPi * y2);
  return {(1 + g) * c1 * c2, (1 + g) * c1 * s2, (1 + g) * s1};
}

ObjectiveVector eval_dimp2(const DecisionVector& x, double t) {
  const std::size_t n = x.size();
  const double f1 = x[0];
  double g = 1.0 + 2.0 * static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double phase = 2.0 * kPi * (static_cast<double>(i + 1) /
                                      static_cast<double>(n + 1));
    const double Gi = std::pow(std::sin(0.5 * kPi * t + phase), 2.0);
    const double yi = x[i] - Gi;
    g += yi * yi - 2.0 * std::cos(3.0 * kPi * yi);
  }
  return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

ObjectiveVector eval_dmop2(const DecisionVector& x, double t) {
  const double G = sine_shift(t);
  const double H = shape_exponent(t);
  const double f1 = x[0];
  double g = 1.0;
  for (std::size_t i = 1; i < x.size(); ++i) g += 9.0 * (x[i] - G) * (x[i] - G);
  return {f1, g * (1.0 - std::pow(f1 / g, H))};
}

// Shared body of the two variable-linkage benchmarks: odd-indexed tail
// variables contribute to f1, even-indexed ones to g, each through `term`
// applied to the deviation from the linkage curve `link(j)`.
template <typename Link, typename Term>
ObjectiveVector eval_linkage(const DecisionVector& x, double t, double g_base,
                             Link link, Term term) {
  const std::size_t n = x.size();
  double sum_odd = 0.0, sum_even = 0.0;
  std::size_t count_odd = 0, count_even = 0;
  for (std::size_t j = 2; j <= n; ++j) {  // one-based variable index
    const double y = x[j - 1] - link(j);
    if (j % 2 == 1) {
      sum_odd += term(y);
      ++count_odd;
    } else {
      sum_even += term(y);
      ++count_even;
    }
  }
  const double f1 = x[0] + 2.0 * sum_odd / static_cast<double>(count_odd);
  const double g = g_base + 2.0 * sum_even / static_cast<double>(count_even);
  return {f1, g * (1.0 - std::pow(f1 / g, shape_exponent(t)))};
}

ObjectiveVector eval_he7(const DecisionVector& x, double t) {
  const std::size_t n = x.size();
  auto link = [&](std::size_t j) {
    const double e = 0.5 * (1.0 + 3.0 * static_cast<double>(j - 2) /
                                      static_cast<double>(n - 2));
    return std::pow(x[0], e);
  };
  auto term = [](double y) { return 4.0 * y * y - std::cos(8.0 * kPi * y) + 1.0; };
  return eval_linkage(x, t, 2.0 - std::sqrt(x[0]), link, term);
}

ObjectiveVector eval_he9(const DecisionVector& x, double t) {
  const std::size_t n = x.size();
  auto link = [&](std::size_t j) {
    return std::sin(6.0 * kPi * x[0] +
                    static_cast<double>(j) * kPi / static_cast<double>(n));
  };
  auto term = [](double y) { return y * y; };
  return eval_linkage(x, t, 2.0 - x[0] * x[0], link, term);
}

const std::vector<BenchmarkInfo> kBenchmarks = {
    {BenchmarkId::FDA4, "FDA4", 12, 3, ChangeType::PosOnly},
    {BenchmarkId::FDA5, "FDA5", 12, 3, ChangeType::Both},
    {BenchmarkId::DIMP2, "DIMP2", 10, 2, ChangeType::PosOnly},
    {BenchmarkId::dMOP2, "dMOP2", 10, 2, ChangeType::Both},
    {BenchmarkId::HE7, "HE7", 10, 2, ChangeType::PofOnly},
    {BenchmarkId::HE9, "HE9", 10, 2, ChangeType::PofOnly},
};

const std::vector<EnvironmentConfig> kConfigs = {
    {"C1", 10, 5, 100},   {"C2", 10, 10, 200}, {"C3", 10, 25, 500},
    {"C4", 10, 50, 1000}, {"C5", 1, 10, 200},  {"C6", 1, 50, 1000},
    {"C7", 20, 10, 200},  {"C8", 20, 50, 1000},
};

using Evaluator = ObjectiveVector (*)(const DecisionVector&, double);

Evaluator evaluator_for(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::FDA4: return eval_fda4;
    case BenchmarkId::FDA5: return eval_fda5;
    case BenchmarkId::DIMP2: return eval_dimp2;
    case BenchmarkId::dMOP2: return eval_dmop2;
    case BenchmarkId::HE7: return eval_he7;
    case BenchmarkId::HE9: return eval_he9;
  }
  throw std::invalid_argument("unknown benchmark id");
}

// Points on the unit-sphere octant, cell-centered over the parameter square
// so no two grid points collapse onto a pole.
std::vector<ObjectiveVector> sphere_octant(std::size_t count, double radius) {
  const auto rows = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(count))));
  const std::size_t cols = (count + rows - 1) / rows;
  std::vector<ObjectiveVector> points;
  points.reserve(count);
  for (std::size_t i = 0; i < rows && points.size() < count; ++i) {
    for (std::size_t j = 0; j < cols && points.size() < count; ++j) {
      const double a = (static_cast<double>(i) + 0.5) / static_cast<double>(rows);
      const double b = (static_cast<double>(j) + 0.5) / static_cast<double>(cols);
      const double c1 = std::cos(0.5 * kPi * a), s1 = std::sin(0.5 * kPi * a);
      const double c2 = std::cos(0.5 * kPi * b), s2 = std::sin(0.5 * kPi * b);
      points.push_back({radius * c1 * c2, radius * c1 * s2, radius * s1});
    }
  }
  return points;
}

// Two-objective front curves, f2 as a function of f1 = s in [0, 1].
std::vector<ObjectiveVector> curve(std::size_t count, double (*f2)(double, double),
                                   double t) {
  std::vector<ObjectiveVector> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(count - 1);
    points.push_back({s, f2(s, t)});
  }
  return points;
}

double front_dimp2(double s, double) { return 1.0 - std::sqrt(s); }

double front_dmop2(double s, double t) {
  const double G = sine_shift(t);
  const double c = std::fmin(std::fmax(G, 0.0), 1.0);
  const double g = 1.0 + 81.0 * (c - G) * (c - G);  // 9 (n-1) with n = 10
  return g * (1.0 - std::pow(s / g, shape_exponent(t)));
}

double front_he7(double s, double t) {
  const double g = 2.0 - std::sqrt(s);
  return g * (1.0 - std::pow(s / g, shape_exponent(t)));
}

double front_he9(double s, double t) {
  const double g = 2.0 - s * s;
  return g * (1.0 - std::pow(s / g, shape_exponent(t)));
}

}  // namespace

const std::vector<BenchmarkInfo>& all_benchmarks() { return kBenchmarks; }

BenchmarkInfo benchmark_info(BenchmarkId id) {
  for (const BenchmarkInfo& info : kBenchmarks)
    if (info.id == id) return info;
  throw std::invalid_argument("unknown benchmark id");
}

BenchmarkId benchmark_from_name(const std::string& name) {
  for (const BenchmarkInfo& info : kBenchmarks)
    if (name == info.name) return info.id;
  throw std::invalid_argument("unknown benchmark: " + name);
}

DynamicProblem make_problem(BenchmarkId id) {
  const BenchmarkInfo info = benchmark_info(id);
  DynamicProblem problem;
  problem.name = info.name;
  problem.dimension = info.dimension;
  problem.objective_count = info.objective_count;
  problem.lower.assign(info.dimension, 0.0);
  problem.upper.assign(info.dimension, 1.0);
  if (id == BenchmarkId::DIMP2)
    for (int i = 1; i < info.dimension; ++i) {
      problem.lower[i] = -2.0;
      problem.upper[i] = 2.0;
    }
  if (id == BenchmarkId::HE7 || id == BenchmarkId::HE9)
    for (int i = 1; i < info.dimension; ++i) {
      problem.lower[i] = -1.0;
      problem.upper[i] = 1.0;
    }
  const Evaluator eval = evaluator_for(id);
  const auto lower = problem.lower, upper = problem.upper;
  const int dimension = problem.dimension;
  const std::string name = problem.name;
  problem.evaluate = [=](const DecisionVector& x, double t) {
    if (x.size() != static_cast<std::size_t>(dimension))
      throw std::invalid_argument(name + ": wrong decision dimension");
    if (!(t >= 0.0)) throw std::domain_error(name + ": negative time index");
    for (int i = 0; i < dimension; ++i)
      if (!(x[i] >= lower[i] && x[i] <= upper[i]))
        throw std::domain_error(name + ": decision vector out of bounds");
    return eval(x, t);
  };
  return problem;
}

const std::vector<EnvironmentConfig>& all_environment_configs() { return kConfigs; }

EnvironmentConfig environment_config(const std::string& name) {
  for (const EnvironmentConfig& config : kConfigs)
    if (config.name == name) return config;
  throw std::invalid_argument("unknown environment config: " + name);
}

ReferenceFront sample_reference_front(BenchmarkId id, double t, std::size_t count) {
  if (count < 2) throw std::invalid_argument("sample_reference_front: count < 2");
  if (!(t >= 0.0)) throw std::domain_error("sample_reference_front: negative t");
  ReferenceFront front;
  front.t = t;
  switch (id) {
    case BenchmarkId::FDA4:
      front.points = sphere_octant(count, 1.0);
      break;
    case BenchmarkId::FDA5:
      front.points = sphere_octant(count, 1.0 + std::fabs(sine_shift(t)));
      break;
    case BenchmarkId::DIMP2:
      front.points = curve(count, front_dimp2, t);
      break;
    case BenchmarkId::dMOP2:
      front.points = curve(count, front_dmop2, t);
      break;
    case BenchmarkId::HE7:
      front.points = curve(count, front_he7, t);
      break;
    case BenchmarkId::HE9:
      front.points = curve(count, front_he9, t);
      break;
  }
  return front;
}

void write_front_csv(const ReferenceFront& front, std::ostream& out) {
  if (front.points.empty())
    throw std::invalid_argument("write_front_csv: empty front");
  const std::size_t m = front.points.front().size();
  for (std::size_t k = 0; k < m; ++k) out << (k ? ",f" : "f") << (k + 1);
  out << '\n';
  char buffer[64];
  for (const ObjectiveVector& p : front.points) {
    for (std::size_t k = 0; k < m; ++k) {
      std::snprintf(buffer, sizeof buffer, "%.17g", p[k]);
      out << (k ? "," : "") << buffer;
    }
    out << '\n';
  }
}

}  // namespace dmoea
