#include "dmoea/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmoea {

namespace {

double mean(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty input");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

double igd(const std::vector<ObjectiveVector>& reference,
           const std::vector<ObjectiveVector>& approximation) {
  if (reference.empty()) throw std::invalid_argument("igd: empty reference front");
  if (approximation.empty()) throw std::invalid_argument("igd: empty approximation");
  double total = 0.0;
  for (const ObjectiveVector& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const ObjectiveVector& a : approximation) {
      if (a.size() != r.size())
        throw std::invalid_argument("igd: objective dimension mismatch");
      double d2 = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k) {
        const double diff = r[k] - a[k];
        d2 += diff * diff;
      }
      best = std::min(best, d2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

double migd(const std::vector<double>& igd_per_change) {
  return mean(igd_per_change, "migd");
}

double dmigd(const std::vector<double>& migd_per_config) {
  return mean(migd_per_config, "dmigd");
}

}  // namespace dmoea
