#pragma once

#include <vector>

#include "dmoea/dmop.hpp"

namespace dmoea {

/// Inverted generational distance: mean, over reference points, of the
/// Euclidean distance to the nearest approximation point.
/// Errors on an empty reference set or an empty approximation.
double igd(const std::vector<ObjectiveVector>& reference,
           const std::vector<ObjectiveVector>& approximation);

/// Mean IGD over the change instants of one run. Errors on empty input.
double migd(const std::vector<double>& igd_per_change);

/// Mean MIGD over environment configurations. Errors on empty input.
double dmigd(const std::vector<double>& migd_per_config);

}  // namespace dmoea
