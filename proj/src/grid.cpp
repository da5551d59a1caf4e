#include "rwm/grid.hpp"

#include <cmath>
#include <string>

#include "rwm/errors.hpp"

namespace rwm {

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(points());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = at(j);
  return t;
}

void TimeGrid::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ConfigError("grid horizon must be positive and finite, got " + std::to_string(horizon));
  }
  if (intervals == 0) throw ConfigError("grid needs at least one interval");
}

}  // namespace rwm
