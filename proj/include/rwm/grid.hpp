#pragma once

#include <cstddef>
#include <vector>

namespace rwm {

// Uniform time grid 0 = t_0 < t_1 < ... < t_intervals = horizon.
struct TimeGrid {
  double horizon = 1.0;
  std::size_t intervals = 1;

  double step() const { return horizon / static_cast<double>(intervals); }
  double at(std::size_t j) const {
    return j == intervals ? horizon : static_cast<double>(j) * step();
  }
  std::size_t points() const { return intervals + 1; }
  std::vector<double> times() const;
  void validate() const;
};

// A real-valued path sampled on a grid.
struct RealPath {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

}  // namespace rwm
