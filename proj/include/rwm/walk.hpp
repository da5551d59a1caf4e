#pragma once

// Exact discrete-time simulation of the random walk with modifications at
// zero: after the k-th visit to 0 the up-probability becomes (1/2 + k*delta)
// clamped to 1. Visits are counted including time 0 when the walk starts
// there, so the first step out of 0 is already biased.

#include <cstdint>
#include <optional>
#include <vector>

#include "rwm/errors.hpp"
#include "rwm/grid.hpp"
#include "rwm/rng.hpp"

namespace rwm::walk {

struct ModificationParams {
  double delta = 0.0;                     // bias increment, 0 < delta <= 1/2
  std::optional<std::int32_t> visit_cap;  // modifications freeze after this many visits
  std::int32_t start = 0;
  // Alternative convention: the time-0 visit is not counted, so the walk is
  // symmetric until its first return. Sensitivity runs only.
  bool first_step_symmetric = false;

  void validate() const;
};

// Triangular-array parametrisation delta_n = c * n^(-alpha).
struct SeriesScheme {
  double c = 1.0;
  double alpha = 1.0;
  std::int64_t n = 1;

  // Throws ConfigError when c * n^(-alpha) leaves (0, 1/2].
  double delta_n() const;
  // 1/2 for alpha >= 1, 1 - alpha/2 otherwise.
  double space_exponent() const;
  ModificationParams params() const;
  void validate() const;
};

struct StepLaw {
  double up;
  double down;
};

struct Trajectory {
  std::vector<std::int32_t> positions;  // X_0 .. X_m
  std::vector<std::int32_t> visits;     // nu_k = #{j <= k : X_j = 0}

  std::size_t steps() const { return positions.empty() ? 0 : positions.size() - 1; }
};

struct ReturnStatistics {
  std::vector<std::int64_t> return_times;  // T_0 = 0 < T_1 < ...
  std::vector<std::int64_t> excursions;    // T_{k+1} - T_k
  std::int64_t returns_count = 0;          // visits to 0 strictly after time 0
  std::int64_t last_return = 0;
  // Probability that the walk would still visit 0 after the observed window.
  double truncation_bias_bound = 1.0;
  std::int64_t steps_simulated = 0;
};

// Raised when simulate_to_last_return hits its horizon before escaping.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, ReturnStatistics partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ReturnStatistics& partial() const noexcept { return partial_; }

 private:
  ReturnStatistics partial_;
};

// Visit count that enters the bias after applying the first-step convention
// and the cap.
std::int64_t effective_visits(std::int64_t visits, const ModificationParams& params);

// (p, q) with p = min(1/2 + nu' * delta, 1), q = 1 - p.
StepLaw transition_probabilities(std::int64_t visits, const ModificationParams& params);

// One uniform per step; the step is +1 iff u < p.
Trajectory simulate_path(const ModificationParams& params, std::int64_t steps, mc::Rng& rng);

// Simple symmetric walk from 0 (steps +-1 w.p. 1/2, one uniform per step),
// with the same visit bookkeeping as simulate_path.
Trajectory simulate_symmetric_path(std::int64_t steps, mc::Rng& rng);

// Runs from 0 until the last visit to 0. The future is decided exactly: once
// p = 1 the walk has escaped; at X >= barrier with p > 1/2 one uniform decides
// between escape and a return (probability (q/p)^X), the latter simulated as
// the walk conditioned to return. truncation_bias_bound is then 0. Throws
// TruncationError after horizon_cap steps. Requires start == 0.
ReturnStatistics simulate_to_last_return(const ModificationParams& params, std::int32_t barrier,
                                         std::int64_t horizon_cap, mc::Rng& rng);

// First excursion of a walk with constant up-probability p from 0: its length
// if it returns before reaching `barrier`, nullopt if it reaches the barrier.
std::optional<std::int64_t> first_return_time(double p, std::int32_t barrier,
                                              std::int64_t horizon_cap, mc::Rng& rng);

// Read return times off a path that starts at 0. The single-argument form
// reports truncation_bias_bound = 1 (nothing is known about the future);
// with params it is the exact probability of a further visit to 0.
ReturnStatistics return_statistics(const Trajectory& traj);
ReturnStatistics return_statistics(const Trajectory& traj, const ModificationParams& params);

// Probability that a walk at `position` with frozen up-probability p ever
// visits 0 at a time > now.
double further_return_probability(std::int32_t position, StepLaw law);

// (X_[nt] + (X_[nt]+1 - X_[nt]) (nt - [nt])) / n^beta
double scaled_value(const Trajectory& traj, const SeriesScheme& scheme, double t);

// scaled_value on every grid point.
RealPath scaled_path(const Trajectory& traj, const SeriesScheme& scheme, const TimeGrid& grid);

// Checks unit steps and visit-counter consistency; throws std::logic_error.
void check_trajectory(const Trajectory& traj);

}  // namespace rwm::walk
