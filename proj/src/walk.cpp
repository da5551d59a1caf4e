#include "rwm/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rwm::walk {

void ModificationParams::validate() const {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw ConfigError("delta must lie in (0, 0.5], got " + std::to_string(delta));
  }
  if (visit_cap && *visit_cap < 1) {
    throw ConfigError("visit_cap must be >= 1 when present, got " + std::to_string(*visit_cap));
  }
}

double SeriesScheme::delta_n() const {
  validate();
  const double d = c * std::pow(static_cast<double>(n), -alpha);
  if (!(d > 0.0 && d <= 0.5)) {
    throw ConfigError("delta_n = c * n^(-alpha) = " + std::to_string(d) +
                      " lies outside (0, 0.5]");
  }
  return d;
}

double SeriesScheme::space_exponent() const { return alpha >= 1.0 ? 0.5 : 1.0 - alpha / 2.0; }

ModificationParams SeriesScheme::params() const {
  ModificationParams p;
  p.delta = delta_n();
  return p;
}

void SeriesScheme::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("c must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
  if (n < 1) throw ConfigError("n must be a positive integer");
}

std::int64_t effective_visits(std::int64_t visits, const ModificationParams& params) {
  std::int64_t v = visits;
  if (params.first_step_symmetric && params.start == 0) v = std::max<std::int64_t>(v - 1, 0);
  if (params.visit_cap) v = std::min<std::int64_t>(v, *params.visit_cap);
  return v;
}

StepLaw transition_probabilities(std::int64_t visits, const ModificationParams& params) {
  const double v = static_cast<double>(effective_visits(visits, params));
  const double up = std::min(0.5 + v * params.delta, 1.0);
  return {up, 1.0 - up};
}

Trajectory simulate_path(const ModificationParams& params, std::int64_t steps, mc::Rng& rng) {
  params.validate();
  if (steps < 1) throw ConfigError("steps must be >= 1");

  Trajectory traj;
  traj.positions.resize(static_cast<std::size_t>(steps) + 1);
  traj.visits.resize(static_cast<std::size_t>(steps) + 1);

  std::int32_t x = params.start;
  std::int32_t visits = x == 0 ? 1 : 0;
  traj.positions[0] = x;
  traj.visits[0] = visits;
  for (std::int64_t k = 0; k < steps; ++k) {
    const double up = transition_probabilities(visits, params).up;
    x += rng.uniform() < up ? 1 : -1;
    if (x == 0) ++visits;
    traj.positions[static_cast<std::size_t>(k) + 1] = x;
    traj.visits[static_cast<std::size_t>(k) + 1] = visits;
  }
  return traj;
}

Trajectory simulate_symmetric_path(std::int64_t steps, mc::Rng& rng) {
  if (steps < 1) throw ConfigError("steps must be >= 1");
  Trajectory traj;
  traj.positions.resize(static_cast<std::size_t>(steps) + 1);
  traj.visits.resize(static_cast<std::size_t>(steps) + 1);
  std::int32_t x = 0;
  std::int32_t visits = 1;
  traj.positions[0] = 0;
  traj.visits[0] = 1;
  for (std::int64_t k = 0; k < steps; ++k) {
    x += rng.uniform() < 0.5 ? 1 : -1;
    if (x == 0) ++visits;
    traj.positions[static_cast<std::size_t>(k) + 1] = x;
    traj.visits[static_cast<std::size_t>(k) + 1] = visits;
  }
  return traj;
}

namespace {

void push_return(ReturnStatistics& s, std::int64_t t) {
  s.excursions.push_back(t - s.return_times.back());
  s.return_times.push_back(t);
  s.returns_count += 1;
  s.last_return = t;
}

}  // namespace

ReturnStatistics simulate_to_last_return(const ModificationParams& params, std::int32_t barrier,
                                         std::int64_t horizon_cap, mc::Rng& rng) {
  params.validate();
  if (params.start != 0) throw ConfigError("simulate_to_last_return requires start = 0");
  if (barrier < 1) throw ConfigError("barrier must be >= 1");
  if (horizon_cap < 1) throw ConfigError("horizon_cap must be >= 1");

  ReturnStatistics s;
  s.return_times.push_back(0);

  std::int32_t x = 0;
  std::int64_t visits = 1;
  StepLaw law = transition_probabilities(visits, params);
  // While `homing` the walk is conditioned to hit 0 again: given a return,
  // a walk with up-probability p > 1/2 moves up with probability q instead.
  bool homing = false;
  std::int64_t t = 0;
  for (;;) {
    if (law.down == 0.0) {
      s.truncation_bias_bound = 0.0;
      break;
    }
    if (!homing && x >= barrier && law.up > 0.5) {
      if (rng.uniform() >= std::pow(law.down / law.up, x)) {
        s.truncation_bias_bound = 0.0;
        break;
      }
      homing = true;
    }
    if (t >= horizon_cap) {
      s.steps_simulated = t;
      s.truncation_bias_bound = further_return_probability(x, law);
      throw TruncationError("horizon_cap " + std::to_string(horizon_cap) +
                                " reached before escape (x=" + std::to_string(x) +
                                ", visits=" + std::to_string(visits) + ")",
                            std::move(s));
    }
    x += rng.uniform() < (homing ? law.down : law.up) ? 1 : -1;
    ++t;
    if (x == 0) {
      ++visits;
      push_return(s, t);
      law = transition_probabilities(visits, params);
      homing = false;
    }
  }
  s.steps_simulated = t;
  return s;
}

std::optional<std::int64_t> first_return_time(double p, std::int32_t barrier,
                                              std::int64_t horizon_cap, mc::Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  if (barrier < 1) throw ConfigError("barrier must be >= 1");
  std::int32_t x = 0;
  for (std::int64_t t = 1; t <= horizon_cap; ++t) {
    x += rng.uniform() < p ? 1 : -1;
    if (x == 0) return t;
    if (x >= barrier) return std::nullopt;
  }
  throw std::runtime_error("first_return_time: horizon_cap reached");
}

ReturnStatistics return_statistics(const Trajectory& traj) {
  if (traj.positions.empty() || traj.positions.front() != 0) {
    throw ConfigError("return_statistics requires a path starting at 0");
  }
  ReturnStatistics s;
  s.return_times.push_back(0);
  for (std::size_t k = 1; k < traj.positions.size(); ++k) {
    if (traj.positions[k] == 0) push_return(s, static_cast<std::int64_t>(k));
  }
  s.steps_simulated = static_cast<std::int64_t>(traj.steps());
  s.truncation_bias_bound = 1.0;
  return s;
}

ReturnStatistics return_statistics(const Trajectory& traj, const ModificationParams& params) {
  ReturnStatistics s = return_statistics(traj);
  const StepLaw law = transition_probabilities(traj.visits.back(), params);
  s.truncation_bias_bound = further_return_probability(traj.positions.back(), law);
  return s;
}

double further_return_probability(std::int32_t position, StepLaw law) {
  if (position == 0) return 1.0 - std::fabs(law.up - law.down);
  // Gambler's ruin: from x > 0 the walk ever reaches 0 w.p. min(1, (q/p)^x).
  const double toward = position > 0 ? law.down : law.up;
  const double away = position > 0 ? law.up : law.down;
  if (toward >= away) return 1.0;
  if (toward == 0.0) return 0.0;
  return std::pow(toward / away, std::abs(position));
}

namespace {

double interpolate(const Trajectory& traj, double nt, double scale) {
  const auto last = static_cast<std::ptrdiff_t>(traj.steps());
  auto k = static_cast<std::ptrdiff_t>(std::floor(nt));
  k = std::clamp<std::ptrdiff_t>(k, 0, last);
  const double frac = std::clamp(nt - static_cast<double>(k), 0.0, 1.0);
  const double xk = traj.positions[static_cast<std::size_t>(k)];
  const double xk1 = k < last ? traj.positions[static_cast<std::size_t>(k) + 1] : xk;
  return (xk + (xk1 - xk) * frac) / scale;
}

void require_length(const Trajectory& traj, double n, double horizon) {
  if (!(horizon >= 0.0) || n * horizon > static_cast<double>(traj.steps()) * (1.0 + 1e-12)) {
    throw ConfigError("time " + std::to_string(horizon) + " needs " +
                      std::to_string(n * horizon) + " steps, trajectory has " +
                      std::to_string(traj.steps()));
  }
}

}  // namespace

double scaled_value(const Trajectory& traj, const SeriesScheme& scheme, double t) {
  scheme.validate();
  const double n = static_cast<double>(scheme.n);
  require_length(traj, n, t);
  return interpolate(traj, n * t, std::pow(n, scheme.space_exponent()));
}

RealPath scaled_path(const Trajectory& traj, const SeriesScheme& scheme, const TimeGrid& grid) {
  grid.validate();
  scheme.validate();
  const double n = static_cast<double>(scheme.n);
  require_length(traj, n, grid.horizon);
  const double scale = std::pow(n, scheme.space_exponent());

  RealPath out;
  out.times = grid.times();
  out.values.resize(out.times.size());
  for (std::size_t j = 0; j < out.times.size(); ++j) {
    out.values[j] = interpolate(traj, n * out.times[j], scale);
  }
  return out;
}

void check_trajectory(const Trajectory& traj) {
  const auto& x = traj.positions;
  const auto& v = traj.visits;
  if (x.empty() || x.size() != v.size()) throw std::logic_error("trajectory arrays mismatch");
  if (v[0] != (x[0] == 0 ? 1 : 0)) throw std::logic_error("nu_0 must be 1 iff X_0 = 0");
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    if (std::abs(x[k + 1] - x[k]) != 1) {
      throw std::logic_error("non-unit step at k=" + std::to_string(k));
    }
    if (v[k + 1] - v[k] != (x[k + 1] == 0 ? 1 : 0)) {
      throw std::logic_error("visit counter inconsistent at k=" + std::to_string(k + 1));
    }
  }
}

}  // namespace rwm::walk
