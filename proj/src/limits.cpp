#include "rwm/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rwm/errors.hpp"

namespace rwm::limits {

std::string_view to_string(DriftVariant v) {
  switch (v) {
    case DriftVariant::sqrt_c:
      return "sqrt_c";
    case DriftVariant::two_sqrt_c:
      return "two_sqrt_c";
    case DriftVariant::two_c:
      return "two_c";
  }
  return "unknown";
}

DriftVariant drift_variant_from_string(std::string_view s) {
  if (s == "sqrt_c") return DriftVariant::sqrt_c;
  if (s == "two_sqrt_c") return DriftVariant::two_sqrt_c;
  if (s == "two_c") return DriftVariant::two_c;
  throw ConfigError("unknown drift variant '" + std::string(s) +
                    "' (expected sqrt_c, two_sqrt_c or two_c)");
}

double drift_factor(DriftVariant v, double c) {
  switch (v) {
    case DriftVariant::sqrt_c:
      return std::sqrt(c);
    case DriftVariant::two_sqrt_c:
      return 2.0 * std::sqrt(c);
    case DriftVariant::two_c:
      return 2.0 * c;
  }
  return std::sqrt(c);
}

std::size_t SdeConfig::steps() const {
  const double ratio = horizon / time_step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::fabs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw ConfigError("horizon / time_step must be a positive integer, got " +
                      std::to_string(ratio));
  }
  return static_cast<std::size_t>(rounded);
}

void SdeConfig::validate() const {
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (cap && !(*cap >= 0.0)) throw ConfigError("cap M must be nonnegative");
  if (!std::isfinite(drift_factor)) throw ConfigError("drift factor must be finite");
  if (!(time_step > 0.0)) throw ConfigError("time step h must be positive");
  if (!(band > 0.0)) throw ConfigError("band eps must be positive");
  if (!(horizon > 0.0)) throw ConfigError("horizon T must be positive");
  (void)steps();
}

RealPath sample_brownian_path(const TimeGrid& grid, mc::Rng& rng) {
  grid.validate();
  RealPath w;
  w.times = grid.times();
  w.values.resize(w.times.size());
  w.values[0] = 0.0;
  for (std::size_t j = 1; j < w.values.size(); ++j) {
    const double dt = w.times[j] - w.times[j - 1];
    w.values[j] = w.values[j - 1] + std::sqrt(dt) * rng.normal();
  }
  return w;
}

double rayleigh_from_uniform(double u) { return std::sqrt(-2.0 * std::log(u)); }

double sample_rayleigh(mc::Rng& rng) { return rayleigh_from_uniform(rng.uniform_open()); }

RealPath linear_limit_path(double c, double eta, const TimeGrid& grid) {
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (!(eta >= 0.0)) throw ConfigError("eta must be nonnegative");
  grid.validate();
  RealPath out;
  out.times = grid.times();
  out.values.resize(out.times.size());
  const double slope = 2.0 * std::sqrt(c) * eta;
  for (std::size_t j = 0; j < out.times.size(); ++j) out.values[j] = slope * out.times[j];
  return out;
}

SdePath integrate_local_time_sde(const SdeConfig& config, mc::Rng& rng) {
  config.validate();
  const std::size_t steps = config.steps();
  const double h = config.time_step;
  const double sqrt_h = std::sqrt(h);
  const double increment = h / (2.0 * config.band);
  const double cap = config.cap.value_or(std::numeric_limits<double>::infinity());

  SdePath path;
  path.times.resize(steps + 1);
  path.values.resize(steps + 1);
  path.local_time.resize(steps + 1);
  double x = 0.0;
  double l = 0.0;
  path.times[0] = 0.0;
  path.values[0] = x;
  path.local_time[0] = l;
  for (std::size_t j = 0; j < steps; ++j) {
    const double drift = config.drift_factor * std::min(l, cap);
    const double next_x = x + drift * h + sqrt_h * rng.normal();
    if (std::fabs(x) <= config.band) l += increment;
    x = next_x;
    path.times[j + 1] = static_cast<double>(j + 1) * h;
    path.values[j + 1] = x;
    path.local_time[j + 1] = l;
  }
  return path;
}

double band_local_time(const RealPath& path, double eps, double t) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (path.times.empty() || path.times.size() != path.values.size()) {
    throw ConfigError("band_local_time: malformed path");
  }
  if (t < path.times.front() || t > path.times.back() * (1.0 + 1e-12)) {
    throw ConfigError("band_local_time: t outside the path horizon");
  }
  double occupation = 0.0;
  for (std::size_t j = 0; j + 1 < path.times.size() && path.times[j] < t; ++j) {
    if (std::fabs(path.values[j]) <= eps) occupation += path.times[j + 1] - path.times[j];
  }
  return occupation / (2.0 * eps);
}

double discrete_density(const walk::Trajectory& traj, const walk::ModificationParams& params) {
  params.validate();
  if (traj.positions.empty() || traj.positions.front() != 0) {
    throw ConfigError("discrete_density requires a path starting at 0");
  }
  double rho = 1.0;
  std::int64_t visits = 1;
  for (std::size_t k = 0; k + 1 < traj.positions.size(); ++k) {
    const int xi = traj.positions[k + 1] - traj.positions[k];
    if (xi != 1 && xi != -1) throw ConfigError("discrete_density requires unit steps");
    const double tilt =
        std::min(2.0 * static_cast<double>(walk::effective_visits(visits, params)) * params.delta,
                 1.0);
    rho *= 1.0 + tilt * xi;
    if (rho == 0.0) return 0.0;
    if (traj.positions[k + 1] == 0) ++visits;
  }
  return rho;
}

double limit_log_density(const RealPath& w, double c, double cap, double eps) {
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (!(cap >= 0.0)) throw ConfigError("cap M must be nonnegative");
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  if (w.values.empty() || w.times.size() != w.values.size()) {
    throw ConfigError("limit_density: malformed path");
  }
  const double sqrt_c = std::sqrt(c);
  double l = 0.0;
  double stochastic = 0.0;
  double quadratic = 0.0;
  for (std::size_t j = 0; j + 1 < w.values.size(); ++j) {
    const double h = w.times[j + 1] - w.times[j];
    const double b = std::min(sqrt_c * l, cap);
    stochastic += 2.0 * b * (w.values[j + 1] - w.values[j]);
    quadratic += 2.0 * b * b * h;
    if (std::fabs(w.values[j]) <= eps) l += h / (2.0 * eps);
  }
  return stochastic - quadratic;
}

double limit_density(const RealPath& w, double c, double cap, double eps) {
  return std::exp(limit_log_density(w, c, cap, eps));
}

}  // namespace rwm::limits
