#pragma once

// Samplers for the scaling limits of the modified walk and the path-space
// likelihood ratios: Brownian paths, linear random-slope paths, an Euler
// scheme for the local-time drift SDE, and the discrete and continuum
// Radon-Nikodym densities against the symmetric walk / Wiener measure.

#include <optional>
#include <string_view>

#include "rwm/grid.hpp"
#include "rwm/rng.hpp"
#include "rwm/walk.hpp"

namespace rwm::limits {

// Named choices for the drift coefficient kappa in dX = kappa * l dt + dW.
enum class DriftVariant { sqrt_c, two_sqrt_c, two_c };

std::string_view to_string(DriftVariant v);
DriftVariant drift_variant_from_string(std::string_view s);
double drift_factor(DriftVariant v, double c);

struct SdeConfig {
  double c = 1.0;
  std::optional<double> cap;  // M; absent means uncapped
  double drift_factor = 1.0;  // kappa
  double time_step = 1e-3;    // h
  double band = 0.02;         // epsilon of the local-time estimator
  double horizon = 1.0;       // T

  // Number of Euler steps; T / h must be an integer up to rounding.
  std::size_t steps() const;
  void validate() const;
};

struct SdePath {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> local_time;  // nondecreasing, l(0) = 0
};

RealPath sample_brownian_path(const TimeGrid& grid, mc::Rng& rng);

// Inverse-CDF Rayleigh sample sqrt(-2 ln u).
double rayleigh_from_uniform(double u);
double sample_rayleigh(mc::Rng& rng);

RealPath linear_limit_path(double c, double eta, const TimeGrid& grid);

// Euler scheme, left point:
//   X_{j+1} = X_j + kappa * min(l_j, M) * h + sqrt(h) G_j
//   l_{j+1} = l_j + h / (2 eps) * 1{|X_j| <= eps}
SdePath integrate_local_time_sde(const SdeConfig& config, mc::Rng& rng);

// (1 / 2 eps) * sum_{t_j < t} (t_{j+1} - t_j) * 1{|X(t_j)| <= eps}
double band_local_time(const RealPath& path, double eps, double t);

// Likelihood ratio of the modified walk against the symmetric walk:
// prod_k (1 + min(2 nu'_k delta, 1) * xi_{k+1}); zero for paths the modified
// walk cannot produce.
double discrete_density(const walk::Trajectory& traj, const walk::ModificationParams& params);

// Log of the left-point discretisation of
//   exp{ int 2 min(sqrt(c) l, M) dW - int 2 min(sqrt(c) l, M)^2 dt }
// with l the band local time of w at width eps. cap may be +inf.
double limit_log_density(const RealPath& w, double c, double cap, double eps);
double limit_density(const RealPath& w, double c, double cap, double eps);

}  // namespace rwm::limits
