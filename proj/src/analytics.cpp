#include "rwm/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rwm/errors.hpp"

namespace rwm::analytics {

namespace {

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw ConfigError("delta must lie in (0, 0.5], got " + std::to_string(delta));
  }
}

}  // namespace

std::string_view to_string(LastReturnVariant v) {
  switch (v) {
    case LastReturnVariant::paper_display:
      return "paper_display";
    case LastReturnVariant::excursion_derived:
      return "excursion_derived";
  }
  return "unknown";
}

LastReturnVariant last_return_variant_from_string(std::string_view s) {
  if (s == "paper_display") return LastReturnVariant::paper_display;
  if (s == "excursion_derived") return LastReturnVariant::excursion_derived;
  throw ConfigError("unknown last-return variant '" + std::string(s) + "'");
}

double ExtendedReal::value() const {
  if (infinite_) throw std::domain_error("value() on an infinite ExtendedReal");
  return value_;
}

double returns_survival(std::int64_t k, double delta) {
  require_delta(delta);
  if (k < 0) throw ConfigError("k must be nonnegative");
  if (delta < 1e-4) {
    double log_p = 0.0;
    for (std::int64_t i = 1; i <= k; ++i) {
      const double y = 2.0 * static_cast<double>(i) * delta;
      if (y >= 1.0) return 0.0;
      log_p += std::log1p(-y);
      if (log_p < -745.0) return 0.0;
    }
    return std::exp(log_p);
  }
  double p = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    p *= std::max(1.0 - 2.0 * static_cast<double>(i) * delta, 0.0);
    if (p == 0.0) break;
  }
  return p;
}

double rayleigh_cdf(double x) { return x < 0.0 ? 0.0 : -std::expm1(-x * x / 2.0); }

double slope_limit_cdf(double x, double c) {
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  return x < 0.0 ? 0.0 : -std::expm1(-x * x / (8.0 * c));
}

double returns_limit_cdf(double x) { return x < 0.0 ? 0.0 : -std::expm1(-x * x); }

double corrected_slope_cdf(double x, double c) {
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  return x < 0.0 ? 0.0 : -std::expm1(-x * x / (4.0 * c));
}

double return_time_transform(double s, double p) {
  if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("s must lie in [0, 1]");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  const double inner = std::max(1.0 - 4.0 * p * (1.0 - p) * s * s, 0.0);
  return 1.0 - std::sqrt(inner);
}

ExtendedReal expected_return_time(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  const double q = 1.0 - p;
  const double gap = std::fabs(p - q);
  if (gap == 0.0) return ExtendedReal::infinite();
  return ExtendedReal::finite(4.0 * p * q / gap);
}

double returns_law_ks_distance(double delta, const std::function<double(double)>& cdf) {
  require_delta(delta);
  const double step = std::sqrt(delta);
  double survival_next = 1.0;  // P(R >= k + 1), advanced at the top of the loop
  double below = 0.0;          // P(R <= k - 1)
  double d = 0.0;
  for (std::int64_t k = 0;; ++k) {
    survival_next *= std::max(1.0 - 2.0 * static_cast<double>(k + 1) * delta, 0.0);
    const double at = 1.0 - survival_next;  // P(R <= k)
    const double g = cdf(static_cast<double>(k) * step);
    // F jumps from `below` to `at` at k*step and is flat until the next atom,
    // while G increases, so both one-sided gaps are checked at the atoms.
    d = std::max({d, std::fabs(at - g), std::fabs(below - g)});
    below = at;
    if (survival_next < 1e-300 || (survival_next < 1e-18 && 1.0 - g < 1e-18)) break;
  }
  return d;
}

double expected_last_return(double delta, LastReturnVariant variant) {
  require_delta(delta);
  double total = 0.0;
  if (variant == LastReturnVariant::paper_display) {
    const auto upper = static_cast<std::int64_t>(std::floor(1.0 / (2.0 * delta)));
    double survival = 1.0;  // P(T_{k-1} < inf), updated incrementally
    for (std::int64_t k = 1; k <= upper; ++k) {
      if (k > 1) {
        survival *= std::max(1.0 - 2.0 * static_cast<double>(k - 1) * delta, 0.0);
      }
      const double kd = static_cast<double>(k) * delta;
      total += 2.0 * (1.0 / kd - kd) * survival;
    }
    return total;
  }
  // Excursion k starts at the (k-1)-th return, with nu = k visits so far.
  double survival = 1.0;
  for (std::int64_t k = 1;; ++k) {
    if (k > 1) {
      survival *= std::max(1.0 - 2.0 * static_cast<double>(k - 1) * delta, 0.0);
    }
    const double p = std::min(0.5 + static_cast<double>(k) * delta, 1.0);
    if (p >= 1.0 || survival == 0.0) break;
    total += expected_return_time(p).value() * survival;
  }
  return total;
}

}  // namespace rwm::analytics
