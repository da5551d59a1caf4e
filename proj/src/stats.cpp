#include "rwm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rwm/errors.hpp"
#include "rwm/normal.hpp"

namespace rwm::stats {

namespace {

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::stable_sort(v.begin(), v.end());
  return v;
}

}  // namespace

double ecdf_eval(std::span<const double> samples, double x) {
  if (samples.empty()) throw ConfigError("ecdf_eval: empty sample");
  const auto count = std::count_if(samples.begin(), samples.end(), [x](double s) { return s <= x; });
  return static_cast<double>(count) / static_cast<double>(samples.size());
}

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ConfigError("ks_one_sample: empty sample");
  const std::vector<double> xs = sorted_copy(samples);
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  d = std::clamp(d, 0.0, 1.0);
  return {d, n, ks_pvalue(d, n)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("ks_two_sample: empty sample");
  const std::vector<double> xa = sorted_copy(a);
  const std::vector<double> xb = sorted_copy(b);
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == v) ++i;
    while (j < xb.size() && xb[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double n_eff = na * nb / (na + nb);
  return {d, n_eff, ks_pvalue(d, n_eff)};
}

double kolmogorov_tail(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  // Below ~1 the alternating series converges slowly; use the equivalent
  // Jacobi-theta form of the CDF there.
  if (lambda < 1.0) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double m = 2.0 * k - 1.0;
      const double term = std::exp(-m * m * pi2 / (8.0 * lambda * lambda));
      cdf += term;
      if (term < 1e-16) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-10) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double statistic, double n_effective) {
  if (!(n_effective > 0.0)) throw ConfigError("ks_pvalue: n_effective must be positive");
  const double rn = std::sqrt(n_effective);
  return kolmogorov_tail(statistic * (rn + 0.12 + 0.11 / rn));
}

SummaryRecord mean_ci(std::span<const double> samples, double level, std::string label) {
  if (samples.size() < 2) throw ConfigError("mean_ci: need at least 2 samples");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("mean_ci: level must lie in (0, 1)");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double z = normal_quantile(0.5 + level / 2.0);
  SummaryRecord r;
  r.label = std::move(label);
  r.sample_size = samples.size();
  r.mean = mean;
  r.ci_half_width = z * sd / std::sqrt(n);
  r.level = level;
  r.extra.emplace_back("stddev", sd);
  return r;
}

double binomial_se(double p, double n) {
  if (!(n > 0.0)) throw ConfigError("binomial_se: n must be positive");
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

double median(std::vector<double> values) {
  if (values.empty()) throw ConfigError("median: empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

double path_sup_distance(const RealPath& a, const RealPath& b) {
  if (a.times.size() != b.times.size() || a.values.size() != b.values.size() ||
      a.values.size() != a.times.size()) {
    throw ConfigError("path_sup_distance: grid mismatch");
  }
  double d = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    if (std::fabs(a.times[j] - b.times[j]) > 1e-12 * std::max(1.0, std::fabs(a.times[j]))) {
      throw ConfigError("path_sup_distance: grid mismatch");
    }
    d = std::max(d, std::fabs(a.values[j] - b.values[j]));
  }
  return d;
}

}  // namespace rwm::stats
