#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwm/grid.hpp"

namespace rwm::stats {

struct KsResult {
  double statistic = 0.0;  // D in [0, 1]
  double n_effective = 0.0;
  double p_value = 1.0;
};

struct SummaryRecord {
  std::string label;
  std::size_t sample_size = 0;
  double mean = 0.0;
  double ci_half_width = 0.0;
  double level = 0.95;
  std::vector<std::pair<std::string, double>> extra;

  double lower() const { return mean - ci_half_width; }
  double upper() const { return mean + ci_half_width; }
  bool contains(double x) const { return lower() <= x && x <= upper(); }
};

// Fraction of samples <= x. Throws ConfigError on an empty sample.
double ecdf_eval(std::span<const double> samples, double x);

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

// Exact sup |F_a - F_b| over the merged support; ties advance both sides.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

// Q at lambda = D (sqrt(n) + 0.12 + 0.11 / sqrt(n)).
double ks_pvalue(double statistic, double n_effective);

// Mean with normal-approximation half-width z_{(1+level)/2} * s / sqrt(n).
SummaryRecord mean_ci(std::span<const double> samples, double level, std::string label = {});

// Binomial standard error sqrt(p (1 - p) / n).
double binomial_se(double p, double n);

double median(std::vector<double> values);

// max_j |a(t_j) - b(t_j)|; the two paths must share a grid.
double path_sup_distance(const RealPath& a, const RealPath& b);

}  // namespace rwm::stats
