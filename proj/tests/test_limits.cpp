#include <gtest/gtest.h>

#include <cmath>

#include "rwm/limits.hpp"

using namespace rwm;
using namespace rwm::limits;

namespace {

walk::Trajectory from_bits(std::uint32_t bits, int m) {
  walk::Trajectory t;
  t.positions = {0};
  t.visits = {1};
  for (int k = 0; k < m; ++k) {
    const int x = t.positions.back() + (((bits >> k) & 1U) ? 1 : -1);
    t.positions.push_back(x);
    t.visits.push_back(t.visits.back() + (x == 0));
  }
  return t;
}

}  // namespace

TEST(DriftVariant, FactorsAndNames) {
  EXPECT_DOUBLE_EQ(drift_factor(DriftVariant::sqrt_c, 4.0), 2.0);
  EXPECT_DOUBLE_EQ(drift_factor(DriftVariant::two_sqrt_c, 4.0), 4.0);
  EXPECT_DOUBLE_EQ(drift_factor(DriftVariant::two_c, 4.0), 8.0);
  for (auto v : {DriftVariant::sqrt_c, DriftVariant::two_sqrt_c, DriftVariant::two_c}) {
    EXPECT_EQ(drift_variant_from_string(to_string(v)), v);
  }
  EXPECT_THROW(drift_variant_from_string("four_c"), ConfigError);
}

TEST(SdeConfig, StepsRequireIntegralRatio) {
  SdeConfig s;
  EXPECT_EQ(s.steps(), 1000u);
  s.horizon = 5.0;
  EXPECT_EQ(s.steps(), 5000u);
  s.time_step = 0.3;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Sde, DriftlessPathIsTheBrownianPath) {
  SdeConfig s;
  s.drift_factor = 0.0;
  s.time_step = 0.01;
  mc::Rng a(5), b(5);
  const auto x = integrate_local_time_sde(s, a);
  const auto w = sample_brownian_path(TimeGrid{1.0, 100}, b);
  ASSERT_EQ(x.values.size(), w.values.size());
  for (std::size_t j = 0; j < w.values.size(); ++j) EXPECT_NEAR(x.values[j], w.values[j], 1e-12);
}

TEST(Sde, LocalTimeBookkeeping) {
  SdeConfig s;
  s.drift_factor = 1.0;
  s.band = 0.05;
  mc::Rng rng(8);
  const auto p = integrate_local_time_sde(s, rng);
  EXPECT_EQ(p.local_time.front(), 0.0);
  const double inc = s.time_step / (2.0 * s.band);
  for (std::size_t j = 0; j + 1 < p.values.size(); ++j) {
    const double step = p.local_time[j + 1] - p.local_time[j];
    const double expected = std::fabs(p.values[j]) <= s.band ? inc : 0.0;
    ASSERT_NEAR(step, expected, 1e-12) << j;
  }
  const RealPath rp{p.times, p.values};
  EXPECT_NEAR(band_local_time(rp, s.band, 1.0), p.local_time.back(), 1e-9);
}

TEST(Sde, DriftUsesCappedLocalTime) {
  // With drift on and the cap at 0 the scheme is driftless.
  SdeConfig capped;
  capped.drift_factor = 3.0;
  capped.cap = 0.0;
  SdeConfig free;
  free.drift_factor = 0.0;
  mc::Rng a(2), b(2);
  EXPECT_EQ(integrate_local_time_sde(capped, a).values, integrate_local_time_sde(free, b).values);
}

TEST(Rayleigh, InverseCdfAndMean) {
  EXPECT_NEAR(rayleigh_from_uniform(std::exp(-0.5)), 1.0, 1e-15);
  mc::Rng rng(3);
  constexpr int n = 100000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += sample_rayleigh(rng);
  const double sd = std::sqrt(2.0 - M_PI / 2.0);
  EXPECT_NEAR(s / n, std::sqrt(M_PI / 2.0), 5.0 * sd / std::sqrt(n));
}

TEST(LinearLimitPath, SlopeTwoSqrtCEta) {
  const auto p = linear_limit_path(4.0, 0.5, TimeGrid{2.0, 4});
  EXPECT_DOUBLE_EQ(p.values.back(), 2.0 * 2.0 * 0.5 * 2.0);
  EXPECT_DOUBLE_EQ(p.values[1], 2.0 * 2.0 * 0.5 * 0.5);
}

TEST(DiscreteDensity, EqualsPathProbabilityTimesTwoToTheM) {
  for (double d : {0.05, 0.2, 0.5}) {
    walk::ModificationParams params;
    params.delta = d;
    constexpr int m = 10;
    double total = 0.0;
    for (std::uint32_t bits = 0; bits < (1U << m); ++bits) {
      const auto t = from_bits(bits, m);
      double prob = 1.0;
      int visits = 1;
      for (int k = 0; k < m; ++k) {
        const double up = std::min(0.5 + visits * d, 1.0);
        const bool is_up = t.positions[k + 1] > t.positions[k];
        prob *= is_up ? up : 1.0 - up;
        visits += t.positions[k + 1] == 0;
      }
      const double rho = discrete_density(t, params);
      ASSERT_NEAR(rho * std::ldexp(1.0, -m), prob, 1e-15);
      total += rho;
    }
    EXPECT_NEAR(total * std::ldexp(1.0, -m), 1.0, 1e-12);
  }
}

TEST(DiscreteDensity, ImpossiblePathHasZeroDensity) {
  walk::ModificationParams params;
  params.delta = 0.5;
  EXPECT_EQ(discrete_density(from_bits(0b0, 3), params), 0.0);
  EXPECT_EQ(discrete_density(from_bits(0b111, 3), params), 8.0);
}

TEST(LimitDensity, HandComputedExample) {
  // Grid h = 0.5, eps = 1: l after step 0 is h/(2 eps) = 0.25, so b_0 = 0 and
  // b_1 = sqrt(c) * 0.25 with c = 4, i.e. 0.5.
  const RealPath w{{0.0, 0.5, 1.0}, {0.0, 0.3, -0.1}};
  const double b1 = 0.5;
  const double expected = 2.0 * b1 * (-0.1 - 0.3) - 2.0 * b1 * b1 * 0.5;
  EXPECT_NEAR(limit_log_density(w, 4.0, 10.0, 1.0), expected, 1e-15);
  EXPECT_NEAR(limit_log_density(w, 4.0, 0.2, 1.0),
              2.0 * 0.2 * (-0.4) - 2.0 * 0.04 * 0.5, 1e-15);
  EXPECT_NEAR(limit_density(w, 4.0, 10.0, 1.0), std::exp(expected), 1e-15);
  EXPECT_EQ(limit_log_density(w, 4.0, 0.0, 1.0), 0.0);
}
