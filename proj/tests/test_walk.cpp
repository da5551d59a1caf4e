#include <gtest/gtest.h>

#include <cmath>

#include "rwm/walk.hpp"

using namespace rwm;
using namespace rwm::walk;

namespace {

ModificationParams with_delta(double d) {
  ModificationParams p;
  p.delta = d;
  return p;
}

Trajectory from_positions(std::vector<std::int32_t> xs) {
  Trajectory t;
  t.positions = std::move(xs);
  std::int32_t v = 0;
  for (auto x : t.positions) {
    v += x == 0;
    t.visits.push_back(v);
  }
  return t;
}

}  // namespace

TEST(TransitionProbabilities, BiasGrowsWithVisitsAndClamps) {
  const auto p = with_delta(0.1);
  EXPECT_DOUBLE_EQ(transition_probabilities(0, p).up, 0.5);
  EXPECT_DOUBLE_EQ(transition_probabilities(1, p).up, 0.6);
  EXPECT_DOUBLE_EQ(transition_probabilities(3, p).up, 0.8);
  EXPECT_DOUBLE_EQ(transition_probabilities(7, p).up, 1.0);
  EXPECT_DOUBLE_EQ(transition_probabilities(7, p).down, 0.0);
}

TEST(TransitionProbabilities, CapAndFirstStepConvention) {
  auto p = with_delta(0.1);
  p.visit_cap = 2;
  EXPECT_DOUBLE_EQ(transition_probabilities(5, p).up, 0.7);
  auto q = with_delta(0.1);
  q.first_step_symmetric = true;
  EXPECT_DOUBLE_EQ(transition_probabilities(1, q).up, 0.5);
  EXPECT_DOUBLE_EQ(transition_probabilities(2, q).up, 0.6);
}

TEST(ModificationParams, RejectsBadDelta) {
  EXPECT_THROW(with_delta(0.0).validate(), ConfigError);
  EXPECT_THROW(with_delta(0.51).validate(), ConfigError);
  EXPECT_NO_THROW(with_delta(0.5).validate());
  auto p = with_delta(0.1);
  p.visit_cap = 0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(SeriesScheme, DeltaAndExponent) {
  const SeriesScheme s{1.0, 0.5, 100};
  EXPECT_DOUBLE_EQ(s.delta_n(), 0.1);
  EXPECT_DOUBLE_EQ(s.space_exponent(), 0.75);
  EXPECT_DOUBLE_EQ((SeriesScheme{1.0, 1.5, 10}.space_exponent()), 0.5);
  EXPECT_THROW((SeriesScheme{1.0, 0.5, 1}.delta_n()), ConfigError);
  EXPECT_THROW((SeriesScheme{-1.0, 0.5, 100}.delta_n()), ConfigError);
}

TEST(SimulatePath, InvariantsHoldAcrossSeedsAndDeltas) {
  for (double d : {0.001, 0.05, 0.2, 0.5}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      mc::Rng rng(seed);
      const auto t = simulate_path(with_delta(d), 500, rng);
      ASSERT_EQ(t.steps(), 500u);
      ASSERT_NO_THROW(check_trajectory(t));
    }
  }
}

TEST(SimulatePath, OneUniformPerStepUpIffBelowP) {
  const auto params = with_delta(0.07);
  mc::Rng a(3);
  mc::Rng b(3);
  const auto t = simulate_path(params, 2000, a);
  int x = 0;
  int visits = 1;
  for (std::size_t k = 0; k < t.steps(); ++k) {
    const double p = std::min(0.5 + visits * 0.07, 1.0);
    x += b.uniform() < p ? 1 : -1;
    visits += x == 0;
    ASSERT_EQ(t.positions[k + 1], x);
  }
}

TEST(SimulatePath, DeltaHalfRunsAwayImmediately) {
  mc::Rng rng(1);
  const auto t = simulate_path(with_delta(0.5), 50, rng);
  for (std::size_t k = 0; k <= 50; ++k) EXPECT_EQ(t.positions[k], static_cast<int>(k));
}

TEST(SimulatePath, SameSeedSamePath) {
  mc::Rng a(9), b(9);
  EXPECT_EQ(simulate_path(with_delta(0.01), 1000, a).positions,
            simulate_path(with_delta(0.01), 1000, b).positions);
}

TEST(SimulateToLastReturn, ImmediateEscapeAtDeltaHalf) {
  mc::Rng rng(1);
  const auto s = simulate_to_last_return(with_delta(0.5), 10, 100, rng);
  EXPECT_EQ(s.returns_count, 0);
  EXPECT_EQ(s.last_return, 0);
  EXPECT_EQ(s.truncation_bias_bound, 0.0);
}

TEST(SimulateToLastReturn, ReturnTimesAreConsistent) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    mc::Rng rng(seed);
    const auto s = simulate_to_last_return(with_delta(0.05), 50, 1000000, rng);
    ASSERT_EQ(s.return_times.size(), static_cast<std::size_t>(s.returns_count) + 1);
    ASSERT_EQ(s.excursions.size(), static_cast<std::size_t>(s.returns_count));
    ASSERT_EQ(s.return_times.back(), s.last_return);
    ASSERT_LE(s.returns_count, 10);  // p reaches 1 after the tenth visit
    std::int64_t total = 0;
    for (auto e : s.excursions) {
      ASSERT_GE(e, 2);
      ASSERT_EQ(e % 2, 0);
      total += e;
    }
    ASSERT_EQ(total, s.last_return);
  }
}

TEST(SimulateToLastReturn, HorizonCapThrowsWithPartialStatistics) {
  mc::Rng rng(4);
  try {
    simulate_to_last_return(with_delta(0.001), 1000000, 10, rng);
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.partial().steps_simulated, 10);
    EXPECT_GT(e.partial().truncation_bias_bound, 0.0);
  }
}

TEST(FirstReturnTime, DegenerateProbabilities) {
  mc::Rng rng(1);
  EXPECT_FALSE(first_return_time(1.0, 5, 100, rng).has_value());
  EXPECT_THROW(first_return_time(0.0, 5, 100, rng), std::runtime_error);
  EXPECT_THROW(first_return_time(1.5, 5, 100, rng), ConfigError);
}

TEST(ReturnStatistics, ReadsReturnsOffAPath) {
  const auto t = from_positions({0, 1, 0, -1, 0, 1});
  const auto s = return_statistics(t);
  EXPECT_EQ(s.return_times, (std::vector<std::int64_t>{0, 2, 4}));
  EXPECT_EQ(s.excursions, (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(s.returns_count, 2);
  EXPECT_EQ(s.last_return, 4);
  EXPECT_EQ(s.truncation_bias_bound, 1.0);
  // Three visits, delta 0.1: p = 0.8 at X = 1, return probability q/p.
  const auto b = return_statistics(t, with_delta(0.1));
  EXPECT_DOUBLE_EQ(b.truncation_bias_bound, 0.25);
}

TEST(FurtherReturnProbability, GamblersRuin) {
  const StepLaw law{0.6, 0.4};
  EXPECT_DOUBLE_EQ(further_return_probability(0, law), 0.8);
  EXPECT_DOUBLE_EQ(further_return_probability(3, law), std::pow(0.4 / 0.6, 3));
  EXPECT_DOUBLE_EQ(further_return_probability(-2, law), 1.0);
  EXPECT_DOUBLE_EQ(further_return_probability(2, StepLaw{1.0, 0.0}), 0.0);
}

TEST(ScaledValue, InterpolatesLinearly) {
  const auto t = from_positions({0, 1, 2, 1, 0});
  const SeriesScheme s{1.0, 1.0, 4};  // beta = 1/2, scale 2
  EXPECT_DOUBLE_EQ(scaled_value(t, s, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(scaled_value(t, s, 0.625), 0.75);
  EXPECT_DOUBLE_EQ(scaled_value(t, s, 1.0), 0.0);
  EXPECT_THROW(scaled_value(t, s, 1.5), ConfigError);

  const auto path = scaled_path(t, s, TimeGrid{1.0, 8});
  ASSERT_EQ(path.size(), 9u);
  EXPECT_DOUBLE_EQ(path.values[5], 0.75);
}

TEST(CheckTrajectory, DetectsCorruption) {
  auto t = from_positions({0, 1, 0});
  t.visits[2] = 1;
  EXPECT_THROW(check_trajectory(t), std::logic_error);
  auto u = from_positions({0, 2});
  EXPECT_THROW(check_trajectory(u), std::logic_error);
}

TEST(SimulateToLastReturn, SmallBarrierLeavesTheLawExact) {
  // With barrier 3 most excursions that climb are decided by the escape draw
  // and the conditioned return, so this exercises both branches.
  constexpr int n = 40000;
  const double d = 0.05;
  std::vector<int> at_least(12, 0);
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    mc::Rng rng(mc::derive_seed(31, static_cast<std::uint64_t>(i)));
    const auto s = simulate_to_last_return(with_delta(d), 3, 100000000, rng);
    for (int k = 0; k <= s.returns_count; ++k) ++at_least[k];
    sum += static_cast<double>(s.last_return);
    sum2 += static_cast<double>(s.last_return) * static_cast<double>(s.last_return);
  }
  double survival = 1.0;
  for (int k = 1; k <= 9; ++k) {
    survival *= 1.0 - 2.0 * k * d;
    const double se = std::sqrt(survival * (1.0 - survival) / n);
    EXPECT_NEAR(static_cast<double>(at_least[k]) / n, survival, 4.5 * se) << k;
  }
  // Excursion-sum oracle for E[T_last]: sum_k 4 p_k q_k / (p_k - q_k) P(R >= k-1).
  double expected = 0.0;
  double reach = 1.0;
  for (int k = 1; 0.5 + k * d < 1.0; ++k) {
    const double p = 0.5 + k * d;
    expected += 4.0 * p * (1.0 - p) / (2.0 * p - 1.0) * reach;
    reach *= 1.0 - 2.0 * k * d;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, expected, 4.5 * se);
}
