#pragma once

// Closed-form laws of the modified walk: survival of the returns count,
// limit laws, and excursion-length transforms.

#include <cstdint>
#include <functional>
#include <limits>
#include <string_view>

namespace rwm::analytics {

// Which closed form to use for E[T_last].
enum class LastReturnVariant {
  paper_display,      // 2 * sum_{k<=[1/(2 delta)]} (1/(k delta) - k delta) P(T_{k-1} < inf)
  excursion_derived,  // sum_k 4 p_k q_k / |p_k - q_k| * P(T_{k-1} < inf)
};

std::string_view to_string(LastReturnVariant v);
LastReturnVariant last_return_variant_from_string(std::string_view s);

// A nonnegative real that may be +infinity, without smuggling inf through
// arithmetic.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(false, v); }
  static ExtendedReal infinite() { return ExtendedReal(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  // Throws std::domain_error when infinite.
  double value() const;
  double value_or_inf() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

 private:
  ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

// P(R >= k) = prod_{i=1}^{k} max(1 - 2 i delta, 0), R = returns after time 0.
// Summed in log space when delta < 1e-4.
double returns_survival(std::int64_t k, double delta);

// Rayleigh CDF 1 - exp(-x^2/2), x >= 0.
double rayleigh_cdf(double x);

// CDF of 2 sqrt(c) * eta with eta Rayleigh: 1 - exp(-x^2 / (8c)).
double slope_limit_cdf(double x, double c);

// Limit law of sqrt(delta) * R implied by returns_survival:
// prod (1 - 2 i delta) ~ exp(-k^2 delta), so the CDF is 1 - exp(-x^2).
double returns_limit_cdf(double x);

// Terminal slope law 2 sqrt(c) * eta' with eta' ~ returns_limit_cdf:
// 1 - exp(-x^2 / (4c)).
double corrected_slope_cdf(double x, double c);

// E[s^tau ; tau < inf] = 1 - sqrt(1 - 4 p (1-p) s^2) for the first return
// time of a walk with constant up-probability p.
double return_time_transform(double s, double p);

// E[tau ; tau < inf] = 4 p q / |p - q|; infinite at p = 1/2.
ExtendedReal expected_return_time(double p);

// KS distance between the exact law of sqrt(delta) * R (atoms at k sqrt(delta),
// masses from returns_survival) and a continuous CDF. Pure summation.
double returns_law_ks_distance(double delta, const std::function<double(double)>& cdf);

double expected_last_return(double delta,
                            LastReturnVariant variant = LastReturnVariant::excursion_derived);

}  // namespace rwm::analytics
