#pragma once

namespace rwm {

// Standard normal CDF.
double normal_cdf(double x);

// Inverse of the standard normal CDF for p in (0, 1), Wichura's AS 241
// (PPND16), relative accuracy about 1e-16. Only rational functions, log and
// sqrt are used, so results are reproducible wherever IEEE-754 log/sqrt are.
// Returns -inf / +inf at p = 0 / 1.
double normal_quantile(double p);

}  // namespace rwm
