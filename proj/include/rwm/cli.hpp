#pragma once

#include <iosfwd>

namespace rwm::cli {

// Entry point of rwm-lab. Exit codes: 0 all enforced gates pass, 1 gate
// failure (or an unexpected runtime error), 2 configuration error, 3 Monte
// Carlo truncation beyond the bias budget.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rwm::cli
