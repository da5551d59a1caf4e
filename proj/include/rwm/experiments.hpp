#pragma once

// The ten registered experiments. Each one is a pure function of its resolved
// configuration: same config and seed, same report, for any worker count.

#include <string>
#include <vector>

#include "rwm/config.hpp"
#include "rwm/report.hpp"

namespace rwm::cli {

// Column schema of results.csv. Every row starts with experiment and seed.
const std::vector<std::string>& csv_columns(ExperimentId id);

ExperimentReport run_experiment(const ExperimentConfig& config);

// run_experiment followed by write_report; returns the exit code.
int run_and_write(const ExperimentConfig& config);

}  // namespace rwm::cli
