#pragma once

// Experiment configuration: a JSON document of parameters resolved as
// defaults < config file < command-line flags, validated against a strict
// per-experiment schema (unknown keys are errors).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rwm::cli {

enum class ExperimentId { E1 = 1, E2, E3, E4, E5, E6, E7, E8, E9, E10 };

struct ExperimentInfo {
  ExperimentId id;
  std::string_view title;
  std::string_view anchor;  // claim the experiment exercises
};

const std::vector<ExperimentInfo>& registry();
const ExperimentInfo& info(ExperimentId id);
std::string to_string(ExperimentId id);
ExperimentId parse_experiment_id(std::string_view s);

// Documented defaults of every tunable parameter of an experiment. The key
// set doubles as the schema: any other key is rejected.
nlohmann::json default_parameters(ExperimentId id);

struct ExperimentConfig {
  ExperimentId experiment = ExperimentId::E1;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 = hardware concurrency
  std::filesystem::path out_dir;
  std::vector<std::string> formats;  // subset of {"csv", "json"}
  nlohmann::json params;             // fully resolved experiment parameters

  double real(std::string_view key) const;
  std::optional<double> optional_real(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  bool flag(std::string_view key) const;
  std::string text(std::string_view key) const;
  std::vector<double> reals(std::string_view key) const;
  std::vector<std::int64_t> integers(std::string_view key) const;
  std::vector<std::string> texts(std::string_view key) const;

  bool wants(std::string_view format) const;

  // Full resolved configuration, as echoed into manifest.json.
  nlohmann::json to_json() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20260417ULL;

// Raw key/value overrides as given on the command line. Values are parsed as
// JSON literals when possible (0.5, 1e4, true, [1,2], null), else as strings.
using FlagOverrides = std::vector<std::pair<std::string, std::string>>;

// Throws ConfigError with a descriptive message on any schema violation.
ExperimentConfig parse_config(const nlohmann::json& file_document, const FlagOverrides& flags);

// Reads `path` (if given) as JSON and resolves it together with the flags.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const FlagOverrides& flags);

// Every parameter key any experiment accepts (for CLI flag registration).
std::vector<std::string> all_parameter_keys();

}  // namespace rwm::cli
