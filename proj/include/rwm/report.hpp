#pragma once

// Experiment outputs: a fixed-column results table, gates with pass/fail,
// KS and mean summaries, and x/y plot series. Serialized to results.csv,
// summary.json, manifest.json and plotdata/*.csv.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rwm/config.hpp"
#include "rwm/stats.hpp"

namespace rwm::cli {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

// Floats use 17 significant digits so that values round-trip exactly.
std::string format_real(double x);
std::string format_cell(const Cell& c);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
};

struct Gate {
  std::string name;
  double value = 0.0;
  std::string comparison;  // "<=", ">=", "==", "in", "decreasing", ...
  double threshold = 0.0;
  bool pass = false;
  bool enforced = true;  // unenforced gates are reported but do not set the exit code
  std::string note;
};

struct PlotSeries {
  std::string name;  // file stem under plotdata/
  std::vector<double> x;
  std::vector<double> y;
};

struct TruncationInfo {
  std::size_t replicates = 0;
  std::size_t truncated = 0;  // horizon_cap hits
  double max_bound = 0.0;
  double mean_bound = 0.0;
  double budget = 0.0;

  bool exceeded() const { return truncated > 0 || mean_bound > budget; }
  void merge(const TruncationInfo& other);
};

struct NamedKs {
  std::string name;
  stats::KsResult result;
};

struct ExperimentReport {
  ExperimentId experiment = ExperimentId::E1;
  Table results;
  std::vector<Gate> gates;
  std::vector<NamedKs> ks;
  std::vector<stats::SummaryRecord> summaries;
  nlohmann::json notes = nlohmann::json::object();
  std::vector<PlotSeries> plots;
  std::optional<TruncationInfo> truncation;

  Gate& add_gate(Gate g);
  const Gate* find_gate(std::string_view name) const;
  bool gates_pass() const;  // all enforced gates
  // 0 pass, 1 gate failure, 3 truncation beyond the bias budget.
  int exit_code() const;
};

nlohmann::json summary_json(const ExperimentReport& report, const ExperimentConfig& config);
nlohmann::json manifest_json(const ExperimentConfig& config, const std::string& timestamp);

// Writes every requested artifact under config.out_dir.
void write_report(const ExperimentReport& report, const ExperimentConfig& config);

}  // namespace rwm::cli
