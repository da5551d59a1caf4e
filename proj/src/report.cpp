#include "rwm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "rwm/errors.hpp"

namespace rwm::cli {

using nlohmann::json;

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string out = "\"";
      for (char ch : v) {
        if (ch == '"') out += '"';
        out += ch;
      }
      return out + "\"";
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

void TruncationInfo::merge(const TruncationInfo& other) {
  const double total = static_cast<double>(replicates + other.replicates);
  if (total > 0) {
    mean_bound = (mean_bound * static_cast<double>(replicates) +
                  other.mean_bound * static_cast<double>(other.replicates)) /
                 total;
  }
  replicates += other.replicates;
  truncated += other.truncated;
  max_bound = std::max(max_bound, other.max_bound);
}

Gate& ExperimentReport::add_gate(Gate g) {
  gates.push_back(std::move(g));
  return gates.back();
}

const Gate* ExperimentReport::find_gate(std::string_view name) const {
  for (const auto& g : gates) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

bool ExperimentReport::gates_pass() const {
  return std::all_of(gates.begin(), gates.end(),
                     [](const Gate& g) { return !g.enforced || g.pass; });
}

int ExperimentReport::exit_code() const {
  if (truncation && truncation->exceeded()) return 3;
  return gates_pass() ? 0 : 1;
}

namespace {

json real_json(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

}  // namespace

json summary_json(const ExperimentReport& report, const ExperimentConfig& config) {
  json gates = json::array();
  for (const auto& g : report.gates) {
    gates.push_back({{"name", g.name},
                     {"value", real_json(g.value)},
                     {"comparison", g.comparison},
                     {"threshold", real_json(g.threshold)},
                     {"pass", g.pass},
                     {"enforced", g.enforced},
                     {"note", g.note}});
  }
  json ks = json::array();
  for (const auto& k : report.ks) {
    ks.push_back({{"name", k.name},
                  {"statistic", real_json(k.result.statistic)},
                  {"n_effective", real_json(k.result.n_effective)},
                  {"p_value", real_json(k.result.p_value)}});
  }
  json summaries = json::array();
  for (const auto& s : report.summaries) {
    json extra = json::object();
    for (const auto& [k, v] : s.extra) extra[k] = real_json(v);
    summaries.push_back({{"label", s.label},
                         {"sample_size", s.sample_size},
                         {"mean", real_json(s.mean)},
                         {"ci_half_width", real_json(s.ci_half_width)},
                         {"level", s.level},
                         {"extra", extra}});
  }
  json out = {{"experiment", to_string(report.experiment)},
              {"title", std::string(info(report.experiment).title)},
              {"anchor", std::string(info(report.experiment).anchor)},
              {"seed", config.seed},
              {"parameters", config.params},
              {"gates", gates},
              {"ks", ks},
              {"summaries", summaries},
              {"notes", report.notes},
              {"pass", report.gates_pass()},
              {"exit_code", report.exit_code()}};
  if (report.truncation) {
    const auto& t = *report.truncation;
    out["truncation"] = {{"replicates", t.replicates},
                         {"truncated", t.truncated},
                         {"max_bias_bound", real_json(t.max_bound)},
                         {"mean_bias_bound", real_json(t.mean_bound)},
                         {"bias_budget", t.budget},
                         {"exceeded", t.exceeded()}};
  }
  return out;
}

json manifest_json(const ExperimentConfig& config, const std::string& timestamp) {
  return {{"artifact", "rwm-lab"},
          {"version", RWM_VERSION},
          {"timestamp", timestamp},
          {"config", config.to_json()}};
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_report(const ExperimentReport& report, const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  if (config.wants("csv")) {
    write_text(config.out_dir / "results.csv", report.results.to_csv());
    {
      const fs::path plot_dir = config.out_dir / "plotdata";
      fs::create_directories(plot_dir);
      for (const auto& series : report.plots) {
        std::string text = "x,y\n";
        for (std::size_t i = 0; i < series.x.size(); ++i) {
          text += format_real(series.x[i]) + "," + format_real(series.y[i]) + "\n";
        }
        write_text(plot_dir / (series.name + ".csv"), text);
      }
    }
  }
  if (config.wants("json")) {
    write_text(config.out_dir / "summary.json", summary_json(report, config).dump(2) + "\n");
  }
  write_text(config.out_dir / "manifest.json",
             manifest_json(config, utc_timestamp()).dump(2) + "\n");
}

}  // namespace rwm::cli
