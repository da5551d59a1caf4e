#include "rwm/cli.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwm/config.hpp"
#include "rwm/errors.hpp"
#include "rwm/experiments.hpp"

namespace rwm::cli {

namespace {

void print_list(std::ostream& out) {
  for (const auto& e : registry()) {
    out << to_string(e.id) << "  " << e.title << "\n      " << e.anchor << '\n';
  }
}

void print_outcome(const ExperimentReport& report, const ExperimentConfig& cfg, std::ostream& out) {
  out << to_string(cfg.experiment) << " seed=" << cfg.seed << '\n';
  for (const auto& g : report.gates) {
    out << "  [" << (g.pass ? "PASS" : "FAIL") << (g.enforced ? "" : ", reported") << "] "
        << g.name << ": " << format_real(g.value) << ' ' << g.comparison << ' '
        << format_real(g.threshold) << '\n';
  }
  if (report.truncation) {
    const auto& t = *report.truncation;
    out << "  truncation: " << t.truncated << '/' << t.replicates
        << " horizon hits, mean bias bound " << format_real(t.mean_bound) << " (budget "
        << format_real(t.budget) << ")\n";
  }
  out << "  artifacts: " << cfg.out_dir.string() << '\n';
  out << "  exit code " << report.exit_code() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rwm-lab: experiments on random walks with modifications at zero"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RWM_VERSION);

  app.add_subcommand("list", "List the registered experiments");
  auto* run = app.add_subcommand("run", "Run one experiment and write its artifacts");
  // Parameters such as h and c would collide with -h / -c short flags.
  run->set_help_flag("--help", "Print this help message and exit");

  std::string experiment;
  std::optional<std::string> config_path;
  std::optional<std::string> seed;
  std::optional<std::string> workers;
  std::optional<std::string> out_dir;
  std::vector<std::string> formats;
  run->add_option("--experiment,-e", experiment, "Experiment id, E1 .. E10")->required();
  run->add_option("--config", config_path, "JSON file of parameters");
  run->add_option("--seed", seed, "Master seed (default " + std::to_string(kDefaultSeed) + ")");
  run->add_option("--workers", workers, "Worker threads, 0 = all cores");
  run->add_option("--out,-o", out_dir, "Output directory (default rwm-out/E<k>)");
  run->add_option("--formats", formats, "Artifacts to write: csv, json")->delimiter(',');

  // Every experiment parameter is also a flag; values are JSON literals.
  std::map<std::string, std::string> params;
  std::vector<std::pair<std::string, CLI::Option*>> param_options;
  for (const auto& key : all_parameter_keys()) {
    auto* opt = run->add_option("--" + key, params[key], "experiment parameter (JSON literal)");
    opt->group("Parameters");
    param_options.emplace_back(key, opt);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (!run->parsed()) {
    print_list(out);
    return 0;
  }

  using nlohmann::json;
  FlagOverrides flags;
  flags.emplace_back("experiment", json(experiment).dump());
  if (seed) flags.emplace_back("seed", *seed);
  if (workers) flags.emplace_back("workers", *workers);
  if (out_dir) flags.emplace_back("out", json(*out_dir).dump());
  if (!formats.empty()) flags.emplace_back("formats", json(formats).dump());
  for (const auto& [key, opt] : param_options) {
    if (opt->count() > 0) flags.emplace_back(key, params[key]);
  }

  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path ? std::optional<std::filesystem::path>(*config_path)
                                  : std::nullopt,
                      flags);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  }

  try {
    const auto report = run_experiment(cfg);
    write_report(report, cfg);
    print_outcome(report, cfg, out);
    return report.exit_code();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rwm::cli
