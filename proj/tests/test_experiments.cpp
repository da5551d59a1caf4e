#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rwm/cli.hpp"
#include "rwm/config.hpp"
#include "rwm/experiments.hpp"

using namespace rwm::cli;
namespace fs = std::filesystem;

namespace {

// Small, fast parameter sets; the full-size runs live in the acceptance suite.
FlagOverrides small(ExperimentId id) {
  switch (id) {
    case ExperimentId::E1:
      return {{"replicates", "3000"}};
    case ExperimentId::E2:
      return {{"replicates", "300"}, {"deltas", "[0.01]"}, {"symmetric_replicates", "200"},
              {"symmetric_steps", "1000"}};
    case ExperimentId::E3:
      return {{"replicates", "2000"}, {"trend_n", "[100, 1000]"}, {"trend_replicates", "500"},
              {"trend_barrier", "200"}};
    case ExperimentId::E4:
      return {{"n", "2000"}, {"replicates", "300"}};
    case ExperimentId::E5:
      return {{"n", "2000"}, {"replicates", "300"}, {"chord_n", "[200, 2000]"},
              {"path_bundle", "3"}, {"grid_intervals", "20"}};
    case ExperimentId::E6:
      return {{"n", "2000"}, {"replicates", "300"}, {"sde_replicates", "300"}, {"h", "0.01"}};
    case ExperimentId::E7:
      return {{"m", "6"}, {"mc_replicates", "20000"}, {"is_replicates", "5000"}};
    case ExperimentId::E8:
      return {{"replicates", "1000"}, {"calibration_replicates", "500"},
              {"calibration_h", "0.001"}};
    case ExperimentId::E9:
      return {{"n", "2000"}, {"replicates", "300"}, {"sde_replicates", "200"}};
    case ExperimentId::E10:
      return {{"replicates", "200"}, {"h", "0.01"}};
  }
  return {};
}

ExperimentConfig config_for(ExperimentId id, FlagOverrides extra = {}) {
  auto flags = small(id);
  flags.insert(flags.begin(), {"experiment", "\"" + to_string(id) + "\""});
  flags.insert(flags.end(), extra.begin(), extra.end());
  return parse_config(nlohmann::json::object(), flags);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "rwm-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

const fs::path kRoot = fs::temp_directory_path() / "rwm_experiment_tests";

}  // namespace

TEST(CsvSchema, GoldenColumns) {
  using V = std::vector<std::string>;
  EXPECT_EQ(csv_columns(ExperimentId::E1), (V{"experiment", "seed", "delta", "replicates",
                                              "barrier", "k", "exact", "mc_estimate", "stderr",
                                              "pass"}));
  EXPECT_EQ(csv_columns(ExperimentId::E2),
            (V{"experiment", "seed", "check", "delta", "replicates", "reference", "statistic",
               "p_value", "threshold", "pass", "enforced"}));
  EXPECT_EQ(csv_columns(ExperimentId::E3),
            (V{"experiment", "seed", "kind", "delta", "n", "replicates", "barrier", "mc_mean",
               "ci_half_width", "excursion_derived", "paper_display", "ratio_over_n", "pass"}));
  EXPECT_EQ(csv_columns(ExperimentId::E4),
            (V{"experiment", "seed", "c", "alpha", "n", "replicates", "t", "mean", "variance",
               "ks_statistic", "p_value", "threshold", "pass"}));
  EXPECT_EQ(csv_columns(ExperimentId::E5),
            (V{"experiment", "seed", "c", "alpha", "n", "replicates", "kind", "reference",
               "statistic", "p_value", "threshold", "pass", "enforced"}));
  EXPECT_EQ(csv_columns(ExperimentId::E6),
            (V{"experiment", "seed", "c", "alpha", "n", "replicates", "kappa_variant", "kappa",
               "h", "eps", "sde_replicates", "ks_statistic", "p_value", "threshold", "pass",
               "best"}));
  EXPECT_EQ(csv_columns(ExperimentId::E7), (V{"experiment", "seed", "check", "delta", "m",
                                              "replicates", "statistic", "threshold", "pass"}));
  EXPECT_EQ(csv_columns(ExperimentId::E8),
            (V{"experiment", "seed", "check", "c", "M", "h", "eps", "replicates", "estimate",
               "reference", "tolerance", "pass"}));
  EXPECT_EQ(csv_columns(ExperimentId::E9),
            (V{"experiment", "seed", "check", "kappa_variant", "M", "cap", "replicates",
               "event_count", "mismatches", "differ_off_event", "pass"}));
  EXPECT_EQ(csv_columns(ExperimentId::E10),
            (V{"experiment", "seed", "kappa_variant", "kappa", "T", "h", "eps", "replicates",
               "median_slope", "flat_fraction", "ks_statistic", "ks_corrected", "threshold",
               "pass"}));
}

class EveryExperiment : public ::testing::TestWithParam<ExperimentId> {};

TEST_P(EveryExperiment, RunsWritesAndIsDeterministic) {
  const auto id = GetParam();
  const auto dir1 = kRoot / (to_string(id) + "_w1");
  const auto dir3 = kRoot / (to_string(id) + "_w3");
  fs::remove_all(dir1);
  fs::remove_all(dir3);
  run_and_write(config_for(id, {{"workers", "1"}, {"out", "\"" + dir1.string() + "\""}}));
  run_and_write(config_for(id, {{"workers", "3"}, {"out", "\"" + dir3.string() + "\""}}));

  for (const char* f : {"results.csv", "summary.json", "manifest.json"}) {
    ASSERT_TRUE(fs::exists(dir1 / f)) << f;
  }
  ASSERT_TRUE(fs::is_directory(dir1 / "plotdata"));
  EXPECT_EQ(slurp(dir1 / "results.csv"), slurp(dir3 / "results.csv"));
  EXPECT_EQ(slurp(dir1 / "summary.json"), slurp(dir3 / "summary.json"));

  const auto csv = slurp(dir1 / "results.csv");
  std::string header;
  for (const auto& c : csv_columns(id)) header += (header.empty() ? "" : ",") + c;
  EXPECT_EQ(csv.substr(0, csv.find('\n')), header);
  EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 1);

  const auto manifest = nlohmann::json::parse(slurp(dir1 / "manifest.json"));
  EXPECT_EQ(manifest["config"]["experiment"], to_string(id));
  EXPECT_TRUE(manifest.contains("timestamp"));
  const auto summary = nlohmann::json::parse(slurp(dir1 / "summary.json"));
  EXPECT_FALSE(summary.contains("timestamp"));
}

INSTANTIATE_TEST_SUITE_P(All, EveryExperiment,
                         ::testing::Values(ExperimentId::E1, ExperimentId::E2, ExperimentId::E3,
                                           ExperimentId::E4, ExperimentId::E5, ExperimentId::E6,
                                           ExperimentId::E7, ExperimentId::E8, ExperimentId::E9,
                                           ExperimentId::E10),
                         [](const auto& info) { return to_string(info.param); });

TEST(Experiments, SeedChangesResults) {
  const auto a = run_experiment(config_for(ExperimentId::E1, {{"seed", "1"}}));
  const auto b = run_experiment(config_for(ExperimentId::E1, {{"seed", "2"}}));
  EXPECT_NE(a.results.to_csv(), b.results.to_csv());
}

TEST(Experiments, CapEquivalenceHoldsExactly) {
  const auto r = run_experiment(config_for(ExperimentId::E9));
  EXPECT_TRUE(r.gates_pass());
}

TEST(Cli, ListAndHelp) {
  std::string text;
  EXPECT_EQ(cli({"list"}, &text), 0);
  EXPECT_NE(text.find("E10"), std::string::npos);
  EXPECT_EQ(cli({"run", "--help"}, &text), 0);
  EXPECT_NE(text.find("--delta"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const auto out = (kRoot / "cli").string();
  std::string text;
  EXPECT_EQ(cli({"run", "--experiment", "E1", "--delta", "0.7", "--out", out}, &text), 2);
  EXPECT_NE(text.find("delta must lie in (0, 0.5]"), std::string::npos);
  EXPECT_EQ(cli({"run", "--experiment", "E1", "--M", "1", "--out", out}), 2);
  EXPECT_EQ(cli({"run", "--experiment", "E42", "--out", out}), 2);
  EXPECT_EQ(cli({"run", "--out", out}), 2);
  EXPECT_EQ(cli({"run", "--experiment", "E1", "--config", "/nonexistent.json"}), 2);
  EXPECT_EQ(cli({"bogus"}), 2);

  EXPECT_EQ(cli({"run", "-e", "E1", "--replicates", "2000", "--out", out}), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "results.csv"));
  // A horizon of one step truncates every replicate.
  EXPECT_EQ(cli({"run", "-e", "E1", "--replicates", "100", "--horizon_cap", "1", "--out", out}),
            3);
  // The exact law of sqrt(delta) R sits far from the Rayleigh CDF.
  EXPECT_EQ(cli({"run", "-e", "E2", "--replicates", "100", "--deltas", "[0.01]",
                 "--symmetric_replicates", "100", "--symmetric_steps", "100", "--out", out}),
            1);
}

TEST(Cli, FormatsSelectArtifacts) {
  const auto out = kRoot / "formats";
  fs::remove_all(out);
  EXPECT_EQ(cli({"run", "-e", "E7", "--m", "4", "--mc_replicates", "1000", "--is_replicates",
                 "1000", "--formats", "csv", "--out", out.string()}),
            0);
  EXPECT_TRUE(fs::exists(out / "results.csv"));
  EXPECT_FALSE(fs::exists(out / "summary.json"));
}
