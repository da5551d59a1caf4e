#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "rwm/config.hpp"
#include "rwm/errors.hpp"

using namespace rwm;
using namespace rwm::cli;
using nlohmann::json;

namespace {

std::string rejection(const json& file, const FlagOverrides& flags) {
  try {
    parse_config(file, flags);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ExperimentIds, ParseAndRegistry) {
  EXPECT_EQ(parse_experiment_id("E3"), ExperimentId::E3);
  EXPECT_EQ(parse_experiment_id("e10"), ExperimentId::E10);
  for (const char* bad : {"E0", "E11", "E", "X1", "E1x", "E99999999999"}) {
    EXPECT_THROW(parse_experiment_id(bad), ConfigError) << bad;
  }
  ASSERT_EQ(registry().size(), 10u);
  for (const auto& e : registry()) {
    EXPECT_FALSE(e.title.empty());
    EXPECT_FALSE(e.anchor.empty());
    EXPECT_EQ(parse_experiment_id(to_string(e.id)), e.id);
  }
}

TEST(ParseConfig, DefaultsAndGlobals) {
  const auto cfg = parse_config(json{{"experiment", "E1"}}, {});
  EXPECT_EQ(cfg.experiment, ExperimentId::E1);
  EXPECT_EQ(cfg.seed, kDefaultSeed);
  EXPECT_EQ(cfg.workers, 0u);
  EXPECT_DOUBLE_EQ(cfg.real("delta"), 0.05);
  EXPECT_EQ(cfg.integer("replicates"), 200000);
  EXPECT_FALSE(cfg.flag("first_step_symmetric"));
  EXPECT_TRUE(cfg.wants("csv"));
  EXPECT_TRUE(cfg.wants("json"));
  EXPECT_EQ(cfg.out_dir, std::filesystem::path("rwm-out") / "E1");
}

TEST(ParseConfig, FlagsOverrideFileOverrideDefaults) {
  const json file{{"experiment", "E1"}, {"delta", 0.1}, {"barrier", 50}, {"seed", 9}};
  const auto cfg = parse_config(file, {{"delta", "0.2"}, {"workers", "2"}});
  EXPECT_DOUBLE_EQ(cfg.real("delta"), 0.2);
  EXPECT_EQ(cfg.integer("barrier"), 50);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.workers, 2u);
  EXPECT_EQ(cfg.integer("replicates"), 200000);
}

TEST(ParseConfig, ListAndNullValues) {
  const auto cfg = parse_config(json::object(), {{"experiment", "E6"},
                                                 {"kappa", "[\"two_c\"]"},
                                                 {"M", "1.5"}});
  EXPECT_EQ(cfg.texts("kappa"), std::vector<std::string>{"two_c"});
  EXPECT_EQ(cfg.optional_real("M"), 1.5);
  const auto dflt = parse_config(json{{"experiment", "E6"}}, {});
  EXPECT_FALSE(dflt.optional_real("M").has_value());
  const auto e3 = parse_config(json{{"experiment", "E3"}}, {{"trend_n", "[100, 1000]"}});
  EXPECT_EQ(e3.integers("trend_n"), (std::vector<std::int64_t>{100, 1000}));
}

TEST(ParseConfig, RejectionSuite) {
  const json e1{{"experiment", "E1"}};
  EXPECT_EQ(rejection(e1, {{"bogus", "1"}}), "unknown key 'bogus' for experiment E1");
  EXPECT_NE(rejection(e1, {{"delta", "0.7"}}).find("delta must lie in (0, 0.5]"),
            std::string::npos);
  EXPECT_NE(rejection(e1, {{"delta", "0"}}), "");
  EXPECT_NE(rejection(e1, {{"delta", "\"x\""}}), "");
  EXPECT_NE(rejection(e1, {{"replicates", "0"}}), "");
  EXPECT_NE(rejection(e1, {{"replicates", "2.5"}}), "");
  EXPECT_NE(rejection(e1, {{"seed", "-1"}}), "");
  EXPECT_NE(rejection(e1, {{"workers", "-2"}}), "");
  EXPECT_NE(rejection(e1, {{"formats", "[\"pdf\"]"}}), "");
  EXPECT_NE(rejection(e1, {{"M", "1"}}), "");  // key of another experiment
  EXPECT_NE(rejection(json::object(), {}), "");
  EXPECT_NE(rejection(json{{"experiment", "E12"}}, {}), "");
  EXPECT_NE(rejection(json::array(), {}), "");
  EXPECT_NE(rejection(json{{"experiment", "E6"}}, {{"kappa", "[\"three_c\"]"}}), "");
  EXPECT_NE(rejection(json{{"experiment", "E8"}}, {{"h", "0.3"}}), "");
  EXPECT_NE(rejection(json{{"experiment", "E4"}}, {{"n", "-5"}}), "");
  // delta_n = c n^-alpha must stay in (0, 1/2].
  EXPECT_NE(rejection(json{{"experiment", "E5"}}, {{"n", "2"}}), "");
}

TEST(LoadConfig, ReadsJsonFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "rwm_config_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "good.json";
  std::ofstream(good) << R"({"experiment": "E4", "n": 1000, "times": [1.0]})";
  const auto cfg = load_config(good, {{"seed", "3"}});
  EXPECT_EQ(cfg.experiment, ExperimentId::E4);
  EXPECT_EQ(cfg.integer("n"), 1000);
  EXPECT_EQ(cfg.seed, 3u);

  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{not json";
  EXPECT_THROW(load_config(bad, {}), ConfigError);
  EXPECT_THROW(load_config(dir / "missing.json", {{"experiment", "E1"}}), ConfigError);
}

TEST(ParseConfig, ResolvedConfigRoundTrips) {
  const auto cfg = parse_config(json{{"experiment", "E2"}}, {{"seed", "17"}});
  const auto j = cfg.to_json();
  EXPECT_EQ(j["experiment"], "E2");
  EXPECT_EQ(j["seed"], 17);
  json file = j["parameters"];
  file["experiment"] = "E2";
  file["seed"] = 17;
  EXPECT_EQ(parse_config(file, {}).to_json(), j);
}

TEST(AllParameterKeys, CoversEveryExperiment) {
  const auto keys = all_parameter_keys();
  for (const auto& e : registry()) {
    const auto defaults = default_parameters(e.id);
    for (const auto& [k, v] : defaults.items()) {
      EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
    }
  }
}
