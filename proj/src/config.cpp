#include "rwm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rwm/errors.hpp"
#include "rwm/limits.hpp"
#include "rwm/walk.hpp"

namespace rwm::cli {

using nlohmann::json;

namespace {

const std::vector<ExperimentInfo> kRegistry = {
    {ExperimentId::E1, "survival law of the returns count",
     "P(R >= k) = prod_{i<=k} (1 - 2 i delta)"},
    {ExperimentId::E2, "Rayleigh-type limit of sqrt(delta) * R",
     "sqrt(delta) R in law; symmetric-walk visit rate sqrt(2n/pi)"},
    {ExperimentId::E3, "expected last return time",
     "closed forms for E[T_last]; E[T_last]/n -> 0 for alpha < 1"},
    {ExperimentId::E4, "supercritical regime alpha > 1", "X_{nt}/sqrt(n) => W(t)"},
    {ExperimentId::E5, "subcritical regime alpha < 1",
     "X_{nt}/n^{1-alpha/2} => 2 sqrt(c) eta t; drift/noise split"},
    {ExperimentId::E6, "critical regime alpha = 1",
     "X_{nt}/sqrt(n) => local-time drift SDE; drift factor comparison"},
    {ExperimentId::E7, "discrete Radon-Nikodym density",
     "exact likelihood ratio against the symmetric walk; importance sampling"},
    {ExperimentId::E8, "limit density normalization and SDE calibration",
     "Novikov: E exp{int b dW - 1/2 int b^2 dt} = 1; Tanaka E l(1) = E|W(1)|"},
    {ExperimentId::E9, "capped-walk equivalence",
     "capped and uncapped laws agree before the cap binds"},
    {ExperimentId::E10, "long-horizon SDE slope",
     "X(T)/T -> limiting local time, law of 2 sqrt(c) eta"},
};

using Validator = std::function<void(const std::string&, const json&)>;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double as_real(const std::string& key, const json& v) {
  if (!v.is_number()) fail(key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key + " must be finite");
  return x;
}

std::int64_t as_integer(const std::string& key, const json& v) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && std::floor(x) == x && std::fabs(x) < 9.0e15) {
      return static_cast<std::int64_t>(x);
    }
  }
  fail(key + " must be an integer");
}

Validator real_in(double lo, bool lo_open, double hi, bool hi_open) {
  return [=](const std::string& key, const json& v) {
    const double x = as_real(key, v);
    const bool ok = (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
    if (!ok) {
      std::ostringstream os;
      os << key << " must lie in " << (lo_open ? "(" : "[") << lo << ", " << hi
         << (hi_open ? ")" : "]");
      fail(os.str());
    }
  };
}

Validator positive_real() {
  return [](const std::string& key, const json& v) {
    if (!(as_real(key, v) > 0.0)) fail(key + " must be positive");
  };
}

Validator integer_at_least(std::int64_t lo, std::int64_t hi = INT64_MAX) {
  return [=](const std::string& key, const json& v) {
    const auto x = as_integer(key, v);
    if (x < lo || x > hi) {
      fail(key + " must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  };
}

Validator list_of(Validator each) {
  return [each](const std::string& key, const json& v) {
    if (!v.is_array() || v.empty()) fail(key + " must be a nonempty list");
    for (const auto& item : v) each(key, item);
  };
}

Validator boolean() {
  return [](const std::string& key, const json& v) {
    if (!v.is_boolean()) fail(key + " must be true or false");
  };
}

Validator optional_of(Validator inner) {
  return [inner](const std::string& key, const json& v) {
    if (!v.is_null()) inner(key, v);
  };
}

Validator drift_variant() {
  return [](const std::string& key, const json& v) {
    if (!v.is_string()) fail(key + " entries must be strings");
    (void)limits::drift_variant_from_string(v.get<std::string>());
  };
}

const std::map<std::string, Validator>& validators() {
  static const std::map<std::string, Validator> table = [] {
    std::map<std::string, Validator> t;
    const auto delta = real_in(0.0, true, 0.5, false);
    const auto count = integer_at_least(2, 1'000'000'000);
    const auto tolerance = positive_real();
    t["delta"] = delta;
    t["delta_exact"] = delta;
    t["deltas"] = list_of(delta);
    t["c"] = positive_real();
    t["alpha"] = positive_real();
    t["n"] = integer_at_least(1, 1'000'000'000);
    for (const char* k : {"replicates", "mc_replicates", "is_replicates", "sde_replicates",
                          "symmetric_replicates", "trend_replicates", "calibration_replicates"}) {
      t[k] = count;
    }
    t["barrier"] = integer_at_least(1, INT32_MAX / 2);
    t["trend_barrier"] = integer_at_least(1, INT32_MAX / 2);
    t["horizon_cap"] = integer_at_least(1);
    t["k_max"] = integer_at_least(1, 1'000'000);
    t["se_multiplier"] = tolerance;
    t["bias_budget"] = real_in(0.0, false, 1.0, false);
    t["first_step_symmetric"] = boolean();
    for (const char* k : {"exact_tolerance", "sample_tolerance", "ks_tolerance",
                          "visit_rate_tolerance", "enumeration_tolerance",
                          "normalization_tolerance", "abs_mean_tolerance",
                          "local_time_tolerance"}) {
      t[k] = tolerance;
    }
    t["symmetric_steps"] = integer_at_least(1, INT32_MAX / 2);
    t["level"] = real_in(0.0, true, 1.0, true);
    t["is_level"] = real_in(0.0, true, 1.0, true);
    t["pvalue_floor"] = real_in(0.0, true, 1.0, true);
    t["flat_fraction_min"] = real_in(0.0, false, 1.0, false);
    t["trend_n"] = list_of(integer_at_least(1, 1'000'000'000));
    t["chord_n"] = list_of(integer_at_least(1, 1'000'000'000));
    t["times"] = list_of(real_in(0.0, true, 1.0, false));
    t["h"] = positive_real();
    t["calibration_h"] = positive_real();
    t["eps"] = positive_real();
    t["calibration_eps"] = positive_real();
    t["M"] = optional_of(real_in(0.0, false, 1e300, false));
    t["kappa"] = list_of(drift_variant());
    t["horizon"] = positive_real();
    t["horizons"] = list_of(positive_real());
    t["m"] = integer_at_least(1, 20);
    t["is_steps"] = integer_at_least(1, 60);
    t["path_bundle"] = integer_at_least(0, 10'000);
    t["grid_intervals"] = integer_at_least(1, 1'000'000);
    return t;
  }();
  return table;
}

const std::set<std::string> kGlobalKeys = {"experiment", "seed", "workers", "out", "formats"};

json parse_flag_value(const std::string& raw) {
  try {
    return json::parse(raw);
  } catch (const json::parse_error&) {
    return json(raw);
  }
}

void check_scheme(double c, double alpha, std::int64_t n) {
  walk::SeriesScheme s{c, alpha, n};
  (void)s.delta_n();
}

void check_sde(const json& p, double horizon, const char* h_key, const char* eps_key) {
  limits::SdeConfig sde;
  sde.c = p.contains("c") ? p["c"].get<double>() : 1.0;
  sde.time_step = p[h_key].get<double>();
  sde.band = p[eps_key].get<double>();
  sde.horizon = horizon;
  sde.validate();
}

// Cross-key constraints that the per-key validators cannot see.
void validate_experiment(ExperimentId id, const json& p) {
  switch (id) {
    case ExperimentId::E3:
      for (const auto& n : p["trend_n"]) {
        check_scheme(p["c"].get<double>(), p["alpha"].get<double>(), as_integer("trend_n", n));
      }
      break;
    case ExperimentId::E4:
    case ExperimentId::E6:
    case ExperimentId::E9:
      check_scheme(p["c"].get<double>(), p["alpha"].get<double>(), as_integer("n", p["n"]));
      break;
    case ExperimentId::E5:
      check_scheme(p["c"].get<double>(), p["alpha"].get<double>(), as_integer("n", p["n"]));
      for (const auto& n : p["chord_n"]) {
        check_scheme(p["c"].get<double>(), p["alpha"].get<double>(), as_integer("chord_n", n));
      }
      break;
    default:
      break;
  }
  switch (id) {
    case ExperimentId::E6:
    case ExperimentId::E9:
      check_sde(p, p["horizon"].get<double>(), "h", "eps");
      break;
    case ExperimentId::E8:
      check_sde(p, p["horizon"].get<double>(), "h", "eps");
      check_sde(p, 1.0, "calibration_h", "calibration_eps");
      break;
    case ExperimentId::E10:
      for (const auto& t : p["horizons"]) check_sde(p, t.get<double>(), "h", "eps");
      break;
    default:
      break;
  }
}

const json& param(const json& params, std::string_view key) {
  const auto it = params.find(std::string(key));
  if (it == params.end()) throw ConfigError("parameter '" + std::string(key) + "' is not defined");
  return *it;
}

}  // namespace

const std::vector<ExperimentInfo>& registry() { return kRegistry; }

const ExperimentInfo& info(ExperimentId id) {
  return kRegistry.at(static_cast<std::size_t>(id) - 1);
}

std::string to_string(ExperimentId id) { return "E" + std::to_string(static_cast<int>(id)); }

ExperimentId parse_experiment_id(std::string_view s) {
  if (s.size() >= 2 && s.size() <= 3 && (s[0] == 'E' || s[0] == 'e')) {
    const auto digits = s.substr(1);
    if (std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      int k = 0;
      for (char ch : digits) k = k * 10 + (ch - '0');
      if (k >= 1 && k <= 10) return static_cast<ExperimentId>(k);
    }
  }
  throw ConfigError("unknown experiment id '" + std::string(s) + "' (expected E1..E10)");
}

json default_parameters(ExperimentId id) {
  switch (id) {
    case ExperimentId::E1:
      return {{"delta", 0.05},        {"replicates", 200000}, {"barrier", 300},
              {"horizon_cap", 100000000}, {"k_max", 9},      {"se_multiplier", 4.0},
              {"bias_budget", 1e-12}, {"first_step_symmetric", false}};
    case ExperimentId::E2:
      return {{"delta_exact", 1e-6},        {"exact_tolerance", 0.01},
              {"deltas", json::array({1e-4})},           {"replicates", 5000},
              {"barrier", 1000},            {"horizon_cap", 1000000000},
              {"sample_tolerance", 0.03},   {"symmetric_steps", 10000},
              {"symmetric_replicates", 4000}, {"visit_rate_tolerance", 0.05},
              {"bias_budget", 1e-6},        {"first_step_symmetric", false}};
    case ExperimentId::E3:
      return {{"deltas", {0.25, 0.1, 0.05}},
              {"replicates", 200000},
              {"barrier", 300},
              {"horizon_cap", 1000000000},
              {"level", 0.95},
              {"c", 1.0},
              {"alpha", 0.5},
              {"trend_n", {1000, 10000, 100000}},
              {"trend_replicates", 20000},
              {"trend_barrier", 1000},
              {"bias_budget", 1e-6},
              {"first_step_symmetric", false}};
    case ExperimentId::E4:
      return {{"c", 1.0},           {"alpha", 1.5},          {"n", 20000},
              {"replicates", 5000}, {"times", {0.5, 1.0}},   {"ks_tolerance", 0.03}};
    case ExperimentId::E5:
      return {{"c", 1.0},
              {"alpha", 0.5},
              {"n", 20000},
              {"replicates", 5000},
              {"ks_tolerance", 0.05},
              {"chord_n", {2000, 20000}},
              {"path_bundle", 20},
              {"grid_intervals", 200}};
    case ExperimentId::E6:
      return {{"c", 1.0},
              {"alpha", 1.0},
              {"n", 20000},
              {"replicates", 5000},
              {"h", 1e-3},
              {"eps", 0.02},
              {"horizon", 1.0},
              {"M", nullptr},
              {"kappa", {"sqrt_c", "two_sqrt_c"}},
              {"sde_replicates", 5000},
              {"ks_tolerance", 0.05}};
    case ExperimentId::E7:
      return {{"m", 12},
              {"deltas", {0.05, 0.2}},
              {"enumeration_tolerance", 1e-12},
              {"normalization_tolerance", 1e-10},
              {"mc_replicates", 1000000},
              {"se_multiplier", 4.0},
              {"is_steps", 10},
              {"is_replicates", 200000},
              {"is_level", 0.99}};
    case ExperimentId::E8:
      return {{"c", 1.0},
              {"M", 2.0},
              {"h", 1e-3},
              {"eps", 0.02},
              {"horizon", 1.0},
              {"replicates", 50000},
              {"se_multiplier", 3.0},
              {"calibration_h", 1e-4},
              {"calibration_eps", 0.02},
              {"calibration_replicates", 10000},
              {"abs_mean_tolerance", 0.02},
              {"local_time_tolerance", 0.05},
              {"pvalue_floor", 0.01}};
    case ExperimentId::E9:
      return {{"c", 1.0},
              {"alpha", 1.0},
              {"n", 20000},
              {"M", 1.0},
              {"replicates", 5000},
              {"h", 1e-3},
              {"eps", 0.02},
              {"horizon", 1.0},
              {"kappa", {"sqrt_c", "two_sqrt_c"}},
              {"sde_replicates", 2000}};
    case ExperimentId::E10:
      return {{"c", 1.0},
              {"h", 1e-3},
              {"eps", 0.02},
              {"horizons", {5.0, 10.0}},
              {"replicates", 2000},
              {"kappa", {"sqrt_c", "two_sqrt_c"}},
              {"M", nullptr},
              {"ks_tolerance", 0.1},
              {"flat_fraction_min", 0.5}};
  }
  throw ConfigError("unknown experiment");
}

std::vector<std::string> all_parameter_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : validators()) keys.push_back(k);
  return keys;
}

ExperimentConfig parse_config(const json& file_document, const FlagOverrides& flags) {
  if (!file_document.is_null() && !file_document.is_object()) {
    throw ConfigError("config file must contain a JSON object");
  }
  json merged = file_document.is_null() ? json::object() : file_document;
  for (const auto& [key, raw] : flags) merged[key] = parse_flag_value(raw);

  if (!merged.contains("experiment")) throw ConfigError("missing experiment id (--experiment E<k>)");
  if (!merged["experiment"].is_string()) throw ConfigError("experiment must be a string like \"E1\"");

  ExperimentConfig cfg;
  cfg.experiment = parse_experiment_id(merged["experiment"].get<std::string>());
  cfg.params = default_parameters(cfg.experiment);

  for (const auto& [key, value] : merged.items()) {
    if (kGlobalKeys.contains(key)) continue;
    if (!cfg.params.contains(key)) {
      throw ConfigError("unknown key '" + key + "' for experiment " + to_string(cfg.experiment));
    }
    cfg.params[key] = value;
  }
  for (const auto& [key, value] : cfg.params.items()) {
    validators().at(key)(key, value);
  }
  validate_experiment(cfg.experiment, cfg.params);

  cfg.seed = kDefaultSeed;
  if (merged.contains("seed")) {
    const auto& s = merged["seed"];
    if (s.is_number_unsigned()) {
      cfg.seed = s.get<std::uint64_t>();
    } else if (s.is_number_integer() && s.get<std::int64_t>() >= 0) {
      cfg.seed = static_cast<std::uint64_t>(s.get<std::int64_t>());
    } else {
      throw ConfigError("seed must be a nonnegative 64-bit integer");
    }
  }
  if (merged.contains("workers")) {
    const auto w = as_integer("workers", merged["workers"]);
    if (w < 0 || w > 4096) throw ConfigError("workers must lie in [0, 4096]");
    cfg.workers = static_cast<unsigned>(w);
  }
  cfg.out_dir = merged.contains("out") ? std::filesystem::path(merged["out"].get<std::string>())
                                       : std::filesystem::path("rwm-out") / to_string(cfg.experiment);
  if (merged.contains("formats")) {
    const auto& f = merged["formats"];
    if (f.is_string()) {
      cfg.formats = {f.get<std::string>()};
    } else if (f.is_array()) {
      for (const auto& x : f) {
        if (!x.is_string()) throw ConfigError("formats must be strings");
        cfg.formats.push_back(x.get<std::string>());
      }
    } else {
      throw ConfigError("formats must be a list drawn from {csv, json}");
    }
    for (const auto& x : cfg.formats) {
      if (x != "csv" && x != "json") throw ConfigError("unknown output format '" + x + "'");
    }
  } else {
    cfg.formats = {"csv", "json"};
  }
  return cfg;
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const FlagOverrides& flags) {
  json doc = json::object();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file " + path->string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        doc = json::parse(text);
      } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path->string() + " is not valid JSON: " + e.what());
      }
    }
  }
  return parse_config(doc, flags);
}

double ExperimentConfig::real(std::string_view key) const {
  return as_real(std::string(key), param(params, key));
}

std::optional<double> ExperimentConfig::optional_real(std::string_view key) const {
  const auto& v = param(params, key);
  if (v.is_null()) return std::nullopt;
  return as_real(std::string(key), v);
}

std::int64_t ExperimentConfig::integer(std::string_view key) const {
  return as_integer(std::string(key), param(params, key));
}

bool ExperimentConfig::flag(std::string_view key) const { return param(params, key).get<bool>(); }

std::string ExperimentConfig::text(std::string_view key) const {
  return param(params, key).get<std::string>();
}

std::vector<double> ExperimentConfig::reals(std::string_view key) const {
  std::vector<double> out;
  for (const auto& v : param(params, key)) out.push_back(as_real(std::string(key), v));
  return out;
}

std::vector<std::int64_t> ExperimentConfig::integers(std::string_view key) const {
  std::vector<std::int64_t> out;
  for (const auto& v : param(params, key)) out.push_back(as_integer(std::string(key), v));
  return out;
}

std::vector<std::string> ExperimentConfig::texts(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& v : param(params, key)) out.push_back(v.get<std::string>());
  return out;
}

bool ExperimentConfig::wants(std::string_view format) const {
  for (const auto& f : formats) {
    if (f == format) return true;
  }
  return false;
}

json ExperimentConfig::to_json() const {
  return {{"experiment", to_string(experiment)},
          {"seed", seed},
          {"workers", workers},
          {"out", out_dir.string()},
          {"formats", formats},
          {"parameters", params}};
}

}  // namespace rwm::cli
