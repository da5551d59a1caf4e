#include "rwm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "rwm/analytics.hpp"
#include "rwm/errors.hpp"
#include "rwm/limits.hpp"
#include "rwm/mc.hpp"
#include "rwm/normal.hpp"
#include "rwm/stats.hpp"
#include "rwm/walk.hpp"

namespace rwm::cli {

using nlohmann::json;

const std::vector<std::string>& csv_columns(ExperimentId id) {
  static const std::map<ExperimentId, std::vector<std::string>> columns = {
      {ExperimentId::E1,
       {"experiment", "seed", "delta", "replicates", "barrier", "k", "exact", "mc_estimate",
        "stderr", "pass"}},
      {ExperimentId::E2,
       {"experiment", "seed", "check", "delta", "replicates", "reference", "statistic", "p_value",
        "threshold", "pass", "enforced"}},
      {ExperimentId::E3,
       {"experiment", "seed", "kind", "delta", "n", "replicates", "barrier", "mc_mean",
        "ci_half_width", "excursion_derived", "paper_display", "ratio_over_n", "pass"}},
      {ExperimentId::E4,
       {"experiment", "seed", "c", "alpha", "n", "replicates", "t", "mean", "variance",
        "ks_statistic", "p_value", "threshold", "pass"}},
      {ExperimentId::E5,
       {"experiment", "seed", "c", "alpha", "n", "replicates", "kind", "reference", "statistic",
        "p_value", "threshold", "pass", "enforced"}},
      {ExperimentId::E6,
       {"experiment", "seed", "c", "alpha", "n", "replicates", "kappa_variant", "kappa", "h",
        "eps", "sde_replicates", "ks_statistic", "p_value", "threshold", "pass", "best"}},
      {ExperimentId::E7,
       {"experiment", "seed", "check", "delta", "m", "replicates", "statistic", "threshold",
        "pass"}},
      {ExperimentId::E8,
       {"experiment", "seed", "check", "c", "M", "h", "eps", "replicates", "estimate",
        "reference", "tolerance", "pass"}},
      {ExperimentId::E9,
       {"experiment", "seed", "check", "kappa_variant", "M", "cap", "replicates", "event_count",
        "mismatches", "differ_off_event", "pass"}},
      {ExperimentId::E10,
       {"experiment", "seed", "kappa_variant", "kappa", "T", "h", "eps", "replicates",
        "median_slope", "flat_fraction", "ks_statistic", "ks_corrected", "threshold", "pass"}},
  };
  return columns.at(id);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Cell count(std::size_t n) { return static_cast<std::int64_t>(n); }

Cell maybe(const std::optional<double>& x) {
  return x ? Cell{*x} : Cell{std::string{}};
}

class Builder {
 public:
  explicit Builder(const ExperimentConfig& cfg) : cfg_(cfg) {
    report_.experiment = cfg.experiment;
    report_.results.columns = csv_columns(cfg.experiment);
  }

  void row(std::vector<Cell> cells) {
    std::vector<Cell> r{to_string(cfg_.experiment), std::to_string(cfg_.seed)};
    r.insert(r.end(), std::make_move_iterator(cells.begin()), std::make_move_iterator(cells.end()));
    report_.results.add_row(std::move(r));
  }

  Gate& gate(std::string name, double value, std::string comparison, double threshold,
             bool pass, bool enforced = true, std::string note = {}) {
    return report_.add_gate({std::move(name), value, std::move(comparison), threshold, pass,
                             enforced, std::move(note)});
  }

  void ks(std::string name, stats::KsResult r) { report_.ks.push_back({std::move(name), r}); }
  void summary(stats::SummaryRecord s) { report_.summaries.push_back(std::move(s)); }
  void plot(PlotSeries p) { report_.plots.push_back(std::move(p)); }
  json& notes() { return report_.notes; }
  void truncation(const TruncationInfo& t) {
    if (report_.truncation) {
      report_.truncation->merge(t);
    } else {
      report_.truncation = t;
    }
  }

  mc::SeedPlan plan(std::uint64_t tag, std::size_t count) const {
    return mc::SeedPlan{cfg_.seed, 0}.child(tag, count);
  }

  ExperimentReport finish() { return std::move(report_); }

 private:
  const ExperimentConfig& cfg_;
  ExperimentReport report_;
};

template <class R>
std::vector<R> all_or_throw(mc::ReplicateBatch<R> batch, std::string_view what) {
  if (!batch.ok()) {
    const auto& e = batch.errors.front();
    throw std::runtime_error(std::string(what) + ": replicate " + std::to_string(e.index) +
                             " failed: " + e.message + " (" + std::to_string(batch.errors.size()) +
                             " failures)");
  }
  return batch.successes();
}

PlotSeries ecdf_series(std::string name, std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 2000);
  PlotSeries s{std::move(name), {}, {}};
  for (std::size_t i = 0; i < n; i += stride) {
    s.x.push_back(samples[i]);
    s.y.push_back(static_cast<double>(i + 1) / static_cast<double>(n));
  }
  return s;
}

PlotSeries curve(std::string name, double lo, double hi, const std::function<double(double)>& f) {
  PlotSeries s{std::move(name), {}, {}};
  constexpr int kPoints = 201;
  for (int i = 0; i < kPoints; ++i) {
    const double x = lo + (hi - lo) * i / (kPoints - 1);
    s.x.push_back(x);
    s.y.push_back(f(x));
  }
  return s;
}

double sample_mean(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

std::string real_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

walk::ModificationParams returns_params(const ExperimentConfig& cfg, double delta) {
  walk::ModificationParams p;
  p.delta = delta;
  p.first_step_symmetric = cfg.flag("first_step_symmetric");
  return p;
}

std::optional<std::int32_t> visit_cap(std::optional<double> m, double delta) {
  if (!m) return std::nullopt;
  const double cap = std::floor(*m / std::sqrt(delta));
  if (cap < 1.0) throw ConfigError("M / sqrt(delta) must be at least 1 to form a visit cap");
  if (cap > 2e9) return std::nullopt;
  return static_cast<std::int32_t>(cap);
}

std::vector<limits::DriftVariant> kappas(const ExperimentConfig& cfg) {
  std::vector<limits::DriftVariant> out;
  for (const auto& s : cfg.texts("kappa")) out.push_back(limits::drift_variant_from_string(s));
  return out;
}

// --- last-return sampling (E1-E3) -------------------------------------------

struct LastReturnSample {
  std::int64_t returns = 0;
  std::int64_t last_return = 0;
};

struct LastReturnRun {
  std::vector<LastReturnSample> samples;
  TruncationInfo truncation;
};

LastReturnRun run_last_returns(const walk::ModificationParams& params, std::int32_t barrier,
                               std::int64_t horizon_cap, std::size_t replicates,
                               const mc::SeedPlan& plan, unsigned workers, double budget) {
  struct Outcome {
    LastReturnSample sample;
    double bound;
    bool truncated;
  };
  auto batch = mc::run_replicates(
      [&](std::size_t, std::uint64_t seed) -> Outcome {
        mc::Rng rng(seed);
        try {
          const auto s = walk::simulate_to_last_return(params, barrier, horizon_cap, rng);
          return {{s.returns_count, s.last_return}, s.truncation_bias_bound, false};
        } catch (const walk::TruncationError& e) {
          return {{}, e.partial().truncation_bias_bound, true};
        }
      },
      replicates, plan, workers);

  LastReturnRun run;
  run.truncation.budget = budget;
  run.truncation.replicates = replicates;
  double bound_sum = 0.0;
  for (const auto& o : all_or_throw(std::move(batch), "last-return sampling")) {
    bound_sum += o.bound;
    run.truncation.max_bound = std::max(run.truncation.max_bound, o.bound);
    if (o.truncated) {
      ++run.truncation.truncated;
    } else {
      run.samples.push_back(o.sample);
    }
  }
  run.truncation.mean_bound = replicates ? bound_sum / static_cast<double>(replicates) : 0.0;
  return run;
}

// False (with a failing gate) when horizon hits left too few replicates to
// estimate anything; the truncation record then decides the exit code.
bool enough_samples(Builder& b, const LastReturnRun& run, const std::string& what) {
  if (run.samples.size() >= 2) return true;
  b.gate("complete_replicates_" + what, static_cast<double>(run.samples.size()), ">=", 2.0, false,
         true, "replicates that escaped before horizon_cap");
  return false;
}

// --- E1: survival of the returns count --------------------------------------

ExperimentReport run_e1(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const double delta = cfg.real("delta");
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const auto barrier = static_cast<std::int32_t>(cfg.integer("barrier"));
  const double z = cfg.real("se_multiplier");

  auto run = run_last_returns(returns_params(cfg, delta), barrier, cfg.integer("horizon_cap"),
                              replicates, b.plan(1, replicates), cfg.workers,
                              cfg.real("bias_budget"));
  b.truncation(run.truncation);
  if (!enough_samples(b, run, "delta_" + real_label(delta))) return b.finish();
  const double n = static_cast<double>(run.samples.size());

  PlotSeries exact_series{"survival_exact", {}, {}};
  PlotSeries mc_series{"survival_mc", {}, {}};
  for (std::int64_t k = 0; k <= cfg.integer("k_max"); ++k) {
    const double exact = analytics::returns_survival(k, delta);
    const auto hits = std::count_if(run.samples.begin(), run.samples.end(),
                                    [k](const LastReturnSample& s) { return s.returns >= k; });
    const double estimate = static_cast<double>(hits) / n;
    const double se = stats::binomial_se(exact, n);
    const double diff = std::fabs(estimate - exact);
    const bool pass = se > 0.0 ? diff <= z * se : diff == 0.0;
    b.row({delta, count(run.samples.size()), std::int64_t{barrier}, k, exact, estimate, se, pass});
    b.gate("survival_k" + std::to_string(k), diff, "<=", z * se, pass, true,
           "|P_hat(R>=k) - P(R>=k)| against se_multiplier binomial standard errors");
    exact_series.x.push_back(static_cast<double>(k));
    exact_series.y.push_back(exact);
    mc_series.x.push_back(static_cast<double>(k));
    mc_series.y.push_back(estimate);
  }
  b.plot(std::move(exact_series));
  b.plot(std::move(mc_series));
  return b.finish();
}

// --- E2: limit law of sqrt(delta) R ----------------------------------------

ExperimentReport run_e2(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const std::function<double(double)> rayleigh = analytics::rayleigh_cdf;
  const std::function<double(double)> corrected = analytics::returns_limit_cdf;

  const double delta_exact = cfg.real("delta_exact");
  const double exact_tol = cfg.real("exact_tolerance");
  for (const auto& [name, cdf, enforced] :
       {std::tuple{"rayleigh", rayleigh, true}, std::tuple{"returns_limit", corrected, false}}) {
    const double d = analytics::returns_law_ks_distance(delta_exact, cdf);
    const bool pass = d <= exact_tol;
    b.row({"exact_law", delta_exact, std::int64_t{0}, name, d, std::string{}, exact_tol, pass,
           enforced});
    b.gate(std::string("exact_ks_") + name, d, "<=", exact_tol, pass, enforced,
           "sup-distance between the exact law of sqrt(delta) R and the reference CDF");
  }

  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const auto barrier = static_cast<std::int32_t>(cfg.integer("barrier"));
  const double sample_tol = cfg.real("sample_tolerance");
  const auto deltas = cfg.reals("deltas");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    auto run = run_last_returns(returns_params(cfg, delta), barrier, cfg.integer("horizon_cap"),
                                replicates, b.plan(100 + i, replicates), cfg.workers,
                                cfg.real("bias_budget"));
    b.truncation(run.truncation);
    if (!enough_samples(b, run, "delta_" + real_label(delta))) continue;
    std::vector<double> scaled;
    scaled.reserve(run.samples.size());
    for (const auto& s : run.samples) {
      scaled.push_back(std::sqrt(delta) * static_cast<double>(s.returns));
    }
    for (const auto& [name, cdf, enforced] :
         {std::tuple{"rayleigh", rayleigh, true}, std::tuple{"returns_limit", corrected, false}}) {
      const auto ks = stats::ks_one_sample(scaled, cdf);
      const bool pass = ks.statistic <= sample_tol;
      b.row({"sampled", delta, count(scaled.size()), name, ks.statistic, ks.p_value, sample_tol,
             pass, enforced});
      const std::string tag = std::string(name) + "_delta_" + real_label(delta);
      b.gate("sampled_ks_" + tag, ks.statistic, "<=", sample_tol, pass, enforced);
      b.ks("sqrt_delta_R_vs_" + tag, ks);
    }
    b.plot(ecdf_series("ecdf_sqrt_delta_R_" + std::to_string(i), std::move(scaled)));
  }
  b.plot(curve("cdf_rayleigh", 0.0, 4.0, rayleigh));
  b.plot(curve("cdf_returns_limit", 0.0, 4.0, corrected));

  // Sanity check of the counting convention on the unmodified walk.
  const auto sym_steps = cfg.integer("symmetric_steps");
  const auto sym_reps = static_cast<std::size_t>(cfg.integer("symmetric_replicates"));
  auto visits = all_or_throw(
      mc::run_replicates(
          [&](std::size_t, std::uint64_t seed) {
            mc::Rng rng(seed);
            const auto traj = walk::simulate_symmetric_path(sym_steps, rng);
            return static_cast<double>(traj.visits.back() - 1);
          },
          sym_reps, b.plan(200, sym_reps), cfg.workers),
      "symmetric walk");
  const double target = std::sqrt(2.0 * static_cast<double>(sym_steps) / std::numbers::pi);
  const double rel = std::fabs(sample_mean(visits) - target) / target;
  const double rate_tol = cfg.real("visit_rate_tolerance");
  b.row({"visit_rate", std::string{}, count(sym_reps), "sqrt(2n/pi)", rel, std::string{}, rate_tol,
         rel <= rate_tol, true});
  b.gate("symmetric_visit_rate", rel, "<=", rate_tol, rel <= rate_tol, true,
         "relative error of E[returns by n] against sqrt(2n/pi)");
  b.summary(stats::mean_ci(visits, 0.95, "symmetric_returns"));
  return b.finish();
}

// --- E3: expected time of the last return ----------------------------------

ExperimentReport run_e3(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const auto barrier = static_cast<std::int32_t>(cfg.integer("barrier"));
  const double level = cfg.real("level");
  const double budget = cfg.real("bias_budget");

  json verdicts = json::array();
  const auto deltas = cfg.reals("deltas");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    auto run = run_last_returns(returns_params(cfg, delta), barrier, cfg.integer("horizon_cap"),
                                replicates, b.plan(300 + i, replicates), cfg.workers, budget);
    b.truncation(run.truncation);
    if (!enough_samples(b, run, "delta_" + real_label(delta))) continue;
    std::vector<double> last;
    last.reserve(run.samples.size());
    for (const auto& s : run.samples) last.push_back(static_cast<double>(s.last_return));
    auto ci = stats::mean_ci(last, level, "T_last_delta_" + real_label(delta));

    const double derived =
        analytics::expected_last_return(delta, analytics::LastReturnVariant::excursion_derived);
    const double display =
        analytics::expected_last_return(delta, analytics::LastReturnVariant::paper_display);
    const bool pass = ci.contains(derived);
    b.row({"fixed_delta", delta, std::string{}, count(last.size()), std::int64_t{barrier}, ci.mean,
           ci.ci_half_width, derived, display, std::string{}, pass});
    b.gate("ci_contains_excursion_derived_delta_" + real_label(delta), derived, "in", ci.mean,
           pass, true, "closed form must lie inside the Monte Carlo confidence interval");
    b.gate("ci_contains_paper_display_delta_" + real_label(delta), display, "in", ci.mean,
           ci.contains(display), false, "alternative closed form, reported only");
    const bool derived_closer = std::fabs(derived - ci.mean) <= std::fabs(display - ci.mean);
    verdicts.push_back({{"delta", delta},
                        {"mc_mean", ci.mean},
                        {"excursion_derived", derived},
                        {"paper_display", display},
                        {"closer", derived_closer ? "excursion_derived" : "paper_display"}});
    b.summary(std::move(ci));
  }
  b.notes()["last_return_variants"] = verdicts;

  // Triangular array delta_n = c n^-alpha: E[T_last] / n should vanish.
  walk::SeriesScheme scheme{cfg.real("c"), cfg.real("alpha"), 1};
  const auto trend_reps = static_cast<std::size_t>(cfg.integer("trend_replicates"));
  const auto trend_barrier = static_cast<std::int32_t>(cfg.integer("trend_barrier"));
  std::vector<double> ratios;
  PlotSeries trend{"trend_T_last_over_n", {}, {}};
  const auto ns = cfg.integers("trend_n");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    scheme.n = ns[i];
    const double delta = scheme.delta_n();
    auto run =
        run_last_returns(returns_params(cfg, delta), trend_barrier, cfg.integer("horizon_cap"),
                         trend_reps, b.plan(400 + i, trend_reps), cfg.workers, budget);
    b.truncation(run.truncation);
    if (!enough_samples(b, run, "n_" + std::to_string(scheme.n))) continue;
    std::vector<double> last;
    for (const auto& s : run.samples) last.push_back(static_cast<double>(s.last_return));
    auto ci = stats::mean_ci(last, level, "T_last_n_" + std::to_string(scheme.n));
    const double ratio = ci.mean / static_cast<double>(scheme.n);
    ratios.push_back(ratio);
    b.row({"trend", delta, scheme.n, count(last.size()), std::int64_t{trend_barrier}, ci.mean,
           ci.ci_half_width,
           analytics::expected_last_return(delta, analytics::LastReturnVariant::excursion_derived),
           analytics::expected_last_return(delta, analytics::LastReturnVariant::paper_display),
           ratio, true});
    trend.x.push_back(static_cast<double>(scheme.n));
    trend.y.push_back(ratio);
    b.summary(std::move(ci));
  }
  const bool decreasing = strictly_decreasing(ratios);
  b.gate("trend_T_last_over_n_decreasing", ratios.empty() ? 0.0 : ratios.back(), "decreasing", 0.0,
         decreasing, true, "E[T_last]/n must decrease strictly along trend_n");
  b.plot(std::move(trend));
  return b.finish();
}

// --- E4: Brownian regime alpha > 1 ------------------------------------------

ExperimentReport run_e4(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const walk::SeriesScheme scheme{cfg.real("c"), cfg.real("alpha"), cfg.integer("n")};
  const auto params = scheme.params();
  const auto times = cfg.reals("times");
  const double t_max = *std::max_element(times.begin(), times.end());
  const auto steps = static_cast<std::int64_t>(std::ceil(static_cast<double>(scheme.n) * t_max));
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));

  auto values = all_or_throw(
      mc::run_replicates(
          [&](std::size_t, std::uint64_t seed) {
            mc::Rng rng(seed);
            const auto traj = walk::simulate_path(params, steps, rng);
            std::vector<double> out;
            for (double t : times) out.push_back(walk::scaled_value(traj, scheme, t));
            return out;
          },
          replicates, b.plan(1, replicates), cfg.workers),
      "E4 paths");

  const double tol = cfg.real("ks_tolerance");
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double t = times[j];
    std::vector<double> xs;
    for (const auto& v : values) xs.push_back(v[j]);
    const auto ks =
        stats::ks_one_sample(xs, [t](double x) { return normal_cdf(x / std::sqrt(t)); });
    const bool pass = ks.statistic <= tol;
    b.row({scheme.c, scheme.alpha, scheme.n, count(xs.size()), t, sample_mean(xs),
           sample_variance(xs), ks.statistic, ks.p_value, tol, pass});
    b.gate("ks_normal_t_" + real_label(t), ks.statistic, "<=", tol, pass);
    b.ks("scaled_walk_vs_N(0,t)_t_" + real_label(t), ks);
    b.plot(ecdf_series("ecdf_t_" + std::to_string(j), std::move(xs)));
  }
  return b.finish();
}

// --- E5: ballistic regime alpha < 1 -----------------------------------------

struct SlopeSample {
  double terminal = 0.0;  // X_n / n^beta
  double chord = 0.0;     // sup_k |X_k - (k/n) X_n| / n^beta
  double drift = 0.0;     // sum_k min(2 nu'_k delta, 1) / n^beta
  double noise = 0.0;     // terminal - drift
};

SlopeSample slope_sample(const walk::Trajectory& traj, const walk::SeriesScheme& scheme,
                         const walk::ModificationParams& params) {
  const auto n = static_cast<std::size_t>(scheme.n);
  const double scale = std::pow(static_cast<double>(n), scheme.space_exponent());
  const double xn = traj.positions[n];
  double chord = 0.0;
  double drift = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double line = static_cast<double>(k) / static_cast<double>(n) * xn;
    chord = std::max(chord, std::fabs(traj.positions[k] - line));
    const auto law = walk::transition_probabilities(traj.visits[k], params);
    drift += law.up - law.down;
  }
  SlopeSample s;
  s.terminal = xn / scale;
  s.chord = chord / scale;
  s.drift = drift / scale;
  s.noise = s.terminal - s.drift;
  return s;
}

ExperimentReport run_e5(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const double c = cfg.real("c");
  const double alpha = cfg.real("alpha");
  const std::int64_t n_main = cfg.integer("n");
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const double tol = cfg.real("ks_tolerance");
  const auto bundle = static_cast<std::size_t>(cfg.integer("path_bundle"));
  const TimeGrid grid{1.0, static_cast<std::size_t>(cfg.integer("grid_intervals"))};

  auto sample_at = [&](std::int64_t n, std::uint64_t tag) {
    const walk::SeriesScheme scheme{c, alpha, n};
    const auto params = scheme.params();
    return all_or_throw(mc::run_replicates(
                            [&](std::size_t, std::uint64_t seed) {
                              mc::Rng rng(seed);
                              const auto traj = walk::simulate_path(params, n, rng);
                              return slope_sample(traj, scheme, params);
                            },
                            replicates, b.plan(tag, replicates), cfg.workers),
                        "E5 paths");
  };

  const auto samples = sample_at(n_main, static_cast<std::uint64_t>(n_main));
  std::vector<double> terminal, drift, noise_abs;
  for (const auto& s : samples) {
    terminal.push_back(s.terminal);
    drift.push_back(s.drift);
    noise_abs.push_back(std::fabs(s.noise));
  }

  for (const auto& [name, enforced] : {std::pair{"slope_limit", true},
                                       std::pair{"corrected_slope", false}}) {
    const std::function<double(double)> cdf =
        std::string_view(name) == "slope_limit"
            ? std::function<double(double)>([c](double x) { return analytics::slope_limit_cdf(x, c); })
            : std::function<double(double)>(
                  [c](double x) { return analytics::corrected_slope_cdf(x, c); });
    const auto ks = stats::ks_one_sample(terminal, cdf);
    const bool pass = ks.statistic <= tol;
    b.row({c, alpha, n_main, count(terminal.size()), "terminal_ks", name, ks.statistic, ks.p_value,
           tol, pass, enforced});
    b.gate(std::string("terminal_ks_") + name, ks.statistic, "<=", tol, pass, enforced);
    b.ks(std::string("X_n/n^beta_vs_") + name, ks);
    b.plot(curve(std::string("cdf_") + name, 0.0, 8.0 * std::sqrt(c), cdf));
  }

  // The compensator carries the limit; the martingale part is lower order.
  const double drift_mean = sample_mean(drift);
  const double noise_mean = sample_mean(noise_abs);
  b.row({c, alpha, n_main, count(samples.size()), "drift_mean", "", drift_mean, std::string{},
         std::string{}, true, false});
  b.row({c, alpha, n_main, count(samples.size()), "noise_abs_mean", "", noise_mean, std::string{},
         std::string{}, true, false});
  b.gate("noise_share", noise_mean / drift_mean, "report", 0.0, true, false,
         "E|M_n| / E[A_n] after scaling by n^beta");
  b.summary(stats::mean_ci(drift, 0.95, "scaled_compensator"));
  b.summary(stats::mean_ci(noise_abs, 0.95, "scaled_martingale_abs"));
  b.plot(ecdf_series("ecdf_terminal", terminal));

  // Linearity of the rescaled path: the chord deviation shrinks with n.
  std::vector<double> medians;
  PlotSeries chord_series{"chord_median", {}, {}};
  const auto chord_n = cfg.integers("chord_n");
  for (std::int64_t n : chord_n) {
    const auto run = n == n_main ? samples : sample_at(n, static_cast<std::uint64_t>(n));
    std::vector<double> chords;
    for (const auto& s : run) chords.push_back(s.chord);
    const double med = stats::median(chords);
    medians.push_back(med);
    b.row({c, alpha, n, count(chords.size()), "chord_median", "", med, std::string{},
           std::string{}, true, true});
    chord_series.x.push_back(static_cast<double>(n));
    chord_series.y.push_back(med);
  }
  const bool decreasing = strictly_decreasing(medians);
  b.gate("chord_median_decreasing", medians.empty() ? 0.0 : medians.back(), "decreasing", 0.0,
         decreasing, true, "median sup_k |X_k - (k/n) X_n| / n^beta must decrease along chord_n");
  b.plot(std::move(chord_series));

  const walk::SeriesScheme scheme{c, alpha, n_main};
  const auto params = scheme.params();
  const auto paths = all_or_throw(mc::run_replicates(
                                      [&](std::size_t, std::uint64_t seed) {
                                        mc::Rng rng(seed);
                                        const auto traj = walk::simulate_path(params, n_main, rng);
                                        return walk::scaled_path(traj, scheme, grid);
                                      },
                                      bundle, b.plan(static_cast<std::uint64_t>(n_main), bundle),
                                      cfg.workers),
                                  "E5 bundle");
  for (std::size_t i = 0; i < paths.size(); ++i) {
    b.plot({"path_" + std::to_string(i), paths[i].times, paths[i].values});
  }
  return b.finish();
}

// --- E6: critical regime alpha = 1 ------------------------------------------

limits::SdeConfig sde_config(const ExperimentConfig& cfg, double kappa, std::optional<double> cap,
                             double horizon) {
  limits::SdeConfig s;
  s.c = cfg.real("c");
  s.cap = cap;
  s.drift_factor = kappa;
  s.time_step = cfg.real("h");
  s.band = cfg.real("eps");
  s.horizon = horizon;
  s.validate();
  return s;
}

std::vector<double> sde_terminal(const limits::SdeConfig& sde, std::size_t replicates,
                                 const mc::SeedPlan& plan, unsigned workers) {
  return all_or_throw(mc::run_replicates(
                          [&](std::size_t, std::uint64_t seed) {
                            mc::Rng rng(seed);
                            return limits::integrate_local_time_sde(sde, rng).values.back();
                          },
                          replicates, plan, workers),
                      "SDE paths");
}

ExperimentReport run_e6(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const walk::SeriesScheme scheme{cfg.real("c"), cfg.real("alpha"), cfg.integer("n")};
  const double horizon = cfg.real("horizon");
  const auto m = cfg.optional_real("M");
  auto params = scheme.params();
  params.visit_cap = visit_cap(m, params.delta);
  const auto steps =
      static_cast<std::int64_t>(std::ceil(static_cast<double>(scheme.n) * horizon));
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const auto walk_values = all_or_throw(
      mc::run_replicates(
          [&](std::size_t, std::uint64_t seed) {
            mc::Rng rng(seed);
            return walk::scaled_value(walk::simulate_path(params, steps, rng), scheme, horizon);
          },
          replicates, b.plan(1, replicates), cfg.workers),
      "E6 walk");
  b.plot(ecdf_series("ecdf_walk", walk_values));

  const auto sde_reps = static_cast<std::size_t>(cfg.integer("sde_replicates"));
  const double tol = cfg.real("ks_tolerance");
  struct Candidate {
    limits::DriftVariant variant;
    double kappa;
    stats::KsResult ks;
  };
  std::vector<Candidate> candidates;
  const auto variants = kappas(cfg);
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const double kappa = limits::drift_factor(variants[i], scheme.c);
    const auto sde = sde_config(cfg, kappa, m, horizon);
    auto values = sde_terminal(sde, sde_reps, b.plan(10 + i, sde_reps), cfg.workers);
    const auto ks = stats::ks_two_sample(walk_values, values);
    candidates.push_back({variants[i], kappa, ks});
    b.ks("walk_vs_sde_" + std::string(limits::to_string(variants[i])), ks);
    b.plot(ecdf_series("ecdf_sde_" + std::string(limits::to_string(variants[i])),
                       std::move(values)));
  }
  if (candidates.empty()) throw ConfigError("kappa must list at least one drift variant");
  const auto best = std::min_element(
      candidates.begin(), candidates.end(),
      [](const Candidate& a, const Candidate& b2) { return a.ks.statistic < b2.ks.statistic; });
  for (const auto& cand : candidates) {
    b.row({scheme.c, scheme.alpha, scheme.n, count(walk_values.size()),
           std::string(limits::to_string(cand.variant)), cand.kappa, cfg.real("h"),
           cfg.real("eps"), count(sde_reps), cand.ks.statistic, cand.ks.p_value, tol,
           cand.ks.statistic <= tol, &cand == &*best});
  }
  b.gate("min_ks_over_kappa", best->ks.statistic, "<=", tol, best->ks.statistic <= tol, false,
         "best drift variant: " + std::string(limits::to_string(best->variant)));
  b.notes()["best_kappa"] = limits::to_string(best->variant);
  b.notes()["best_kappa_value"] = best->kappa;
  return b.finish();
}

// --- E7: finite-path density identity ---------------------------------------

walk::Trajectory path_from_bits(std::uint32_t bits, int m) {
  walk::Trajectory traj;
  traj.positions.assign(1, 0);
  traj.visits.assign(1, 1);
  for (int k = 0; k < m; ++k) {
    const int x = traj.positions.back() + (((bits >> k) & 1U) ? 1 : -1);
    traj.positions.push_back(x);
    traj.visits.push_back(traj.visits.back() + (x == 0 ? 1 : 0));
  }
  return traj;
}

// Probability of the path under the modified walk, multiplied out step by step.
double path_probability(const walk::Trajectory& traj, const walk::ModificationParams& params) {
  double p = 1.0;
  for (std::size_t k = 0; k < traj.steps(); ++k) {
    const auto law = walk::transition_probabilities(traj.visits[k], params);
    p *= traj.positions[k + 1] > traj.positions[k] ? law.up : law.down;
  }
  return p;
}

struct IsSample {
  double x_mod;
  double x_sym;
  double weight;
};

ExperimentReport run_e7(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const int m_max = static_cast<int>(cfg.integer("m"));
  if (m_max < 1 || m_max > 24) throw ConfigError("m must lie in [1, 24]");
  const double enum_tol = cfg.real("enumeration_tolerance");
  const double norm_tol = cfg.real("normalization_tolerance");
  const auto mc_reps = static_cast<std::size_t>(cfg.integer("mc_replicates"));
  const double z = cfg.real("se_multiplier");
  const int is_steps = static_cast<int>(cfg.integer("is_steps"));
  const auto is_reps = static_cast<std::size_t>(cfg.integer("is_replicates"));
  const double is_level = cfg.real("is_level");

  const auto deltas = cfg.reals("deltas");
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    walk::ModificationParams params;
    params.delta = deltas[di];
    params.validate();
    const std::string tag = "_delta_" + real_label(params.delta);

    double worst_enum = 0.0;
    double worst_norm = 0.0;
    std::vector<double> probs_at_max;
    for (int m = 1; m <= m_max; ++m) {
      const std::uint32_t paths = 1U << m;
      double err = 0.0;
      double total = 0.0;
      for (std::uint32_t bits = 0; bits < paths; ++bits) {
        const auto traj = path_from_bits(bits, m);
        const double direct = path_probability(traj, params);
        const double via_density = limits::discrete_density(traj, params) * std::ldexp(1.0, -m);
        err = std::max(err, std::fabs(direct - via_density));
        total += via_density;
        if (m == m_max) probs_at_max.push_back(direct);
      }
      const double norm_err = std::fabs(total - 1.0);
      worst_enum = std::max(worst_enum, err);
      worst_norm = std::max(worst_norm, norm_err);
      b.row({"enumeration_max_error", params.delta, std::int64_t{m}, count(paths), err, enum_tol,
             err <= enum_tol});
      b.row({"normalization_error", params.delta, std::int64_t{m}, count(paths), norm_err,
             norm_tol, norm_err <= norm_tol});
    }
    b.gate("enumeration" + tag, worst_enum, "<=", enum_tol, worst_enum <= enum_tol);
    b.gate("normalization" + tag, worst_norm, "<=", norm_tol, worst_norm <= norm_tol);

    // Path frequencies of the simulator against the enumerated law.
    const auto codes = all_or_throw(
        mc::run_replicates(
            [&](std::size_t, std::uint64_t seed) {
              mc::Rng rng(seed);
              const auto traj = walk::simulate_path(params, m_max, rng);
              std::uint32_t bits = 0;
              for (int k = 0; k < m_max; ++k) {
                if (traj.positions[k + 1] > traj.positions[k]) bits |= 1U << k;
              }
              return bits;
            },
            mc_reps, b.plan(10 + di, mc_reps), cfg.workers),
        "E7 paths");
    std::vector<std::size_t> counts(probs_at_max.size(), 0);
    for (auto code : codes) ++counts[code];
    const double n = static_cast<double>(codes.size());
    // The SE criterion needs a usable normal approximation, so paths with an
    // expected count below kMinExpected are pooled into one bin.
    constexpr double kMinExpected = 10.0;
    std::size_t violations = 0;
    double worst_z = 0.0;
    double pooled_p = 0.0;
    std::size_t pooled_count = 0;
    auto check = [&](double p, std::size_t hits) {
      const double freq = static_cast<double>(hits) / n;
      const double se = stats::binomial_se(p, n);
      if (se > 0.0) {
        const double zi = std::fabs(freq - p) / se;
        worst_z = std::max(worst_z, zi);
        if (zi > z) ++violations;
      } else if (freq != p) {
        ++violations;
        worst_z = kInf;
      }
    };
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const double p = probs_at_max[i];
      if (p > 0.0 && p < 1.0 && n * p < kMinExpected) {
        pooled_p += p;
        pooled_count += counts[i];
      } else {
        check(p, counts[i]);
      }
    }
    if (pooled_p > 0.0) check(pooled_p, pooled_count);
    b.row({"mc_path_max_z", params.delta, std::int64_t{m_max}, count(codes.size()), worst_z, z,
           violations == 0});
    b.gate("mc_path_frequencies" + tag, static_cast<double>(violations), "==", 0.0,
           violations == 0, true,
           "paths whose empirical frequency is more than se_multiplier SE from the exact law");

    // Change of measure: E_mod f(X_m) = E_sym[f(X_m) rho].
    const auto is = all_or_throw(
        mc::run_replicates(
            [&](std::size_t, std::uint64_t seed) {
              mc::Rng rng(seed);
              const auto mod = walk::simulate_path(params, is_steps, rng);
              const auto sym = walk::simulate_symmetric_path(is_steps, rng);
              return IsSample{static_cast<double>(mod.positions.back()),
                              static_cast<double>(sym.positions.back()),
                              limits::discrete_density(sym, params)};
            },
            is_reps, b.plan(20 + di, is_reps), cfg.workers),
        "E7 importance sampling");
    using Fn = double (*)(double);
    const std::pair<const char*, Fn> functionals[] = {
        {"identity", [](double x) { return x; }},
        {"at_zero", [](double x) { return x == 0.0 ? 1.0 : 0.0; }}};
    for (const auto& [fname, f] : functionals) {
      std::vector<double> direct, weighted;
      for (const auto& s : is) {
        direct.push_back(f(s.x_mod));
        weighted.push_back(f(s.x_sym) * s.weight);
      }
      auto a = stats::mean_ci(direct, is_level, std::string("direct_") + fname + tag);
      auto w = stats::mean_ci(weighted, is_level, std::string("weighted_") + fname + tag);
      // Positive gap means the intervals are disjoint.
      const double gap = std::max(a.lower(), w.lower()) - std::min(a.upper(), w.upper());
      b.row({std::string("is_") + fname, params.delta, std::int64_t{is_steps}, count(is.size()), gap,
             0.0, gap <= 0.0});
      b.gate(std::string("importance_sampling_") + fname + tag, gap, "<=", 0.0, gap <= 0.0, true,
             "confidence intervals of the direct and reweighted estimators overlap");
      b.summary(std::move(a));
      b.summary(std::move(w));
    }
  }
  return b.finish();
}

// --- E8: continuum density and SDE calibration ------------------------------

ExperimentReport run_e8(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const double c = cfg.real("c");
  const auto m = cfg.optional_real("M");
  const double h = cfg.real("h");
  const double eps = cfg.real("eps");
  const double horizon = cfg.real("horizon");
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const TimeGrid grid{horizon, sde_config(cfg, 0.0, m, horizon).steps()};

  const auto dens = all_or_throw(
      mc::run_replicates(
          [&](std::size_t, std::uint64_t seed) {
            mc::Rng rng(seed);
            return limits::limit_density(limits::sample_brownian_path(grid, rng), c,
                                         m.value_or(kInf), eps);
          },
          replicates, b.plan(1, replicates), cfg.workers),
      "E8 density");
  auto ci = stats::mean_ci(dens, 0.95, "limit_density");
  const double se = std::sqrt(sample_variance(dens) / static_cast<double>(dens.size()));
  const double tol = cfg.real("se_multiplier") * se;
  const double dev = std::fabs(ci.mean - 1.0);
  b.row({"density_mean", c, maybe(m), h, eps, count(dens.size()), ci.mean, 1.0, tol, dev <= tol});
  b.gate("density_mean_is_one", dev, "<=", tol, dev <= tol, true,
         "|E[density] - 1| within se_multiplier standard errors");
  b.summary(std::move(ci));

  // Driftless SDE: the scheme must reproduce |W_1| and the local time at 0.
  limits::SdeConfig calib;
  calib.c = c;
  calib.drift_factor = 0.0;
  calib.time_step = cfg.real("calibration_h");
  calib.band = cfg.real("calibration_eps");
  calib.horizon = 1.0;
  calib.validate();
  const auto calib_reps = static_cast<std::size_t>(cfg.integer("calibration_replicates"));
  struct End {
    double x;
    double l;
  };
  const auto ends = all_or_throw(mc::run_replicates(
                                     [&](std::size_t, std::uint64_t seed) {
                                       mc::Rng rng(seed);
                                       const auto p = limits::integrate_local_time_sde(calib, rng);
                                       return End{p.values.back(), p.local_time.back()};
                                     },
                                     calib_reps, b.plan(2, calib_reps), cfg.workers),
                                 "E8 calibration");
  std::vector<double> xs, abs_xs, ls;
  for (const auto& e : ends) {
    xs.push_back(e.x);
    abs_xs.push_back(std::fabs(e.x));
    ls.push_back(e.l);
  }
  const double target = std::sqrt(2.0 / std::numbers::pi);
  const Cell calib_h = calib.time_step;
  const Cell calib_eps = calib.band;

  const double abs_mean = sample_mean(abs_xs);
  const double abs_tol = cfg.real("abs_mean_tolerance");
  const bool abs_ok = std::fabs(abs_mean - target) <= abs_tol;
  b.row({"calibration_abs_mean", c, std::string{}, calib_h, calib_eps, count(ends.size()),
         abs_mean, target, abs_tol, abs_ok});
  b.gate("calibration_abs_mean", std::fabs(abs_mean - target), "<=", abs_tol, abs_ok);

  const auto ks = stats::ks_one_sample(xs, normal_cdf);
  const double floor = cfg.real("pvalue_floor");
  b.row({"calibration_ks_normal_pvalue", c, std::string{}, calib_h, calib_eps, count(ends.size()),
         ks.p_value, floor, floor, ks.p_value > floor});
  b.gate("calibration_ks_normal", ks.p_value, ">", floor, ks.p_value > floor);
  b.ks("driftless_X1_vs_N(0,1)", ks);

  const double l_mean = sample_mean(ls);
  const double l_tol = cfg.real("local_time_tolerance");
  const bool l_ok = std::fabs(l_mean - target) <= l_tol;
  b.row({"calibration_local_time_mean", c, std::string{}, calib_h, calib_eps, count(ends.size()),
         l_mean, target, l_tol, l_ok});
  b.gate("calibration_local_time_mean", std::fabs(l_mean - target), "<=", l_tol, l_ok);
  b.plot(ecdf_series("ecdf_calibration_X1", std::move(xs)));
  return b.finish();
}

// --- E9: caps leave the law unchanged before they bind ----------------------

ExperimentReport run_e9(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const walk::SeriesScheme scheme{cfg.real("c"), cfg.real("alpha"), cfg.integer("n")};
  const double m = cfg.real("M");
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const auto free = scheme.params();
  auto capped = free;
  capped.visit_cap = visit_cap(m, free.delta);
  const std::int32_t cap = capped.visit_cap.value_or(std::numeric_limits<std::int32_t>::max());

  struct Coupled {
    bool event;
    bool identical;
  };
  const auto walk_runs = all_or_throw(
      mc::run_replicates(
          [&](std::size_t, std::uint64_t seed) {
            mc::Rng a(seed);
            mc::Rng c2(seed);
            const auto u = walk::simulate_path(free, scheme.n, a);
            const auto v = walk::simulate_path(capped, scheme.n, c2);
            return Coupled{u.visits.back() <= cap, u.positions == v.positions};
          },
          replicates, b.plan(1, replicates), cfg.workers),
      "E9 walk");
  std::size_t events = 0, mismatches = 0, differ_off = 0;
  for (const auto& r : walk_runs) {
    events += r.event;
    mismatches += r.event && !r.identical;
    differ_off += !r.event && !r.identical;
  }
  b.row({"walk", std::string{}, m, std::int64_t{cap}, count(walk_runs.size()), count(events),
         count(mismatches), count(differ_off), mismatches == 0});
  b.gate("walk_cap_invisible_before_binding", static_cast<double>(mismatches), "==", 0.0,
         mismatches == 0, true, "coupled capped and uncapped walks agree on {nu_n <= cap}");

  const double horizon = cfg.real("horizon");
  const auto sde_reps = static_cast<std::size_t>(cfg.integer("sde_replicates"));
  const auto variants = kappas(cfg);
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const double kappa = limits::drift_factor(variants[i], scheme.c);
    const auto sde_free = sde_config(cfg, kappa, std::nullopt, horizon);
    const auto sde_cap = sde_config(cfg, kappa, m, horizon);
    const auto runs = all_or_throw(
        mc::run_replicates(
            [&](std::size_t, std::uint64_t seed) {
              mc::Rng a(seed);
              mc::Rng c2(seed);
              const auto u = limits::integrate_local_time_sde(sde_free, a);
              const auto v = limits::integrate_local_time_sde(sde_cap, c2);
              return Coupled{u.local_time.back() <= m, u.values == v.values};
            },
            sde_reps, b.plan(10 + i, sde_reps), cfg.workers),
        "E9 SDE");
    std::size_t ev = 0, mis = 0, off = 0;
    for (const auto& r : runs) {
      ev += r.event;
      mis += r.event && !r.identical;
      off += !r.event && !r.identical;
    }
    const std::string name(limits::to_string(variants[i]));
    b.row({"sde", name, m, std::string{}, count(runs.size()), count(ev), count(mis), count(off),
           mis == 0});
    b.gate("sde_cap_invisible_before_binding_" + name, static_cast<double>(mis), "==", 0.0,
           mis == 0, true, "coupled capped and uncapped SDE paths agree on {l(T) <= M}");
  }
  return b.finish();
}

// --- E10: long-time slope of the SDE ----------------------------------------

ExperimentReport run_e10(const ExperimentConfig& cfg) {
  Builder b(cfg);
  const double c = cfg.real("c");
  const auto m = cfg.optional_real("M");
  const auto horizons = cfg.reals("horizons");
  const double t_max = *std::max_element(horizons.begin(), horizons.end());
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates"));
  const double tol = cfg.real("ks_tolerance");
  const double flat_min = cfg.real("flat_fraction_min");
  const double h = cfg.real("h");

  const std::function<double(double)> spec_cdf = [c](double x) {
    return analytics::slope_limit_cdf(x, c);
  };
  const std::function<double(double)> corrected_cdf = [c](double x) {
    return analytics::corrected_slope_cdf(x, c);
  };

  struct Reading {
    std::vector<double> slope;
    std::vector<bool> flat;
  };
  double best_ks = kInf;
  std::string best_name;
  const auto variants = kappas(cfg);
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const double kappa = limits::drift_factor(variants[i], c);
    const auto sde = sde_config(cfg, kappa, m, t_max);
    const auto runs = all_or_throw(
        mc::run_replicates(
            [&](std::size_t, std::uint64_t seed) {
              mc::Rng rng(seed);
              const auto p = limits::integrate_local_time_sde(sde, rng);
              Reading r;
              for (double t : horizons) {
                const auto j = static_cast<std::size_t>(std::llround(t / h));
                const auto half = static_cast<std::size_t>(std::llround(t / (2.0 * h)));
                r.slope.push_back(p.values.at(j) / t);
                r.flat.push_back(p.local_time.at(j) == p.local_time.at(half));
              }
              return r;
            },
            replicates, b.plan(10 + i, replicates), cfg.workers),
        "E10 SDE");

    const std::string name(limits::to_string(variants[i]));
    std::vector<double> medians;
    for (std::size_t j = 0; j < horizons.size(); ++j) {
      std::vector<double> slopes;
      std::size_t flat = 0;
      for (const auto& r : runs) {
        slopes.push_back(r.slope[j]);
        flat += r.flat[j];
      }
      const double frac = static_cast<double>(flat) / static_cast<double>(runs.size());
      const auto ks = stats::ks_one_sample(slopes, spec_cdf);
      const auto ks_corr = stats::ks_one_sample(slopes, corrected_cdf);
      const double med = stats::median(slopes);
      medians.push_back(med);
      const std::string tag = name + "_T_" + real_label(horizons[j]);
      b.row({name, kappa, horizons[j], h, cfg.real("eps"), count(runs.size()), med, frac,
             ks.statistic, ks_corr.statistic, tol, ks.statistic <= tol});
      b.ks("slope_vs_slope_limit_" + tag, ks);
      b.ks("slope_vs_corrected_" + tag, ks_corr);
      if (horizons[j] == t_max) {
        if (ks.statistic < best_ks) {
          best_ks = ks.statistic;
          best_name = name;
        }
        b.gate("flat_local_time_" + name, frac, ">=", flat_min, frac >= flat_min, true,
               "fraction of paths with l(T) = l(T/2) at the largest horizon");
        b.gate("corrected_ks_" + name, ks_corr.statistic, "<=", tol, ks_corr.statistic <= tol,
               false, "terminal slope against 1 - exp(-x^2/(4c))");
        b.plot(ecdf_series("ecdf_slope_" + name, std::move(slopes)));
      }
    }
    b.gate("median_slope_increasing_" + name, medians.back(), "increasing", 0.0,
           strictly_increasing(medians), true, "median X(T)/T must increase along horizons");
  }
  b.gate("min_ks_slope_limit", best_ks, "<=", tol, best_ks <= tol, true,
         "best drift variant: " + best_name);
  b.notes()["best_kappa"] = best_name;
  b.plot(curve("cdf_slope_limit", 0.0, 8.0 * std::sqrt(c), spec_cdf));
  b.plot(curve("cdf_corrected_slope", 0.0, 8.0 * std::sqrt(c), corrected_cdf));
  return b.finish();
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentId::E1:
      return run_e1(config);
    case ExperimentId::E2:
      return run_e2(config);
    case ExperimentId::E3:
      return run_e3(config);
    case ExperimentId::E4:
      return run_e4(config);
    case ExperimentId::E5:
      return run_e5(config);
    case ExperimentId::E6:
      return run_e6(config);
    case ExperimentId::E7:
      return run_e7(config);
    case ExperimentId::E8:
      return run_e8(config);
    case ExperimentId::E9:
      return run_e9(config);
    case ExperimentId::E10:
      return run_e10(config);
  }
  throw ConfigError("unknown experiment");
}

int run_and_write(const ExperimentConfig& config) {
  const auto report = run_experiment(config);
  write_report(report, config);
  return report.exit_code();
}

}  // namespace rwm::cli
