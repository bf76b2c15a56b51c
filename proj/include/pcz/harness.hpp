#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pcz/baselines.hpp"
#include "pcz/envs.hpp"
#include "pcz/errors.hpp"
#include "pcz/metrics.hpp"
#include "pcz/pcz.hpp"
#include "pcz/snapshot.hpp"

namespace pcz {

inline constexpr const char* kOutputDirEnv = "PCZ_OUTPUT_DIR";

// Stream ids under a run seed. Every policy in a run sees the same contexts
// and starts its own stream from the same state.
inline constexpr std::uint64_t kContextStream = 1;
inline constexpr std::uint64_t kPolicyStream = 2;

struct EnvSpec {
  MeanKind kind = MeanKind::benchmark;
  NoiseKind noise = NoiseKind::bernoulli;
  double sigma = 0.5;
  std::size_t objectives = 2;
  int base = 0;
  std::string table;  // custom-table file, as written in the config
  std::optional<MeanTable> loaded_table;

  Environment build() const {
    switch (kind) {
      case MeanKind::benchmark: return Environment::benchmark(noise, sigma);
      case MeanKind::identical_objectives: return Environment::identical_objectives(objectives, base, noise, sigma);
      case MeanKind::custom_table: return Environment::custom_table(*loaded_table, noise, sigma);
    }
    throw LogicError("unreachable env kind");
  }
};

struct ExperimentConfig {
  EnvSpec env;
  ContextGenerator contexts = ContextGenerator::uniform();
  std::vector<PolicyKind> policies{PolicyKind::pcz};
  std::uint64_t horizon = 100000;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  std::size_t arm_grid = 101;
  std::optional<double> delta;  // unset: 1/T
  std::optional<std::size_t> oracle_grid;  // unset: arm_grid
  std::size_t oracle_contexts = 101;
  std::filesystem::path output_dir = "results";
  std::optional<Metric> metric;  // unset: scaled Euclidean
  std::size_t threads = 1;
  bool write_rounds = true;

  double resolved_delta() const { return delta.value_or(1.0 / static_cast<double>(horizon)); }
  std::size_t resolved_oracle_grid() const { return oracle_grid.value_or(arm_grid); }
  Metric resolved_metric() const { return metric.value_or(Metric::scaled_euclidean()); }

  /// Learner config for run `run`; the d_r override for contextual zooming
  /// is applied by Policy.
  PCZConfig engine_config(std::size_t run) const {
    PCZConfig c;
    c.horizon = horizon;
    c.delta = resolved_delta();
    c.objectives = env.kind == MeanKind::custom_table ? env.loaded_table->means.size()
                   : env.kind == MeanKind::benchmark  ? 2
                                                      : env.objectives;
    c.arm_grid_size = arm_grid;
    c.metric = resolved_metric();
    c.seed = seed + run;
    return c;
  }
};

namespace detail {

inline std::string json_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where.empty() ? "config must be a JSON object" : where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(json_path(where, key) + ": unknown key");
  }
}

template <typename T>
T field(const nlohmann::json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(json_path(where, key) + ": missing or wrong type");
  }
}

inline NoiseKind parse_noise(const std::string& s, const std::string& where) {
  if (s == "bernoulli") return NoiseKind::bernoulli;
  if (s == "gaussian") return NoiseKind::gaussian;
  if (s == "none") return NoiseKind::none;
  throw ConfigError(where + ": unknown noise '" + s + "'");
}

inline std::string noise_name(NoiseKind n) {
  switch (n) {
    case NoiseKind::bernoulli: return "bernoulli";
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::none: return "none";
  }
  return "?";
}

inline std::string mean_kind_name(MeanKind k) {
  switch (k) {
    case MeanKind::benchmark: return "appendix-d";
    case MeanKind::identical_objectives: return "identical-objectives";
    case MeanKind::custom_table: return "custom-table";
  }
  return "?";
}

inline std::string context_kind_name(ContextKind k) {
  switch (k) {
    case ContextKind::uniform: return "uniform";
    case ContextKind::fixed_sequence: return "fixed-sequence";
    case ContextKind::round_robin: return "round-robin";
  }
  return "?";
}

inline std::vector<std::vector<double>> parse_context_values(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a nonempty array");
  std::vector<std::vector<double>> out;
  for (const auto& v : j) {
    if (v.is_number())
      out.push_back({v.get<double>()});
    else if (v.is_array())
      out.push_back(v.get<std::vector<double>>());
    else
      throw ConfigError(where + ": entries must be numbers or arrays");
  }
  return out;
}

template <typename T>
std::uint64_t positive_integer(const nlohmann::json& j, const std::string& key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(json_path(where, key) + ": expected an integer");
  const auto n = v.get<std::int64_t>();
  if (n < 1) throw ConfigError(json_path(where, key) + ": must be at least 1");
  return static_cast<std::uint64_t>(n);
}

}  // namespace detail

/// Parses and validates a config object. Relative table paths resolve
/// against `base_dir`. Each defaulted field is reported on `log`.
inline ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = ".",
                                     std::ostream* log = nullptr) {
  using detail::field;
  detail::reject_unknown(j,
                         {"env", "contexts", "policies", "horizon", "runs", "seed", "arm_grid", "delta", "oracle_grid",
                          "oracle_contexts", "output_dir", "metric", "threads", "write_rounds"},
                         "");
  ExperimentConfig c;
  auto note_default = [&](const std::string& key, const std::string& value) {
    if (log) *log << "[config] " << key << " = " << value << " (default)\n";
  };

  if (j.contains("env")) {
    const auto& je = j.at("env");
    detail::reject_unknown(je, {"kind", "noise", "sigma", "objectives", "base", "table"}, "env");
    const auto kind = field<std::string>(je, "kind", "env");
    if (kind == "appendix-d")
      c.env.kind = MeanKind::benchmark;
    else if (kind == "identical-objectives")
      c.env.kind = MeanKind::identical_objectives;
    else if (kind == "custom-table")
      c.env.kind = MeanKind::custom_table;
    else
      throw ConfigError("env.kind: unknown environment '" + kind + "'");
    if (je.contains("noise")) c.env.noise = detail::parse_noise(field<std::string>(je, "noise", "env"), "env.noise");
    if (je.contains("sigma")) c.env.sigma = field<double>(je, "sigma", "env");
    if (je.contains("objectives")) {
      if (c.env.kind != MeanKind::identical_objectives)
        throw ConfigError("env.objectives: only identical-objectives takes an objective count");
      c.env.objectives = detail::positive_integer<std::size_t>(je, "objectives", "env");
    }
    if (je.contains("base")) {
      const auto base = field<std::string>(je, "base", "env");
      if (base == "mu1")
        c.env.base = 0;
      else if (base == "mu2")
        c.env.base = 1;
      else
        throw ConfigError("env.base: expected 'mu1' or 'mu2'");
    }
    if (c.env.kind == MeanKind::custom_table) {
      c.env.table = field<std::string>(je, "table", "env");
      std::filesystem::path p = c.env.table;
      if (p.is_relative()) p = base_dir / p;
      c.env.loaded_table = MeanTable::load(p);
    } else if (je.contains("table")) {
      throw ConfigError("env.table: only custom-table takes a table");
    }
  } else {
    note_default("env", "appendix-d, bernoulli");
  }
  c.env.build();  // validates sigma and table

  if (j.contains("contexts")) {
    const auto& jx = j.at("contexts");
    detail::reject_unknown(jx, {"kind", "values"}, "contexts");
    const auto kind = field<std::string>(jx, "kind", "contexts");
    if (kind == "uniform") {
      if (jx.contains("values")) throw ConfigError("contexts.values: not used by uniform contexts");
      c.contexts = ContextGenerator::uniform();
    } else if (kind == "fixed-sequence") {
      c.contexts = ContextGenerator::fixed_sequence(detail::parse_context_values(jx.at("values"), "contexts.values"));
    } else if (kind == "round-robin") {
      c.contexts = ContextGenerator::round_robin(detail::parse_context_values(jx.at("values"), "contexts.values"));
    } else {
      throw ConfigError("contexts.kind: unknown generator '" + kind + "'");
    }
    if (c.contexts.dims() != 1) throw ConfigError("contexts: environments take 1-d contexts");
  } else {
    note_default("contexts", "uniform");
  }

  if (j.contains("policies")) {
    const auto names = field<std::vector<std::string>>(j, "policies", "");
    if (names.empty()) throw ConfigError("policies: at least one policy required");
    c.policies.clear();
    for (const auto& n : names) {
      const auto kind = parse_policy(n);
      if (std::find(c.policies.begin(), c.policies.end(), kind) != c.policies.end())
        throw ConfigError("policies: '" + n + "' listed twice");
      c.policies.push_back(kind);
    }
  } else {
    note_default("policies", "[pcz]");
  }

  if (j.contains("horizon"))
    c.horizon = detail::positive_integer<std::uint64_t>(j, "horizon", "");
  else
    note_default("horizon", std::to_string(c.horizon));
  if (j.contains("runs"))
    c.runs = detail::positive_integer<std::size_t>(j, "runs", "");
  else
    note_default("runs", std::to_string(c.runs));
  if (j.contains("seed")) {
    const auto& js = j.at("seed");
    if (!js.is_number_integer() || (!js.is_number_unsigned() && js.get<std::int64_t>() < 0))
      throw ConfigError("seed: expected a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  } else {
    note_default("seed", "0");
  }
  if (j.contains("arm_grid")) {
    c.arm_grid = detail::positive_integer<std::size_t>(j, "arm_grid", "");
    if (c.arm_grid < 2) throw ConfigError("arm_grid: must be at least 2");
  } else {
    note_default("arm_grid", std::to_string(c.arm_grid));
  }
  if (j.contains("delta") && !j.at("delta").is_null()) {
    c.delta = field<double>(j, "delta", "");
    if (!(*c.delta > 0.0 && *c.delta < 1.0)) throw ConfigError("delta: must lie in (0,1)");
  } else {
    note_default("delta", "1/T");
  }
  if (j.contains("oracle_grid")) {
    c.oracle_grid = detail::positive_integer<std::size_t>(j, "oracle_grid", "");
    if (*c.oracle_grid < 2) throw ConfigError("oracle_grid: must be at least 2");
  } else {
    note_default("oracle_grid", "arm_grid");
  }
  if (j.contains("oracle_contexts")) {
    c.oracle_contexts = detail::positive_integer<std::size_t>(j, "oracle_contexts", "");
    if (c.oracle_contexts < 2) throw ConfigError("oracle_contexts: must be at least 2");
  }
  if (j.contains("output_dir"))
    c.output_dir = field<std::string>(j, "output_dir", "");
  else
    note_default("output_dir", c.output_dir.string());
  if (j.contains("metric")) {
    const auto& jm = j.at("metric");
    detail::reject_unknown(jm, {"kind", "scales"}, "metric");
    const auto kind = field<std::string>(jm, "kind", "metric");
    if (kind == "scaled-euclidean") {
      c.metric = jm.contains("scales")
                     ? Metric(MetricKind::scaled_euclidean, field<std::vector<double>>(jm, "scales", "metric"), 1)
                     : Metric::scaled_euclidean();
    } else if (kind == "max-of-per-axis") {
      c.metric = jm.contains("scales")
                     ? Metric(MetricKind::max_per_axis, field<std::vector<double>>(jm, "scales", "metric"), 1)
                     : Metric::max_per_axis();
    } else {
      throw ConfigError("metric.kind: unknown metric '" + kind + "'");
    }
    if (c.metric->scales().size() != 2) throw ConfigError("metric.scales: expected one context and one arm scale");
  } else {
    note_default("metric", "scaled-euclidean, scale 1/sqrt(2)");
  }
  if (j.contains("threads")) c.threads = detail::positive_integer<std::size_t>(j, "threads", "");
  if (j.contains("write_rounds")) c.write_rounds = field<bool>(j, "write_rounds", "");

  if (c.contexts.kind() == ContextKind::fixed_sequence && c.contexts.values().size() < c.horizon)
    throw ConfigError("contexts.values: fixed sequence shorter than the horizon");
  c.engine_config(0).validate();
  if (log && c.env.kind != MeanKind::custom_table && c.resolved_metric().kind() == MetricKind::scaled_euclidean)
    *log << "[config] note: the benchmark surfaces change faster than the scaled Euclidean metric, "
            "so the Lipschitz condition is not met; runs proceed regardless\n";
  return c;
}

/// Reads a JSON config; applies the PCZ_OUTPUT_DIR override.
inline ExperimentConfig load_config(const std::filesystem::path& path, std::ostream* log = nullptr) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  ExperimentConfig c = parse_config(j, path.parent_path().empty() ? "." : path.parent_path(), log);
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    c.output_dir = dir;
    if (log) *log << "[config] output_dir = " << dir << " (from " << kOutputDirEnv << ")\n";
  }
  return c;
}

/// The fully resolved config, defaults filled in.
inline nlohmann::json resolved_json(const ExperimentConfig& c) {
  nlohmann::json env = {{"kind", detail::mean_kind_name(c.env.kind)}, {"noise", detail::noise_name(c.env.noise)}};
  if (c.env.noise == NoiseKind::gaussian) env["sigma"] = c.env.sigma;
  if (c.env.kind == MeanKind::identical_objectives) {
    env["objectives"] = c.env.objectives;
    env["base"] = c.env.base == 0 ? "mu1" : "mu2";
  }
  if (c.env.kind == MeanKind::custom_table) env["table"] = c.env.table;
  nlohmann::json contexts = {{"kind", detail::context_kind_name(c.contexts.kind())}};
  if (c.contexts.kind() != ContextKind::uniform) contexts["values"] = c.contexts.values();
  nlohmann::json policies = nlohmann::json::array();
  for (auto p : c.policies) policies.push_back(to_string(p));
  const Metric m = c.resolved_metric();
  return {{"env", env},
          {"contexts", contexts},
          {"policies", policies},
          {"horizon", c.horizon},
          {"runs", c.runs},
          {"seed", c.seed},
          {"arm_grid", c.arm_grid},
          {"delta", c.resolved_delta()},
          {"oracle_grid", c.resolved_oracle_grid()},
          {"oracle_contexts", c.oracle_contexts},
          {"output_dir", c.output_dir.string()},
          {"metric", {{"kind", to_string(m.kind())}, {"scales", m.scales()}}},
          {"threads", c.threads},
          {"write_rounds", c.write_rounds}};
}

/// Shortest round-trip decimal form; identical on every run.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_vector(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ';';
    s += format_number(v[k]);
  }
  return s;
}

struct RunOutput {
  std::vector<RoundRecord> records;
  RegretSeries regret;
  FairnessReport fairness;
  std::size_t final_ball_count = 0;
};

struct PolicyResult {
  PolicyKind policy = PolicyKind::pcz;
  std::vector<RegretSeries> runs;
  RegretSummary summary;
  FairnessReport fairness;
};

struct ExperimentResult {
  std::vector<PolicyResult> policies;
  std::vector<std::filesystem::path> files;

  const PolicyResult& at(PolicyKind kind) const {
    for (const auto& p : policies) {
      if (p.policy == kind) return p;
    }
    throw LogicError("policy " + to_string(kind) + " was not run");
  }
};

/// Plays one policy for one run. The structural checks that are cheap per
/// round (cover of the slice, lineage, equal-radius separation, ball count)
/// raise InvariantViolation; `on_violation` sees the state first.
template <typename OnViolation>
RunOutput play_run(const ExperimentConfig& c, const Environment& env, PolicyKind kind, std::size_t run,
                   const ArmGrid& oracle_grid, OnViolation&& on_violation) {
  const PCZConfig engine = c.engine_config(run);
  Policy policy(kind, engine);
  RandomStream context_rng(engine.seed, kContextStream);
  RandomStream rng(engine.seed, kPolicyStream);
  RunOutput out;
  out.records.reserve(c.horizon);
  try {
    for (std::uint64_t t = 1; t <= c.horizon; ++t) {
      const auto ctx = sample_context(c.contexts, context_rng, t);
      out.records.push_back(policy.step(t, ctx, env, rng));
      if (policy.state().balls().size() > t)
        throw InvariantViolation("ball count exceeds the round index at round " + std::to_string(t));
    }
  } catch (const InvariantViolation&) {
    on_violation(policy.state());
    throw;
  }
  out.regret = accumulate_regret(out.records, env, oracle_grid, engine.seed);
  out.fairness = fairness_bins(out.records, env);
  out.final_ball_count = policy.state().balls().size();
  return out;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline std::string rounds_csv(const RunOutput& run) {
  std::string s = "# pcz-rounds v1\nt,x,y,ball_id,delta,cum_regret,child_created,front_size\n";
  for (std::size_t k = 0; k < run.records.size(); ++k) {
    const RoundRecord& r = run.records[k];
    s += std::to_string(r.t) + ',' + format_vector(r.context) + ',' + format_vector(r.arm) + ',' +
         (r.ball ? std::to_string(*r.ball) : "-1") + ',' + format_number(run.regret.increments[k]) + ',' +
         format_number(run.regret.cumulative[k]) + ',' + (r.child ? std::to_string(*r.child) : "-1") + ',' +
         std::to_string(r.front_size) + '\n';
  }
  return s;
}

inline std::string run_file_name(PolicyKind kind, std::size_t run) {
  std::ostringstream os;
  os << to_string(kind) << "_run" << std::setw(3) << std::setfill('0') << run << ".csv";
  return os.str();
}

}  // namespace detail

inline std::string aggregate_csv(const ExperimentResult& r) {
  std::string s = "# pcz-aggregate v1\nt";
  for (const auto& p : r.policies) s += ',' + to_string(p.policy) + "_mean," + to_string(p.policy) + "_se";
  s += '\n';
  const std::size_t len = r.policies.empty() ? 0 : r.policies.front().summary.mean.size();
  for (std::size_t t = 0; t < len; ++t) {
    s += std::to_string(t + 1);
    for (const auto& p : r.policies)
      s += ',' + format_number(p.summary.mean[t]) + ',' + format_number(p.summary.standard_error[t]);
    s += '\n';
  }
  return s;
}

inline std::string fairness_csv(const ExperimentResult& r) {
  std::string s = "# pcz-fairness v1\npolicy,bin1,bin2,bin3,bin4,bin5,bin6,pareto_selections\n";
  for (const auto& p : r.policies) {
    s += to_string(p.policy);
    for (double v : p.fairness.ratios()) s += ',' + format_number(v);
    s += ',' + std::to_string(p.fairness.total) + '\n';
  }
  return s;
}

/// Runs every policy for every run and writes
///   <out>/config.resolved.json, <out>/aggregate.csv, <out>/fairness.csv and,
///   with write_rounds, <out>/rounds/<policy>_runNNN.csv.
/// Runs may execute on several threads; outputs do not depend on the thread count.
/// On an invariant violation the offending state is written to
/// <out>/snapshot_<policy>_runNNN.json and InvariantViolation propagates.
inline ExperimentResult run_experiment(const ExperimentConfig& c, std::ostream* log = nullptr) {
  namespace fs = std::filesystem;
  const Environment env = c.env.build();
  const ArmGrid oracle_grid = make_arm_grid(c.resolved_oracle_grid());
  fs::create_directories(c.output_dir);
  if (c.write_rounds) fs::create_directories(c.output_dir / "rounds");

  ExperimentResult result;
  const std::size_t jobs = c.policies.size() * c.runs;
  std::vector<std::optional<RunOutput>> outputs(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const PolicyKind kind = c.policies[job / c.runs];
      const std::size_t run = job % c.runs;
      try {
        auto out = play_run(c, env, kind, run, oracle_grid, [&](const PCZState& state) {
          std::ostringstream name;
          name << "snapshot_" << to_string(kind) << "_run" << std::setw(3) << std::setfill('0') << run << ".json";
          detail::write_file(c.output_dir / name.str(), snapshot(state).dump(2) + "\n");
        });
        if (c.write_rounds)
          detail::write_file(c.output_dir / "rounds" / detail::run_file_name(kind, run), detail::rounds_csv(out));
        out.records.clear();
        out.records.shrink_to_fit();
        if (log) {
          std::lock_guard lock(log_mutex);
          *log << "[run] " << to_string(kind) << " run " << run << ": regret "
               << format_number(out.regret.cumulative.back()) << ", balls " << out.final_ball_count << "\n";
        }
        outputs[job] = std::move(out);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(c.threads, jobs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t p = 0; p < c.policies.size(); ++p) {
    PolicyResult pr;
    pr.policy = c.policies[p];
    for (std::size_t run = 0; run < c.runs; ++run) {
      auto& out = *outputs[p * c.runs + run];
      pr.fairness += out.fairness;
      pr.runs.push_back(std::move(out.regret));
    }
    pr.summary = summarize_runs(pr.runs);
    result.policies.push_back(std::move(pr));
  }

  detail::write_file(c.output_dir / "config.resolved.json", resolved_json(c).dump(2) + "\n");
  detail::write_file(c.output_dir / "aggregate.csv", aggregate_csv(result));
  detail::write_file(c.output_dir / "fairness.csv", fairness_csv(result));
  result.files = {c.output_dir / "config.resolved.json", c.output_dir / "aggregate.csv", c.output_dir / "fairness.csv"};
  if (c.write_rounds) {
    for (auto kind : c.policies) {
      for (std::size_t run = 0; run < c.runs; ++run)
        result.files.push_back(c.output_dir / "rounds" / detail::run_file_name(kind, run));
    }
  }
  return result;
}

/// Final mean regret per policy, with the relative difference to PCZ when it ran.
inline std::string comparison_table(const ExperimentResult& r) {
  std::ostringstream os;
  os << std::left << std::setw(20) << "policy" << std::right << std::setw(16) << "mean_regret" << std::setw(12)
     << "se" << std::setw(14) << "pcz_vs_this" << "\n";
  const PolicyResult* pcz = nullptr;
  for (const auto& p : r.policies) {
    if (p.policy == PolicyKind::pcz) pcz = &p;
  }
  for (const auto& p : r.policies) {
    const double mean = p.summary.mean.back();
    os << std::left << std::setw(20) << to_string(p.policy) << std::right << std::fixed << std::setprecision(3)
       << std::setw(16) << mean << std::setw(12) << p.summary.standard_error.back();
    if (pcz && mean > 0.0)
      os << std::setw(13) << std::showpos << 100.0 * (pcz->summary.mean.back() - mean) / mean << std::noshowpos << "%";
    os << "\n";
  }
  return os.str();
}

/// Dumps the grid Pareto structure: one row per (context node, arm node)
/// with the means, the gap and front membership, to <out>/oracle.csv.
inline std::filesystem::path write_oracle_table(const ExperimentConfig& c) {
  const Environment env = c.env.build();
  const ArmGrid arms = make_arm_grid(c.resolved_oracle_grid());
  std::string s = "# pcz-oracle v1\nx,y";
  for (std::size_t i = 0; i < env.objectives(); ++i) s += ",mu" + std::to_string(i + 1);
  s += ",psg,on_front\n";
  for (std::size_t a = 0; a < c.oracle_contexts; ++a) {
    const std::vector<double> ctx{static_cast<double>(a) / static_cast<double>(c.oracle_contexts - 1)};
    const auto means = grid_means(env, ctx, arms);
    const auto front = pareto_front(means);
    std::vector<char> on_front(means.size(), 0);
    for (auto f : front) on_front[f] = 1;
    for (std::size_t k = 0; k < arms.size(); ++k) {
      s += format_number(ctx[0]) + ',' + format_number(arms[k][0]);
      for (double m : means[k]) s += ',' + format_number(m);
      s += ',' + format_number(psg(means[k], means)) + ',' + (on_front[k] ? "1" : "0") + '\n';
    }
  }
  std::filesystem::create_directories(c.output_dir);
  const auto path = c.output_dir / "oracle.csv";
  detail::write_file(path, s);
  return path;
}

}  // namespace pcz
