#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcz/errors.hpp"
#include "pcz/pareto.hpp"
#include "pcz/random.hpp"

namespace pcz {

using ArmGrid = std::vector<std::vector<double>>;

/// Uniform grid of `per_axis` points on [0,1] per arm axis (product grid,
/// first axis varying slowest).
inline ArmGrid make_arm_grid(std::size_t per_axis, std::size_t arm_dims = 1) {
  if (per_axis < 2) throw ConfigError("arm grid needs at least 2 points per axis");
  if (arm_dims == 0) throw ConfigError("arm grid needs at least one axis");
  std::size_t total = 1;
  for (std::size_t k = 0; k < arm_dims; ++k) total *= per_axis;
  ArmGrid grid(total, std::vector<double>(arm_dims));
  const double denom = static_cast<double>(per_axis - 1);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rest = n;
    for (std::size_t k = arm_dims; k-- > 0;) {
      grid[n][k] = static_cast<double>(rest % per_axis) / denom;
      rest /= per_axis;
    }
  }
  return grid;
}

/// Ridge lines of the bi-objective benchmark surface: objective 1 peaks on
/// y = y1(x), objective 2 on y = y2(x); the Pareto front at x is [y1, y2].
inline double ridge_low(double x) { return (8.0 - 8.0 * x) / 10.0; }
inline double ridge_high(double x) { return (10.0 - 8.0 * x) / 10.0; }

inline double benchmark_objective1(double x, double y) {
  return std::max(0.0, 1.0 - 5.0 * std::abs(y - ridge_low(x)));
}

inline double benchmark_objective2(double x, double y) {
  const double y2 = ridge_high(x);
  return y <= y2 ? std::max(0.0, 1.0 - 5.0 * (y2 - y)) : std::max(0.0, 1.0 - (y - y2) / 4.0);
}

enum class MeanKind { benchmark, identical_objectives, custom_table };
enum class NoiseKind { bernoulli, gaussian, none };

/// Means tabulated on a (context, arm) grid, bilinearly interpolated.
struct MeanTable {
  std::vector<double> context_grid;
  std::vector<double> arm_grid;
  // means[i][a][b]: objective i, context node a, arm node b.
  std::vector<std::vector<std::vector<double>>> means;

  void validate() const {
    auto check_axis = [](const std::vector<double>& g, const char* name) {
      if (g.size() < 2) throw ConfigError(std::string("custom table: ") + name + " needs at least 2 nodes");
      if (g.front() != 0.0 || g.back() != 1.0)
        throw ConfigError(std::string("custom table: ") + name + " must span [0,1]");
      for (std::size_t k = 1; k < g.size(); ++k) {
        if (!(g[k] > g[k - 1])) throw ConfigError(std::string("custom table: ") + name + " must be increasing");
      }
    };
    check_axis(context_grid, "context_grid");
    check_axis(arm_grid, "arm_grid");
    if (means.empty()) throw ConfigError("custom table: means must have at least one objective");
    for (std::size_t i = 0; i < means.size(); ++i) {
      if (means[i].size() != context_grid.size())
        throw ConfigError("custom table: means[" + std::to_string(i) + "] has wrong context extent");
      for (std::size_t a = 0; a < means[i].size(); ++a) {
        if (means[i][a].size() != arm_grid.size())
          throw ConfigError("custom table: means[" + std::to_string(i) + "][" + std::to_string(a) +
                            "] has wrong arm extent");
        for (double v : means[i][a]) {
          if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("custom table: means must lie in [0,1]");
        }
      }
    }
  }

  double value(std::size_t objective, double x, double y) const {
    auto locate = [](const std::vector<double>& g, double v) {
      auto it = std::upper_bound(g.begin(), g.end(), v);
      std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(it - g.begin()), 1, g.size() - 1);
      const double w = (v - g[hi - 1]) / (g[hi] - g[hi - 1]);
      return std::pair{hi - 1, w};
    };
    const auto [a, wx] = locate(context_grid, x);
    const auto [b, wy] = locate(arm_grid, y);
    const auto& m = means[objective];
    return (1 - wx) * (1 - wy) * m[a][b] + (1 - wx) * wy * m[a][b + 1] + wx * (1 - wy) * m[a + 1][b] +
           wx * wy * m[a + 1][b + 1];
  }

  static MeanTable from_json(const nlohmann::json& j) {
    MeanTable t;
    for (const auto& [key, _] : j.items()) {
      if (key != "context_grid" && key != "arm_grid" && key != "means")
        throw ConfigError("custom table: unknown key '" + key + "'");
    }
    try {
      t.context_grid = j.at("context_grid").get<std::vector<double>>();
      t.arm_grid = j.at("arm_grid").get<std::vector<double>>();
      t.means = j.at("means").get<std::vector<std::vector<std::vector<double>>>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("custom table: ") + e.what());
    }
    t.validate();
    return t;
  }

  static MeanTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("custom table: cannot open " + path.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("custom table: " + path.string() + ": " + e.what());
    }
    return from_json(j);
  }
};

/// Stationary reward environment over [0,1] x [0,1].
///
/// benchmark: the two-ridge surface. identical_objectives: one base surface
/// copied into every objective, with one shared noise draw per round.
/// custom_table: tabulated means.
class Environment {
 public:
  static Environment benchmark(NoiseKind noise = NoiseKind::bernoulli, double sigma = 0.5) {
    return Environment(MeanKind::benchmark, noise, sigma, 2);
  }

  /// `base_objective` picks which benchmark surface (0 or 1) all objectives copy.
  static Environment identical_objectives(std::size_t objectives, int base_objective = 0,
                                          NoiseKind noise = NoiseKind::bernoulli, double sigma = 0.5) {
    if (base_objective != 0 && base_objective != 1) throw ConfigError("identical-objectives: base must be 0 or 1");
    Environment env(MeanKind::identical_objectives, noise, sigma, objectives);
    env.base_objective_ = base_objective;
    return env;
  }

  static Environment custom_table(MeanTable table, NoiseKind noise = NoiseKind::bernoulli, double sigma = 0.5) {
    table.validate();
    const std::size_t objectives = table.means.size();
    Environment env(MeanKind::custom_table, noise, sigma, objectives);
    env.table_ = std::move(table);
    return env;
  }

  MeanKind mean_kind() const { return mean_kind_; }
  NoiseKind noise() const { return noise_; }
  double sigma() const { return sigma_; }
  std::size_t objectives() const { return objectives_; }
  int base_objective() const { return base_objective_; }
  const std::optional<MeanTable>& table() const { return table_; }

  RewardVector mean_reward(double x, double y) const {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
      throw ConfigError("mean_reward: point outside the unit square");
    RewardVector mu(objectives_);
    switch (mean_kind_) {
      case MeanKind::benchmark:
        mu[0] = benchmark_objective1(x, y);
        mu[1] = benchmark_objective2(x, y);
        break;
      case MeanKind::identical_objectives: {
        const double base = base_objective_ == 0 ? benchmark_objective1(x, y) : benchmark_objective2(x, y);
        std::fill(mu.begin(), mu.end(), base);
        break;
      }
      case MeanKind::custom_table:
        for (std::size_t i = 0; i < objectives_; ++i) mu[i] = table_->value(i, x, y);
        break;
    }
    return mu;
  }

  RewardVector mean_reward(std::span<const double> ctx, std::span<const double> arm) const {
    if (ctx.size() != 1 || arm.size() != 1) throw ConfigError("environment: expects 1-d contexts and arms");
    return mean_reward(ctx[0], arm[0]);
  }

  /// Noisy reward. Draw count per call is fixed by the noise model:
  /// bernoulli one per objective (one in total when objectives are
  /// identical), gaussian two per objective (two in total when identical),
  /// none zero.
  RewardVector sample_reward(std::span<const double> ctx, std::span<const double> arm, RandomStream& rng) const {
    RewardVector r = mean_reward(ctx, arm);
    if (noise_ == NoiseKind::none) return r;
    const bool shared = mean_kind_ == MeanKind::identical_objectives;
    const std::size_t draws = shared ? 1 : objectives_;
    for (std::size_t i = 0; i < draws; ++i) {
      if (noise_ == NoiseKind::bernoulli)
        r[i] = rng.bernoulli(r[i]) ? 1.0 : 0.0;
      else
        r[i] += sigma_ * rng.gaussian();
    }
    if (shared) std::fill(r.begin() + 1, r.end(), r[0]);
    return r;
  }

  /// Interval of Pareto-optimal arms at context x, when it is known in closed form.
  std::optional<std::pair<double, double>> pareto_band(double x) const {
    if (mean_kind_ != MeanKind::benchmark) return std::nullopt;
    return std::pair{ridge_low(x), ridge_high(x)};
  }

 private:
  Environment(MeanKind kind, NoiseKind noise, double sigma, std::size_t objectives)
      : mean_kind_(kind), noise_(noise), sigma_(sigma), objectives_(objectives) {
    if (objectives_ == 0) throw ConfigError("environment: need at least one objective");
    if (noise_ == NoiseKind::gaussian && !(sigma_ > 0.0 && sigma_ <= 0.5))
      throw ConfigError("environment: gaussian sigma must lie in (0, 1/2]");
  }

  MeanKind mean_kind_;
  NoiseKind noise_;
  double sigma_;
  std::size_t objectives_;
  int base_objective_ = 0;
  std::optional<MeanTable> table_;
};

enum class ContextKind { uniform, fixed_sequence, round_robin };

/// Source of x_t. Rounds are 1-based.
class ContextGenerator {
 public:
  static ContextGenerator uniform(std::size_t dims = 1) {
    ContextGenerator g;
    g.kind_ = ContextKind::uniform;
    g.dims_ = dims;
    return g;
  }

  static ContextGenerator fixed_sequence(std::vector<std::vector<double>> values) {
    return listed(ContextKind::fixed_sequence, std::move(values));
  }

  static ContextGenerator round_robin(std::vector<std::vector<double>> values) {
    return listed(ContextKind::round_robin, std::move(values));
  }

  ContextKind kind() const { return kind_; }
  std::size_t dims() const { return dims_; }
  const std::vector<std::vector<double>>& values() const { return values_; }

  std::vector<double> sample(RandomStream& rng, std::uint64_t t) const {
    if (t == 0) throw LogicError("sample_context: rounds start at 1");
    switch (kind_) {
      case ContextKind::uniform: {
        std::vector<double> x(dims_);
        for (double& v : x) v = rng.uniform01();
        return x;
      }
      case ContextKind::fixed_sequence:
        if (t > values_.size())
          throw ConfigError("fixed context sequence exhausted at round " + std::to_string(t));
        return values_[t - 1];
      case ContextKind::round_robin:
        return values_[(t - 1) % values_.size()];
    }
    return {};
  }

 private:
  static ContextGenerator listed(ContextKind kind, std::vector<std::vector<double>> values) {
    if (values.empty()) throw ConfigError("context list must be nonempty");
    const std::size_t dims = values.front().size();
    for (const auto& v : values) {
      if (v.size() != dims || dims == 0) throw ConfigError("context list entries must share one dimension");
      for (double c : v) {
        if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("context values must lie in [0,1]");
      }
    }
    ContextGenerator g;
    g.kind_ = kind;
    g.dims_ = dims;
    g.values_ = std::move(values);
    return g;
  }

  ContextKind kind_ = ContextKind::uniform;
  std::size_t dims_ = 1;
  std::vector<std::vector<double>> values_;
};

inline std::vector<double> sample_context(const ContextGenerator& gen, RandomStream& rng, std::uint64_t t) {
  return gen.sample(rng, t);
}

/// Mean vectors of every grid arm at context x.
inline std::vector<RewardVector> grid_means(const Environment& env, std::span<const double> ctx,
                                            const ArmGrid& arms) {
  std::vector<RewardVector> out;
  out.reserve(arms.size());
  for (const auto& y : arms) out.push_back(env.mean_reward(ctx, y));
  return out;
}

/// Per-round regret increment: psg of arm y at context x against the front
/// of the grid arms.
inline double psg_oracle(const Environment& env, std::span<const double> ctx, std::span<const double> arm,
                         const ArmGrid& arms) {
  if (arms.empty()) throw LogicError("psg_oracle: empty arm grid");
  const auto all = grid_means(env, ctx, arms);
  const auto v = env.mean_reward(ctx, arm);
  return psg(v, all);
}

inline double psg_oracle(const Environment& env, double x, double y, const ArmGrid& arms) {
  const double ctx[1] = {x};
  const double arm[1] = {y};
  return psg_oracle(env, ctx, arm, arms);
}

}  // namespace pcz
