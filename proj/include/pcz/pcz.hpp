#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcz/envs.hpp"
#include "pcz/errors.hpp"
#include "pcz/pareto.hpp"
#include "pcz/random.hpp"
#include "pcz/similarity_space.hpp"

namespace pcz {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Confidence constant A = 1 + 2 ln(2 sqrt(2) d_r T^(3/2) / delta).
inline double exploration_constant(std::uint64_t horizon, double delta, std::size_t objectives) {
  const double t = static_cast<double>(horizon);
  return 1.0 + 2.0 * std::log(2.0 * std::numbers::sqrt2 * static_cast<double>(objectives) * t * std::sqrt(t) / delta);
}

/// sqrt(2A / n); +infinity for a ball that was never selected.
inline double sample_uncertainty(std::uint64_t n, double a) {
  if (n == 0) return kInfinity;
  return std::sqrt(2.0 * a / static_cast<double>(n));
}

struct PCZConfig {
  std::uint64_t horizon = 100000;
  std::optional<double> delta;  // unset means 1/T
  std::size_t objectives = 2;
  std::size_t arm_grid_size = 101;
  std::size_t context_dims = 1;
  std::size_t arm_dims = 1;
  Metric metric = Metric::scaled_euclidean();
  std::uint64_t seed = 0;
  // Replaces the computed confidence constant when set. Lets engines with
  // different d_r share one A.
  std::optional<double> exploration_override;

  double resolved_delta() const { return delta.value_or(1.0 / static_cast<double>(horizon)); }

  double exploration() const {
    return exploration_override.value_or(exploration_constant(horizon, resolved_delta(), objectives));
  }

  void validate() const {
    if (horizon < 1) throw ConfigError("horizon must be at least 1");
    const double d = resolved_delta();
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("delta must lie in (0,1)");
    if (objectives < 1) throw ConfigError("objectives must be at least 1");
    if (arm_grid_size < 2) throw ConfigError("arm grid size must be at least 2");
    if (metric.context_dims() != context_dims || metric.arm_dims() != arm_dims)
      throw ConfigError("metric dimensions do not match the similarity space");
    if (exploration_override && !(*exploration_override > 0.0))
      throw ConfigError("exploration constant must be positive");
  }
};

struct BallStats {
  std::uint64_t n = 0;
  RewardVector mean;
};

/// Audit trail of one round.
struct RoundRecord {
  std::uint64_t t = 0;
  std::vector<double> context;
  std::vector<double> arm;
  std::optional<BallId> ball;  // unset for policies without balls
  RewardVector reward;
  std::optional<BallId> child;
  std::size_t front_size = 0;
};

/// Per-round view of the domains restricted to the context slice.
struct SliceDomains {
  std::vector<std::vector<BallId>> owners;  // owners[k]: balls whose domain contains (x, grid arm k)
  std::vector<BallId> relevant;             // ascending
};

struct Selection {
  std::size_t arm_index = 0;
  BallId ball = 0;
  std::size_t front_size = 0;
};

/// Full state of a Pareto contextual zooming learner.
class PCZState {
 public:
  explicit PCZState(PCZConfig config)
      : config_(std::move(config)),
        arm_grid_((config_.validate(), make_arm_grid(config_.arm_grid_size, config_.arm_dims))),
        exploration_(config_.exploration()) {
    Point mid{std::vector<double>(config_.context_dims, 0.5), std::vector<double>(config_.arm_dims, 0.5)};
    balls_.add(std::move(mid), 0, std::nullopt, 1);
    stats_.push_back(BallStats{0, RewardVector(config_.objectives, 0.0)});
  }

  const PCZConfig& config() const { return config_; }
  const Metric& metric() const { return config_.metric; }
  const ArmGrid& arm_grid() const { return arm_grid_; }
  double exploration() const { return exploration_; }
  const BallCollection& balls() const { return balls_; }
  const BallStats& stats(BallId id) const {
    balls_.at(id);
    return stats_[id];
  }
  std::uint64_t round() const { return round_; }

  double pre_index(BallId id, std::size_t objective) const {
    const BallStats& s = stats(id);
    if (objective >= config_.objectives) throw LogicError("pre_index: objective out of range");
    if (s.n == 0) return kInfinity;
    return s.mean[objective] + sample_uncertainty(s.n, exploration_) + balls_.at(id).radius();
  }

  double index(BallId id, std::size_t objective) const { return index_vector(id)[objective]; }

  /// g_B: r(B) + min over active B' of (pre-index of B' + distance between centers).
  RewardVector index_vector(BallId id) const {
    const Ball& b = balls_.at(id);
    RewardVector g(config_.objectives, kInfinity);
    for (const Ball& other : balls_) {
      if (stats_[other.id].n == 0) continue;
      const double d = config_.metric(other.center, b.center);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], pre_index(other.id, i) + d);
    }
    for (double& v : g) v += b.radius();
    return g;
  }

  /// Domain owners of every grid arm at context x. Throws if some grid arm
  /// is in no domain, which would mean the cover property failed.
  SliceDomains slice_domains(std::span<const double> ctx) const {
    std::vector<std::vector<BallId>> candidates(balls_.levels().size());
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      for (BallId id : balls_.levels()[k]) {
        const Ball& b = balls_.at(id);
        if (config_.metric.context_gap(ctx, b.center.context) <= b.radius()) candidates[k].push_back(id);
      }
    }
    SliceDomains out;
    out.owners.reserve(arm_grid_.size());
    std::vector<char> seen(balls_.size(), 0);
    for (const auto& arm : arm_grid_) {
      auto owners = domain_owners(balls_, ctx, arm, config_.metric, &candidates);
      if (owners.empty()) throw InvariantViolation("cover violated: a grid arm lies in no ball domain");
      for (BallId id : owners) seen[id] = 1;
      out.owners.push_back(std::move(owners));
    }
    for (BallId id = 0; id < seen.size(); ++id) {
      if (seen[id]) out.relevant.push_back(id);
    }
    return out;
  }

  std::vector<BallId> relevant_balls(std::span<const double> ctx) const { return slice_domains(ctx).relevant; }

  /// Relevant balls whose index vector no other relevant ball dominates.
  std::vector<BallId> pareto_ball_set(std::span<const BallId> relevant) const {
    if (relevant.empty()) throw LogicError("pareto_ball_set: no relevant balls");
    std::vector<RewardVector> indices;
    indices.reserve(relevant.size());
    for (BallId id : relevant) indices.push_back(index_vector(id));
    std::vector<BallId> out;
    for (std::size_t k : pareto_front(indices)) out.push_back(relevant[k]);
    return out;
  }

  /// Draws an arm uniformly from the union of the Pareto balls' domains on
  /// the slice, then a ball uniformly among the Pareto balls owning that arm.
  /// Consumes exactly two draws: arm, then ball.
  Selection select(std::span<const double> ctx, RandomStream& rng) const {
    const SliceDomains slice = slice_domains(ctx);
    return draw_from_front(slice, pareto_ball_set(slice.relevant), rng);
  }

  /// The two draws of select() on a precomputed slice and Pareto ball set.
  static Selection draw_from_front(const SliceDomains& slice, std::span<const BallId> front, RandomStream& rng) {
    BallId max_id = 0;
    for (BallId id : slice.relevant) max_id = std::max(max_id, id);
    for (BallId id : front) max_id = std::max(max_id, id);
    std::vector<char> in_front(max_id + 1, 0);
    for (BallId id : front) in_front[id] = 1;

    std::vector<std::size_t> eligible;
    for (std::size_t k = 0; k < slice.owners.size(); ++k) {
      const auto& owners = slice.owners[k];
      if (std::any_of(owners.begin(), owners.end(), [&](BallId id) { return id <= max_id && in_front[id]; }))
        eligible.push_back(k);
    }
    if (eligible.empty()) throw InvariantViolation("no grid arm lies in a Pareto ball domain");
    const std::size_t arm = eligible[rng.uniform_index(eligible.size())];

    std::vector<BallId> candidates;
    for (BallId id : slice.owners[arm]) {
      if (id <= max_id && in_front[id]) candidates.push_back(id);
    }
    const BallId ball = candidates[rng.uniform_index(candidates.size())];
    return Selection{arm, ball, front.size()};
  }

  /// Credits `reward` to ball `id` and advances the round. If the ball's
  /// sample uncertainty (before this update) is at most its radius, a child
  /// of half the radius is first activated at `point`; its id is returned.
  std::optional<BallId> update(BallId id, const Point& point, std::span<const double> reward) {
    const int level = balls_.at(id).level;
    const double radius = balls_.at(id).radius();
    if (reward.size() != config_.objectives) throw LogicError("update: reward length does not match d_r");
    std::optional<BallId> child;
    if (sample_uncertainty(stats_[id].n, exploration_) <= radius) {
      child = balls_.add(point, level + 1, id, round_);
      stats_.push_back(BallStats{0, RewardVector(config_.objectives, 0.0)});
      check_new_child(*child);
    }
    BallStats& sel = stats_[id];
    const double n = static_cast<double>(sel.n);
    for (std::size_t i = 0; i < reward.size(); ++i) sel.mean[i] = (sel.mean[i] * n + reward[i]) / (n + 1.0);
    ++sel.n;
    ++round_;
    return child;
  }

  /// Rebuilds a state from explicit balls and statistics (snapshots, fixtures).
  static PCZState restore(PCZConfig config, const BallCollection& balls, std::vector<BallStats> stats,
                          std::uint64_t round) {
    PCZState state(std::move(config));
    if (balls.empty() || balls.at(0).level != 0 || balls.at(0).parent)
      throw ConfigError("restore: ball 0 must be the radius-1 root");
    if (stats.size() != balls.size()) throw ConfigError("restore: one stats entry per ball required");
    if (round < 1) throw ConfigError("restore: rounds start at 1");
    for (const Ball& b : balls) {
      if (b.id != 0 && (!b.parent || b.level == 0)) throw ConfigError("restore: only ball 0 may be a root");
      if (b.parent && state.config_.metric(b.center, balls.at(*b.parent).center) > balls.at(*b.parent).radius())
        throw ConfigError("restore: child center outside its parent");
      const auto& s = stats[b.id];
      if (s.mean.size() != state.config_.objectives) throw ConfigError("restore: mean length does not match d_r");
      if (s.n == 0 && std::any_of(s.mean.begin(), s.mean.end(), [](double v) { return v != 0.0; }))
        throw ConfigError("restore: unselected ball must have zero means");
    }
    state.balls_ = balls;
    state.stats_ = std::move(stats);
    state.round_ = round;
    return state;
  }

 private:
  void check_new_child(BallId id) const {
    const Ball& c = balls_.at(id);
    const Ball& parent = balls_.at(*c.parent);
    if (c.radius() != parent.radius() / 2 || config_.metric(c.center, parent.center) > parent.radius())
      throw InvariantViolation("child ball " + std::to_string(id) + " breaks lineage");
    for (BallId other : balls_.levels()[c.level]) {
      if (other != id && config_.metric(c.center, balls_.at(other).center) < c.radius())
        throw InvariantViolation("balls " + std::to_string(id) + " and " + std::to_string(other) +
                                 " of equal radius have centers closer than the radius");
    }
  }

  PCZConfig config_;
  ArmGrid arm_grid_;
  double exploration_;
  BallCollection balls_;
  std::vector<BallStats> stats_;
  std::uint64_t round_ = 1;
};

inline PCZState init(PCZConfig config) { return PCZState(std::move(config)); }

namespace detail {

// One round against `env`; the learner sees the first d_r reward entries,
// the record keeps all of them.
inline RoundRecord play_round(PCZState& state, std::span<const double> ctx, const Environment& env,
                              RandomStream& rng) {
  if (state.round() > state.config().horizon)
    throw LogicError("step: horizon of " + std::to_string(state.config().horizon) + " rounds exhausted");
  const std::uint64_t t = state.round();
  const Selection sel = state.select(ctx, rng);
  const auto& arm = state.arm_grid()[sel.arm_index];
  RewardVector reward = env.sample_reward(ctx, arm, rng);
  const std::span<const double> learned(reward.data(), state.config().objectives);
  Point point{std::vector<double>(ctx.begin(), ctx.end()), arm};
  const auto child = state.update(sel.ball, point, learned);
  return RoundRecord{t, std::move(point.context), arm, sel.ball, std::move(reward), child, sel.front_size};
}

}  // namespace detail

/// One round: relevant balls, Pareto ball set, arm and ball draws, reward, update.
inline RoundRecord step(PCZState& state, std::span<const double> ctx, const Environment& env, RandomStream& rng) {
  if (env.objectives() != state.config().objectives)
    throw LogicError("step: environment and learner disagree on the number of objectives");
  return detail::play_round(state, ctx, env, rng);
}

}  // namespace pcz
