#pragma once

#include <span>
#include <string>

#include "pcz/envs.hpp"
#include "pcz/pcz.hpp"
#include "pcz/random.hpp"

namespace pcz {

enum class PolicyKind { pcz, contextual_zooming, random };

inline std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::pcz: return "pcz";
    case PolicyKind::contextual_zooming: return "contextual-zooming";
    case PolicyKind::random: return "random";
  }
  return "?";
}

inline PolicyKind parse_policy(const std::string& name) {
  if (name == "pcz") return PolicyKind::pcz;
  if (name == "contextual-zooming") return PolicyKind::contextual_zooming;
  if (name == "random") return PolicyKind::random;
  throw ConfigError("unknown policy '" + name + "'");
}

/// Single-objective contextual zooming: the same engine with d_r = 1, fed
/// only the first objective's reward. The record keeps the full reward.
inline RoundRecord cz_step(PCZState& state, std::span<const double> ctx, const Environment& env, RandomStream& rng) {
  if (state.config().objectives != 1) throw LogicError("cz_step: engine must be configured with one objective");
  return detail::play_round(state, ctx, env, rng);
}

/// Uniformly random arm from the grid; ignores the context for selection.
/// Consumes one arm draw, then the environment's noise draws.
inline RoundRecord random_step(std::uint64_t t, std::span<const double> ctx, const ArmGrid& arms,
                               const Environment& env, RandomStream& rng) {
  if (arms.empty()) throw LogicError("random_step: empty arm grid");
  const auto& arm = arms[rng.uniform_index(arms.size())];
  RoundRecord rec;
  rec.t = t;
  rec.context.assign(ctx.begin(), ctx.end());
  rec.arm = arm;
  rec.reward = env.sample_reward(ctx, arm, rng);
  return rec;
}

/// A learner of any of the three kinds behind one interface.
class Policy {
 public:
  Policy(PolicyKind kind, PCZConfig config) : kind_(kind), state_(engine_config(kind, std::move(config))) {}

  PolicyKind kind() const { return kind_; }
  const PCZState& state() const { return state_; }

  RoundRecord step(std::uint64_t t, std::span<const double> ctx, const Environment& env, RandomStream& rng) {
    switch (kind_) {
      case PolicyKind::pcz: return pcz::step(state_, ctx, env, rng);
      case PolicyKind::contextual_zooming: return cz_step(state_, ctx, env, rng);
      case PolicyKind::random: return random_step(t, ctx, state_.arm_grid(), env, rng);
    }
    throw LogicError("unreachable policy kind");
  }

 private:
  static PCZConfig engine_config(PolicyKind kind, PCZConfig config) {
    if (kind == PolicyKind::contextual_zooming) config.objectives = 1;
    return config;
  }

  PolicyKind kind_;
  PCZState state_;  // random keeps one only for its arm grid
};

}  // namespace pcz
