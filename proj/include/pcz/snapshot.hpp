#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pcz/errors.hpp"
#include "pcz/pcz.hpp"

namespace pcz {

inline constexpr const char* kSnapshotSchema = "pcz-state/1";

// Snapshot layout (schema "pcz-state/1"):
//   config: horizon, delta, objectives, arm_grid_size, context_dims, arm_dims,
//           metric {kind, scales}, seed, exploration (the constant A in use)
//   round:  index of the next round to play (1-based)
//   balls:  [{id, center {context, arm}, radius, level, parent (null for root),
//             birth_round, n, mean}] in id order
// All coordinates and radii are dimensionless; means are in reward units.

inline nlohmann::json metric_to_json(const Metric& m) {
  return {{"kind", to_string(m.kind())}, {"scales", m.scales()}, {"context_dims", m.context_dims()}};
}

inline Metric metric_from_json(const nlohmann::json& j) {
  const auto kind_name = j.at("kind").get<std::string>();
  MetricKind kind;
  if (kind_name == "scaled-euclidean")
    kind = MetricKind::scaled_euclidean;
  else if (kind_name == "max-of-per-axis")
    kind = MetricKind::max_per_axis;
  else
    throw ConfigError("unknown metric kind '" + kind_name + "'");
  return Metric(kind, j.at("scales").get<std::vector<double>>(), j.at("context_dims").get<std::size_t>());
}

inline nlohmann::json snapshot(const PCZState& state) {
  const PCZConfig& c = state.config();
  nlohmann::json balls = nlohmann::json::array();
  for (const Ball& b : state.balls()) {
    const BallStats& s = state.stats(b.id);
    balls.push_back({{"id", b.id},
                     {"center", {{"context", b.center.context}, {"arm", b.center.arm}}},
                     {"radius", b.radius()},
                     {"level", b.level},
                     {"parent", b.parent ? nlohmann::json(*b.parent) : nlohmann::json(nullptr)},
                     {"birth_round", b.birth_round},
                     {"n", s.n},
                     {"mean", s.mean}});
  }
  return {{"schema", kSnapshotSchema},
          {"config",
           {{"horizon", c.horizon},
            {"delta", c.resolved_delta()},
            {"objectives", c.objectives},
            {"arm_grid_size", c.arm_grid_size},
            {"context_dims", c.context_dims},
            {"arm_dims", c.arm_dims},
            {"metric", metric_to_json(c.metric)},
            {"seed", c.seed},
            {"exploration", state.exploration()}}},
          {"round", state.round()},
          {"balls", std::move(balls)}};
}

inline PCZState restore_snapshot(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != kSnapshotSchema) throw ConfigError("snapshot: unsupported schema");
    const auto& jc = j.at("config");
    PCZConfig c;
    c.horizon = jc.at("horizon").get<std::uint64_t>();
    c.delta = jc.at("delta").get<double>();
    c.objectives = jc.at("objectives").get<std::size_t>();
    c.arm_grid_size = jc.at("arm_grid_size").get<std::size_t>();
    c.context_dims = jc.at("context_dims").get<std::size_t>();
    c.arm_dims = jc.at("arm_dims").get<std::size_t>();
    c.metric = metric_from_json(jc.at("metric"));
    c.seed = jc.at("seed").get<std::uint64_t>();
    const double a = jc.at("exploration").get<double>();
    if (a != exploration_constant(c.horizon, c.resolved_delta(), c.objectives)) c.exploration_override = a;

    BallCollection balls;
    std::vector<BallStats> stats;
    for (const auto& jb : j.at("balls")) {
      if (jb.at("id").get<BallId>() != balls.size()) throw ConfigError("snapshot: ball ids must be 0..n-1 in order");
      std::optional<BallId> parent;
      if (!jb.at("parent").is_null()) parent = jb.at("parent").get<BallId>();
      Point center{jb.at("center").at("context").get<std::vector<double>>(),
                   jb.at("center").at("arm").get<std::vector<double>>()};
      const int level = jb.at("level").get<int>();
      if (jb.at("radius").get<double>() != std::ldexp(1.0, -level))
        throw ConfigError("snapshot: radius does not match level");
      balls.add(std::move(center), level, parent, jb.at("birth_round").get<std::uint64_t>());
      stats.push_back(BallStats{jb.at("n").get<std::uint64_t>(), jb.at("mean").get<RewardVector>()});
    }
    return PCZState::restore(std::move(c), balls, std::move(stats), j.at("round").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  } catch (const LogicError& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  }
}

}  // namespace pcz
