#pragma once

#include <span>
#include <vector>

#include "pcz/envs.hpp"
#include "pcz/pareto.hpp"
#include "pcz/similarity_space.hpp"

namespace pcz {

/// Grid discretization of the near-optimal set: every (x, y) on the grids
/// whose Pareto suboptimality gap is at most 12 r.
inline std::vector<Point> near_optimal_set(const Environment& env, const std::vector<double>& context_grid,
                                           const ArmGrid& arm_grid, double r) {
  if (context_grid.empty() || arm_grid.empty()) throw LogicError("near_optimal_set: empty grid");
  if (!(r > 0.0)) throw LogicError("near_optimal_set: r must be positive");
  std::vector<Point> out;
  for (double x : context_grid) {
    const std::vector<double> ctx{x};
    const auto means = grid_means(env, ctx, arm_grid);
    for (std::size_t k = 0; k < arm_grid.size(); ++k) {
      if (psg(means[k], means) <= 12.0 * r) out.push_back(Point{ctx, arm_grid[k]});
    }
  }
  return out;
}

/// Empirical Pareto r-zooming number: greedy r-packing of the near-optimal set.
inline std::size_t zooming_number_estimate(const Environment& env, const std::vector<double>& context_grid,
                                           const ArmGrid& arm_grid, double r, const Metric& m) {
  const auto near = near_optimal_set(env, context_grid, arm_grid, r);
  return r_packing_greedy(near, r, m);
}

}  // namespace pcz
