#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "pcz/errors.hpp"
#include "pcz/similarity_space.hpp"

namespace pcz {

/// One entry per objective. Means live in [0,1]; the algebra accepts any
/// finite value, and +infinity for index vectors.
using RewardVector = std::vector<double>;

namespace detail {
inline void check_same_length(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty()) throw LogicError("reward vectors must have equal, nonzero length");
}
}  // namespace detail

/// u weakly dominates v: v_i <= u_i for every objective.
inline bool weakly_dominates(std::span<const double> u, std::span<const double> v) {
  detail::check_same_length(u, v);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (v[i] > u[i]) return false;
  }
  return true;
}

/// u dominates v: weak dominance plus at least one strict coordinate. No tolerance.
inline bool dominates(std::span<const double> u, std::span<const double> v) {
  detail::check_same_length(u, v);
  bool strict = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (v[i] > u[i]) return false;
    if (u[i] > v[i]) strict = true;
  }
  return strict;
}

/// Neither dominates the other. Equal vectors are incomparable.
inline bool incomparable(std::span<const double> u, std::span<const double> v) {
  return !dominates(u, v) && !dominates(v, u);
}

/// Indices (ascending) of the vectors not dominated by any other vector in
/// the list. Duplicates of a front vector are all kept.
///
/// Sorting lexicographically descending puts every dominator ahead of what it
/// dominates, and a dominated dominator is itself dominated by an earlier
/// front member, so each vector only needs checking against the front so far.
inline std::vector<std::size_t> pareto_front(std::span<const RewardVector> vs) {
  if (vs.empty()) throw LogicError("pareto_front: empty list");
  const std::size_t dims = vs.front().size();
  for (const auto& v : vs) {
    if (v.size() != dims || dims == 0) throw LogicError("pareto_front: reward vectors must have equal length");
  }
  std::vector<std::size_t> order(vs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(vs[b].begin(), vs[b].end(), vs[a].begin(), vs[a].end());
  });
  std::vector<std::size_t> front;
  for (std::size_t idx : order) {
    const bool dominated = std::any_of(front.begin(), front.end(),
                                       [&](std::size_t f) { return dominates(vs[f], vs[idx]); });
    if (!dominated) front.push_back(idx);
  }
  std::sort(front.begin(), front.end());
  return front;
}

/// Pareto suboptimality gap of v against the front of `all`: the smallest
/// uniform boost after which no front member dominates v.
/// Closed form: max(0, max over front f of min_i (f_i - v_i)).
inline double psg(std::span<const double> v, std::span<const RewardVector> all) {
  double gap = 0.0;
  for (std::size_t f : pareto_front(all)) {
    detail::check_same_length(all[f], v);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::min(worst, all[f][i] - v[i]);
    gap = std::max(gap, worst);
  }
  return gap;
}

/// Grid-scan oracle for psg: the first eps in {0, step, 2 step, ...} for
/// which v + eps is not dominated by any vector of `all` (equivalently, by no
/// front member). Uses neither pareto_front nor the closed form.
inline double psg_bruteforce(std::span<const double> v, std::span<const RewardVector> all, double eps_step) {
  if (!(eps_step > 0.0)) throw LogicError("psg_bruteforce: eps_step must be positive");
  if (all.empty()) throw LogicError("psg_bruteforce: empty list");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& u : all) {
    for (double x : u) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  for (double x : v) lo = std::min(lo, x);
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / eps_step)) + 1;
  std::vector<double> boosted(v.begin(), v.end());
  for (std::size_t k = 0; k <= steps; ++k) {
    const double eps = static_cast<double>(k) * eps_step;
    for (std::size_t i = 0; i < v.size(); ++i) boosted[i] = v[i] + eps;
    const bool dominated =
        std::any_of(all.begin(), all.end(), [&](const RewardVector& u) { return dominates(u, boosted); });
    if (!dominated) return eps;
  }
  return static_cast<double>(steps) * eps_step;
}

/// Size of a greedy maximal r-packing, taking points in insertion order.
/// A lower bound on the r-packing number.
inline std::size_t r_packing_greedy(std::span<const Point> points, double r, const Metric& m) {
  if (!(r > 0.0)) throw LogicError("r_packing_greedy: r must be positive");
  std::vector<const Point*> packing;
  for (const Point& p : points) {
    const bool far = std::all_of(packing.begin(), packing.end(), [&](const Point* q) { return m(p, *q) >= r; });
    if (far) packing.push_back(&p);
  }
  return packing.size();
}

}  // namespace pcz
