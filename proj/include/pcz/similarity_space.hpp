#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcz/errors.hpp"

namespace pcz {

/// A context-arm pair of the similarity space [0,1]^dx x [0,1]^dy.
struct Point {
  std::vector<double> context;
  std::vector<double> arm;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class MetricKind { scaled_euclidean, max_per_axis };

inline std::string to_string(MetricKind kind) {
  return kind == MetricKind::scaled_euclidean ? "scaled-euclidean" : "max-of-per-axis";
}

/// Product metric on the unit cube with one scale factor per axis (context
/// axes first, then arm axes).
///
/// Construction rejects scale vectors whose diameter on the unit cube could
/// exceed 1, so D <= 1 holds for every pair of points.
class Metric {
 public:
  Metric(MetricKind kind, std::vector<double> scales, std::size_t context_dims)
      : kind_(kind), scales_(std::move(scales)), context_dims_(context_dims) {
    if (context_dims_ == 0 || context_dims_ >= scales_.size())
      throw ConfigError("metric: need at least one context axis and one arm axis");
    for (double s : scales_) {
      if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("metric: scale factors must be positive and finite");
    }
    if (kind_ == MetricKind::scaled_euclidean) {
      double diameter_sq = 0.0;
      for (double s : scales_) diameter_sq += s * s;
      if (diameter_sq > 1.0 + 1e-12) throw ConfigError("metric: scaled-euclidean diameter exceeds 1");
    } else {
      if (*std::max_element(scales_.begin(), scales_.end()) > 1.0)
        throw ConfigError("metric: max-of-per-axis scale exceeds 1");
    }
  }

  /// Scaled Euclidean metric with scale 1/sqrt(dx+dy) on every axis; for
  /// dx = dy = 1 this is sqrt((x-x')^2 + (y-y')^2) / sqrt(2).
  static Metric scaled_euclidean(std::size_t context_dims = 1, std::size_t arm_dims = 1) {
    const std::size_t n = context_dims + arm_dims;
    return Metric(MetricKind::scaled_euclidean, std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))),
                  context_dims);
  }

  static Metric max_per_axis(std::size_t context_dims = 1, std::size_t arm_dims = 1, double scale = 1.0) {
    return Metric(MetricKind::max_per_axis, std::vector<double>(context_dims + arm_dims, scale), context_dims);
  }

  MetricKind kind() const { return kind_; }
  const std::vector<double>& scales() const { return scales_; }
  std::size_t context_dims() const { return context_dims_; }
  std::size_t arm_dims() const { return scales_.size() - context_dims_; }

  double operator()(std::span<const double> ctx_a, std::span<const double> arm_a, std::span<const double> ctx_b,
                    std::span<const double> arm_b) const {
    check_dims(ctx_a.size(), arm_a.size());
    check_dims(ctx_b.size(), arm_b.size());
    double acc = 0.0;
    accumulate(acc, ctx_a, ctx_b, 0);
    accumulate(acc, arm_a, arm_b, context_dims_);
    return kind_ == MetricKind::scaled_euclidean ? std::sqrt(acc) : acc;
  }

  double operator()(const Point& p, const Point& q) const { return (*this)(p.context, p.arm, q.context, q.arm); }

  /// Distance between two points that share the same arm. Lower-bounds the
  /// full distance, so it is a valid prefilter for slice queries.
  double context_gap(std::span<const double> ctx_a, std::span<const double> ctx_b) const {
    if (ctx_a.size() != context_dims_ || ctx_b.size() != context_dims_)
      throw ConfigError("metric: context dimension mismatch");
    double acc = 0.0;
    accumulate(acc, ctx_a, ctx_b, 0);
    return kind_ == MetricKind::scaled_euclidean ? std::sqrt(acc) : acc;
  }

 private:
  void check_dims(std::size_t dx, std::size_t dy) const {
    if (dx != context_dims_ || dy != arm_dims()) throw ConfigError("metric: point dimension mismatch");
  }

  void accumulate(double& acc, std::span<const double> a, std::span<const double> b, std::size_t offset) const {
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = scales_[offset + k] * (a[k] - b[k]);
      if (kind_ == MetricKind::scaled_euclidean)
        acc += d * d;
      else
        acc = std::max(acc, std::abs(d));
    }
  }

  MetricKind kind_;
  std::vector<double> scales_;
  std::size_t context_dims_;
};

inline double distance(const Point& p, const Point& q, const Metric& m) { return m(p, q); }

using BallId = std::size_t;

/// An active ball. Radius is 2^-level; children sit one level below their parent.
struct Ball {
  BallId id = 0;
  Point center;
  int level = 0;
  std::optional<BallId> parent;
  std::uint64_t birth_round = 1;

  double radius() const { return std::ldexp(1.0, -level); }
};

/// Closed-ball membership.
inline bool ball_contains(const Ball& b, std::span<const double> ctx, std::span<const double> arm,
                          const Metric& m) {
  return m(ctx, arm, b.center.context, b.center.arm) <= b.radius();
}

inline bool ball_contains(const Ball& b, const Point& p, const Metric& m) {
  return ball_contains(b, p.context, p.arm, m);
}

/// Active balls, addressed by id (creation order) and grouped by level.
class BallCollection {
 public:
  BallId add(Point center, int level, std::optional<BallId> parent, std::uint64_t birth_round) {
    if (level < 0) throw LogicError("ball level must be non-negative");
    if (parent && (*parent >= balls_.size() || balls_[*parent].level + 1 != level))
      throw LogicError("child ball must sit one level below an existing parent");
    const BallId id = balls_.size();
    balls_.push_back(Ball{id, std::move(center), level, parent, birth_round});
    if (levels_.size() <= static_cast<std::size_t>(level)) levels_.resize(level + 1);
    levels_[level].push_back(id);
    return id;
  }

  bool contains_id(BallId id) const { return id < balls_.size(); }
  const Ball& at(BallId id) const {
    if (!contains_id(id)) throw LogicError("unknown ball id " + std::to_string(id));
    return balls_[id];
  }
  std::size_t size() const { return balls_.size(); }
  bool empty() const { return balls_.empty(); }
  auto begin() const { return balls_.begin(); }
  auto end() const { return balls_.end(); }

  /// levels()[k] lists the ids of radius-2^-k balls in creation order.
  const std::vector<std::vector<BallId>>& levels() const { return levels_; }

 private:
  std::vector<Ball> balls_;
  std::vector<std::vector<BallId>> levels_;
};

/// dom(b) = b minus every strictly smaller active ball.
inline bool domain_contains(const Ball& b, const BallCollection& active, const Point& p, const Metric& m) {
  if (!active.contains_id(b.id) || active.at(b.id).center != b.center || active.at(b.id).level != b.level)
    throw LogicError("domain_contains: ball is not a member of the active collection");
  if (!ball_contains(b, p, m)) return false;
  for (const Ball& other : active) {
    if (other.level > b.level && ball_contains(other, p, m)) return false;
  }
  return true;
}

/// Ids of the balls whose domain contains (ctx, arm): the containing balls of
/// the smallest radius. Empty iff no active ball contains the point.
/// `candidates` optionally restricts the scan (per level), e.g. to balls
/// that intersect the current context slice.
inline std::vector<BallId> domain_owners(const BallCollection& active, std::span<const double> ctx,
                                         std::span<const double> arm, const Metric& m,
                                         const std::vector<std::vector<BallId>>* candidates = nullptr) {
  const auto& levels = candidates ? *candidates : active.levels();
  std::vector<BallId> owners;
  for (std::size_t k = levels.size(); k-- > 0;) {
    for (BallId id : levels[k]) {
      if (ball_contains(active.at(id), ctx, arm, m)) owners.push_back(id);
    }
    if (!owners.empty()) break;
  }
  return owners;
}

/// True iff every probe lies in the domain of at least one active ball.
/// Balls are tried smallest first; this uses the literal domain definition.
inline bool verify_cover(const BallCollection& active, std::span<const Point> probes, const Metric& m) {
  const auto& levels = active.levels();
  for (const Point& p : probes) {
    bool covered = false;
    for (std::size_t k = levels.size(); k-- > 0 && !covered;) {
      for (BallId id : levels[k]) {
        if (domain_contains(active.at(id), active, p, m)) {
          covered = true;
          break;
        }
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace pcz
