#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcz/envs.hpp"
#include "pcz/errors.hpp"
#include "pcz/pcz.hpp"

namespace pcz {

struct RegretSeries {
  std::vector<double> increments;
  std::vector<double> cumulative;
  std::uint64_t seed = 0;
};

/// Pareto regret of a record stream, measured against the front of `oracle_grid`.
inline RegretSeries accumulate_regret(std::span<const RoundRecord> records, const Environment& env,
                                      const ArmGrid& oracle_grid, std::uint64_t seed = 0) {
  RegretSeries s;
  s.seed = seed;
  s.increments.reserve(records.size());
  s.cumulative.reserve(records.size());
  double total = 0.0;
  std::uint64_t last_t = 0;
  for (const RoundRecord& r : records) {
    if (r.t <= last_t) throw LogicError("accumulate_regret: records must be ordered by round");
    last_t = r.t;
    const double delta = psg_oracle(env, r.context, r.arm, oracle_grid);
    total += delta;
    s.increments.push_back(delta);
    s.cumulative.push_back(total);
  }
  return s;
}

inline constexpr std::size_t kFairnessBins = 6;
inline constexpr double kBinWidth = 1.0 / 30.0;

struct FairnessReport {
  std::array<std::uint64_t, kFairnessBins> counts{};
  std::uint64_t total = 0;  // Pareto-optimal selections

  std::array<double, kFairnessBins> ratios() const {
    std::array<double, kFairnessBins> r{};
    if (total == 0) return r;
    for (std::size_t b = 0; b < kFairnessBins; ++b) r[b] = static_cast<double>(counts[b]) / static_cast<double>(total);
    return r;
  }

  FairnessReport& operator+=(const FairnessReport& o) {
    for (std::size_t b = 0; b < kFairnessBins; ++b) counts[b] += o.counts[b];
    total += o.total;
    return *this;
  }
};

/// Bin of arm y inside the Pareto band [low, high], or -1 outside it.
/// Bin 1 is [low, low + w]; bin i > 1 is (low + (i-1) w, low + i w], the
/// last one closed at `high`.
inline int fairness_bin(double y, double low, double high) {
  if (y < low || y > high) return -1;
  for (int i = 1; i < static_cast<int>(kFairnessBins); ++i) {
    if (y <= low + i * kBinWidth) return i;
  }
  return static_cast<int>(kFairnessBins);
}

/// Selection counts per Pareto-band bin. Environments without a closed-form
/// band produce an empty report.
inline FairnessReport fairness_bins(std::span<const RoundRecord> records, const Environment& env) {
  FairnessReport rep;
  for (const RoundRecord& r : records) {
    if (r.context.size() != 1 || r.arm.size() != 1) continue;
    const auto band = env.pareto_band(r.context[0]);
    if (!band) continue;
    const int bin = fairness_bin(r.arm[0], band->first, band->second);
    if (bin < 0) continue;
    ++rep.counts[bin - 1];
    ++rep.total;
  }
  return rep;
}

struct RegretSummary {
  std::vector<double> mean;
  std::vector<double> standard_error;
  std::size_t runs = 0;
};

/// Pointwise mean and standard error (sample standard deviation / sqrt(n)).
inline RegretSummary summarize_runs(std::span<const RegretSeries> series) {
  if (series.empty()) throw LogicError("summarize_runs: no runs");
  const std::size_t len = series.front().cumulative.size();
  for (const auto& s : series) {
    if (s.cumulative.size() != len) throw LogicError("summarize_runs: runs differ in length");
  }
  const double n = static_cast<double>(series.size());
  RegretSummary out{std::vector<double>(len, 0.0), std::vector<double>(len, 0.0), series.size()};
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (const auto& s : series) sum += s.cumulative[t];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& s : series) ss += (s.cumulative[t] - mean) * (s.cumulative[t] - mean);
    out.mean[t] = mean;
    out.standard_error[t] = series.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
  }
  return out;
}

}  // namespace pcz
