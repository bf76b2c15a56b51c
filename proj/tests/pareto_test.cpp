#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "pcz/envs.hpp"
#include "pcz/pareto.hpp"
#include "pcz/zooming.hpp"
#include "test_support.hpp"

namespace pcz {
namespace {

using V = std::vector<double>;
using testing::front_by_exhaustion;
using testing::random_vectors;

TEST(Dominance, EqualVectors) {
  const V u{0.3, 0.6};
  EXPECT_TRUE(weakly_dominates(u, u));
  EXPECT_FALSE(dominates(u, u));
  EXPECT_TRUE(incomparable(u, u));
}

TEST(Dominance, ConflictingCoordinates) {
  EXPECT_FALSE(weakly_dominates(V{1, 0}, V{0, 1}));
  EXPECT_TRUE(incomparable(V{1, 0}, V{0, 1}));
}

TEST(Dominance, CoordinatewiseBetter) {
  EXPECT_TRUE(weakly_dominates(V{0.5, 0.4}, V{0.2, 0.3}));
  EXPECT_TRUE(dominates(V{0.5, 0.4}, V{0.2, 0.3}));
  EXPECT_FALSE(incomparable(V{0.5, 0.4}, V{0.2, 0.3}));
}

TEST(Dominance, StrictnessHasNoTolerance) {
  EXPECT_TRUE(dominates(V{0.5, 0.4}, V{0.5, 0.4 - 1e-9}));
}

TEST(Dominance, LengthMismatchIsLogicError) {
  EXPECT_THROW(dominates(V{1, 2}, V{1}), LogicError);
  EXPECT_THROW(weakly_dominates(V{1}, V{1, 2}), LogicError);
  EXPECT_THROW(incomparable(V{}, V{}), LogicError);
}

TEST(Dominance, AntisymmetryAndTransitivity) {
  RandomStream rng(5);
  for (int k = 0; k < 100000; ++k) {
    // Coarse values make ties common.
    V u(3), v(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = static_cast<double>(rng.uniform_index(4));
      v[i] = static_cast<double>(rng.uniform_index(4));
    }
    ASSERT_FALSE(dominates(u, v) && dominates(v, u));
  }
  for (int k = 0; k < 10000; ++k) {
    V a(2), b(2), c(2);
    for (int i = 0; i < 2; ++i) {
      a[i] = static_cast<double>(rng.uniform_index(3));
      b[i] = static_cast<double>(rng.uniform_index(3));
      c[i] = static_cast<double>(rng.uniform_index(3));
    }
    if (weakly_dominates(a, b) && weakly_dominates(b, c)) { ASSERT_TRUE(weakly_dominates(a, c)); }
  }
}

TEST(ParetoFront, Singleton) { EXPECT_EQ(pareto_front(std::vector<V>{{0.2, 0.1}}), (std::vector<std::size_t>{0})); }

TEST(ParetoFront, AllIncomparable) {
  EXPECT_EQ(pareto_front(std::vector<V>{{1, 0}, {0, 1}, {0.4, 0.4}}), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ParetoFront, DominatedEntryDropped) {
  EXPECT_EQ(pareto_front(std::vector<V>{{0.5, 0.4}, {0.3, 0.6}, {0.2, 0.3}}), (std::vector<std::size_t>{0, 1}));
}

TEST(ParetoFront, DuplicatesOfFrontVectorAllKept) {
  EXPECT_EQ(pareto_front(std::vector<V>{{0.5, 0.5}, {0.1, 0.1}, {0.5, 0.5}}), (std::vector<std::size_t>{0, 2}));
}

TEST(ParetoFront, InfiniteEntriesAreNeverDominated) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(pareto_front(std::vector<V>{{inf, inf}, {3, 4}, {inf, inf}}), (std::vector<std::size_t>{0, 2}));
}

TEST(ParetoFront, EmptyIsLogicError) { EXPECT_THROW(pareto_front(std::vector<V>{}), LogicError); }

TEST(ParetoFront, MatchesExhaustiveDefinition) {
  RandomStream rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(64);
    const std::size_t d = 1 + rng.uniform_index(4);
    auto vs = random_vectors(rng, n, d);
    if (trial % 2 == 0) {
      for (auto& v : vs) {
        for (double& x : v) x = std::floor(x * 4.0);  // ties and duplicates
      }
    }
    ASSERT_EQ(pareto_front(vs), front_by_exhaustion(vs)) << "trial " << trial;
  }
}

TEST(Psg, ZeroOnFront) {
  const std::vector<V> all{{0.5, 0.4}, {0.3, 0.6}, {0.2, 0.3}};
  EXPECT_EQ(psg(all[0], all), 0.0);
  EXPECT_EQ(psg(all[1], all), 0.0);
}

TEST(Psg, DominatedArmGap) {
  const std::vector<V> all{{0.5, 0.4}, {0.3, 0.6}, {0.2, 0.3}};
  EXPECT_NEAR(psg(all[2], all), 0.1, 1e-12);
  EXPECT_NEAR(psg_bruteforce(all[2], all, 1e-4), 0.1, 2e-4);
}

TEST(Psg, WeaklyDominatedVectorHasZeroGap) {
  // (0, 0.9) is dominated by (0, 1), but no vector beats it in every objective.
  const std::vector<V> all{{0.0, 1.0}, {0.0, 0.9}, {0.5, 0.5}};
  EXPECT_EQ(psg(all[1], all), 0.0);
  EXPECT_EQ(pareto_front(all), (std::vector<std::size_t>{0, 2}));
}

TEST(Psg, SingleObjectiveIsScalarGap) {
  const std::vector<V> all{{0.9}, {0.7}};
  EXPECT_NEAR(psg(all[1], all), 0.2, 1e-12);
}

TEST(Psg, LengthMismatchIsLogicError) {
  const std::vector<V> all{{0.9, 0.1}};
  EXPECT_THROW(psg(V{0.2}, all), LogicError);
}

TEST(PsgBruteforce, ZeroOnFront) {
  const std::vector<V> all{{0.5, 0.4}, {0.3, 0.6}};
  EXPECT_EQ(psg_bruteforce(all[0], all, 1e-3), 0.0);
}

TEST(Psg, AgreesWithGridOracleOnRandomInstances) {
  RandomStream rng(23);
  const double step = 1e-4;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto all = random_vectors(rng, 5, 3);
    for (const auto& v : all) ASSERT_NEAR(psg(v, all), psg_bruteforce(v, all, step), 2 * step);
  }
}

// Continuous draws make ties, and with them weakly dominated vectors, vanish.
TEST(Psg, NonNegativeAndZeroExactlyOnFrontForGenericVectors) {
  RandomStream rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto all = random_vectors(rng, 2 + rng.uniform_index(10), 1 + rng.uniform_index(3));
    const auto front = front_by_exhaustion(all);
    for (std::size_t k = 0; k < all.size(); ++k) {
      const double gap = psg(all[k], all);
      ASSERT_GE(gap, 0.0);
      const bool on_front = std::find(front.begin(), front.end(), k) != front.end();
      ASSERT_EQ(gap == 0.0, on_front);
    }
  }
}

TEST(Psg, UniformBoostReducesGapByBoostUpToGap) {
  // Dyadic values keep every sum and difference exact.
  RandomStream rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<V> peers(6, V(2));
    for (auto& p : peers) {
      for (double& x : p) x = static_cast<double>(rng.uniform_index(1025)) / 1024.0;
    }
    V v(2);
    for (double& x : v) x = static_cast<double>(rng.uniform_index(1025)) / 1024.0;
    const double c = static_cast<double>(1 + rng.uniform_index(256)) / 1024.0;
    V boosted = v;
    for (double& x : boosted) x += c;
    const double before = psg(v, peers);
    ASSERT_EQ(psg(boosted, peers), before - std::min(c, before));
  }
}

TEST(RPacking, ClusterPacksToOne) {
  const auto m = Metric::max_per_axis();
  std::vector<Point> pts{{{0.5}, {0.5}}, {{0.52}, {0.49}}, {{0.48}, {0.53}}};
  EXPECT_EQ(r_packing_greedy(pts, 0.1, m), 1u);
}

TEST(RPacking, DistanceExactlyRAdmitsBoth) {
  const auto m = Metric::max_per_axis();
  std::vector<Point> pts{{{0.0}, {0.5}}, {{0.25}, {0.5}}};
  EXPECT_EQ(r_packing_greedy(pts, 0.25, m), 2u);
}

TEST(RPacking, GridOfStepRPacksFully) {
  const auto m = Metric::max_per_axis();
  std::vector<Point> pts;
  for (int k = 0; k <= 8; ++k) pts.push_back(Point{{0.5}, {k / 8.0}});
  EXPECT_EQ(r_packing_greedy(pts, 0.125, m), 9u);
}

TEST(RPacking, NonPositiveRadiusIsLogicError) {
  EXPECT_THROW(r_packing_greedy(std::vector<Point>{}, 0.0, Metric::max_per_axis()), LogicError);
}

TEST(NearOptimalSet, LargeRadiusKeepsWholeGrid) {
  const auto env = Environment::benchmark();
  const auto arms = make_arm_grid(21);
  const std::vector<double> contexts{0.0, 0.25, 0.5, 0.75, 1.0};
  double c_max = 0.0;
  for (double x : contexts) {
    for (const auto& y : arms) c_max = std::max(c_max, psg_oracle(env, x, y[0], arms));
  }
  EXPECT_EQ(near_optimal_set(env, contexts, arms, c_max / 12.0).size(), contexts.size() * arms.size());
}

TEST(NearOptimalSet, SmallRadiusKeepsOnlyWeaklyOptimalArms) {
  const auto env = Environment::benchmark();
  const auto arms = make_arm_grid(101);
  const auto near = near_optimal_set(env, {0.5}, arms, 1e-9);
  const auto means = grid_means(env, std::vector<double>{0.5}, arms);
  std::size_t in_band = 0;
  for (std::size_t k = 0; k < arms.size(); ++k) {
    const bool kept = std::any_of(near.begin(), near.end(), [&](const Point& p) { return p.arm == arms[k]; });
    // Weakly optimal: no grid arm is better in every objective by more than
    // rounding noise.
    const bool weak = std::none_of(means.begin(), means.end(), [&](const V& u) {
      return u[0] > means[k][0] + 1e-9 && u[1] > means[k][1] + 1e-9;
    });
    EXPECT_EQ(kept, weak) << "y=" << arms[k][0];
    if (arms[k][0] >= 0.4 - 1e-12 && arms[k][0] <= 0.6 + 1e-12) {
      ++in_band;
      EXPECT_TRUE(kept) << "y=" << arms[k][0];
    }
  }
  EXPECT_EQ(in_band, 21u);  // y = 0.40, 0.41, ..., 0.60
}

TEST(NearOptimalSet, SingleObjectiveShrinksToArgmax) {
  const auto env = Environment::identical_objectives(1, 0, NoiseKind::none);
  const auto arms = make_arm_grid(101);
  const std::vector<double> contexts{0.0, 0.5, 1.0};
  const auto near = near_optimal_set(env, contexts, arms, 1e-9);
  ASSERT_EQ(near.size(), contexts.size());
  for (const auto& p : near) EXPECT_NEAR(p.arm[0], ridge_low(p.context[0]), 1e-12);
}

TEST(ZoomingNumber, GrowsAsRadiusShrinks) {
  const auto env = Environment::benchmark();
  const auto arms = make_arm_grid(51);
  std::vector<double> contexts;
  for (int k = 0; k <= 50; ++k) contexts.push_back(k / 50.0);
  const auto m = Metric::scaled_euclidean();
  EXPECT_LE(zooming_number_estimate(env, contexts, arms, 0.1, m), zooming_number_estimate(env, contexts, arms, 0.05, m));
}

}  // namespace
}  // namespace pcz
