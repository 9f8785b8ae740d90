#include "cmjtree/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace cmjtree {
namespace {

using ::testing::ElementsAre;

TEST(HkPsiTest, Examples) {
  EXPECT_THAT(h_k_psi(make_path(5), 1), ElementsAre(2));
  std::mt19937_64 gen(1);
  const GrowingTree t = oracle::random_recursive_tree(9, gen);
  const auto all = h_k_psi(t, 9);
  EXPECT_EQ(all.size(), 9u);
  EXPECT_NE(std::find(all.begin(), all.end(), 0u), all.end());
  EXPECT_THROW(h_k_psi(t, 0), std::invalid_argument);
  EXPECT_THROW(h_k_psi(t, 10), std::invalid_argument);
}

TEST(HkPsiTest, MatchesBruteForceSort) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const GrowingTree t = oracle::random_recursive_tree(n, gen);
    const auto psi = oracle::psi(t);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return psi[a] < psi[b]; });
    for (std::size_t k = 1; k <= n; ++k) {
      ASSERT_EQ(h_k_psi(t, k), std::vector<Vertex>(order.begin(), order.begin() + k));
    }
    const auto rank = static_cast<std::size_t>(std::find(order.begin(), order.end(), 0u) - order.begin());
    ASSERT_EQ(root_rank(t), rank);
  }
}

TEST(HkPsiTest, SetsAreNested) {
  std::mt19937_64 gen(3);
  const GrowingTree t = oracle::random_recursive_tree(40, gen);
  for (std::size_t k = 1; k < 40; ++k) {
    const auto small = h_k_psi(t, k);
    const auto large = h_k_psi(t, k + 1);
    EXPECT_TRUE(std::equal(small.begin(), small.end(), large.begin()));
  }
}

TEST(CoverageTest, MonotoneInKAndFullAtN) {
  const std::vector<std::size_t> ks{1, 2, 5, 10, 50, 200};
  const CoverageTable table = root_coverage(AttractionSpec::AlphaSublinear(0.5), 200, ks, 200, 9);
  ASSERT_EQ(table.rows.size(), ks.size());
  ASSERT_EQ(table.root_ranks.size(), 200u);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    EXPECT_GE(table.rows[i].successes, table.rows[i - 1].successes);
  }
  EXPECT_EQ(table.rows.back().coverage, 1.0);
  EXPECT_EQ(table.rows.back().standard_error, 0.0);
  for (const auto& row : table.rows) {
    const auto hits = std::count_if(table.root_ranks.begin(), table.root_ranks.end(),
                                    [&](std::size_t r) { return r < row.k; });
    EXPECT_EQ(row.successes, static_cast<std::size_t>(hits));
    EXPECT_DOUBLE_EQ(row.alpha, 0.5);
  }
}

TEST(CoverageTest, DeterministicAcrossThreadCounts) {
  const std::vector<std::size_t> ks{1, 3, 8};
  const auto spec = AttractionSpec::AlphaSublinear(0.4);
  CoverageOptions one, four;
  four.threads = 4;
  EXPECT_EQ(root_coverage(spec, 150, ks, 40, 5, one).root_ranks, root_coverage(spec, 150, ks, 40, 5, four).root_ranks);
}

TEST(CoverageTest, RejectsOtherSpecsUnlessAllowed) {
  const std::vector<std::size_t> ks{1};
  EXPECT_THROW(root_coverage(AttractionSpec::Linear(), 10, ks, 5, 1), std::invalid_argument);
  CoverageOptions allow;
  allow.allow_non_sublinear = true;
  EXPECT_NO_THROW(root_coverage(AttractionSpec::Linear(), 10, ks, 5, 1, allow));
  const std::vector<std::size_t> too_big{11};
  EXPECT_THROW(root_coverage(AttractionSpec::AlphaSublinear(0.5), 10, too_big, 5, 1), std::invalid_argument);
}

TEST(CoverageTest, SmallestKForCoverage) {
  const std::vector<std::size_t> ranks{0, 0, 1, 3, 0, 2, 0, 0, 0, 9};
  EXPECT_EQ(smallest_k_for_coverage(ranks, 0.5), 1u);
  EXPECT_EQ(smallest_k_for_coverage(ranks, 0.8), 3u);
  EXPECT_EQ(smallest_k_for_coverage(ranks, 0.9), 4u);
  EXPECT_EQ(smallest_k_for_coverage(ranks, 1.0), 10u);
}

TEST(TrackCentroidTest, TwoVerticesSelectYounger) {
  Rng rng(1);
  const std::vector<std::size_t> marks{2};
  const CentroidChangeLog log = track_centroid(AttractionSpec::AlphaSublinear(0.5), 2, marks, 2, rng);
  EXPECT_EQ(log.final_selected, 1u);
  ASSERT_EQ(log.events.size(), 1u);
  EXPECT_EQ(log.events[0].n, 2u);
  EXPECT_EQ(log.events[0].old_centroid, 0u);
  EXPECT_EQ(log.events[0].new_centroid, 1u);
  ASSERT_EQ(log.checkpoints.size(), 1u);
  EXPECT_THAT(log.checkpoints[0].top, ElementsAre(0, 1));
  EXPECT_THAT(log.checkpoints[0].psi, ElementsAre(1, 1));
}

TEST(TrackCentroidTest, PathOfThreeSelectsMiddle) {
  GrowingTree path = make_path(3);
  EXPECT_EQ(centroids(path).selected, 1u);
}

TEST(TrackCentroidTest, InvariantsHoldAndFinalMatchesRecompute) {
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  const std::vector<std::size_t> marks{10, 100, 1000};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng = derive_stream(seed, 0);
    const CentroidChangeLog log = track_centroid(spec, 1000, marks, 5, rng);
    EXPECT_EQ(log.balance_violations, 0u);
    EXPECT_EQ(log.separation_violations, 0u);
    ASSERT_EQ(log.checkpoints.size(), 3u);

    Rng replay = derive_stream(seed, 0);
    const GrowingTree tree = grow_discrete(spec, 1000, replay);
    EXPECT_EQ(log.final_selected, centroids(tree).selected);
    EXPECT_EQ(log.checkpoints.back().top, h_k_psi(tree, 5));
    for (std::size_t i = 1; i < log.events.size(); ++i) {
      EXPECT_LT(log.events[i - 1].n, log.events[i].n);
      EXPECT_EQ(log.events[i - 1].new_centroid, log.events[i].old_centroid);
    }
  }
}

TEST(TrackCentroidTest, EventsInWindow) {
  CentroidChangeLog log;
  log.events = {{2, 0, 1}, {5, 1, 0}, {9, 0, 3}, {10, 3, 4}};
  EXPECT_EQ(log.events_in(0, 10), 4u);
  EXPECT_EQ(log.events_in(2, 9), 2u);
  EXPECT_EQ(log.events_in(10, 20), 0u);
}

TEST(MaxDegreeTest, SmallTrees) {
  EXPECT_EQ(max_degree(GrowingTree()), 0u);
  EXPECT_EQ(max_degree(make_path(2)), 1u);
  EXPECT_EQ(max_degree(make_path(5)), 2u);
  EXPECT_EQ(max_degree(make_star(6)), 5u);
  const std::vector<std::size_t> ns{1, 2};
  const auto rows = max_degree_scan(0.5, ns, 3, 1);
  EXPECT_EQ(rows[0].median_max_degree, 0.0);
  EXPECT_EQ(rows[1].median_max_degree, 1.0);
}

TEST(RaceTest, SingleVersusSingleIsFair) {
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  const ShapeDescriptor single = ShapeDescriptor::Parse("single");
  constexpr std::size_t kTrials = 2000;
  const RaceResult r = race(single, single, spec, 3.0, kTrials, 4);
  EXPECT_EQ(r.trials, kTrials);
  EXPECT_NEAR(r.win_probability, 0.5, 3.0 * std::sqrt(0.25 / kTrials));
}

TEST(RaceTest, IdenticalShapesAreFair) {
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  const ShapeDescriptor star = ShapeDescriptor::Parse("star:5");
  constexpr std::size_t kTrials = 2000;
  const RaceResult r = race(star, star, spec, 2.0, kTrials, 5);
  EXPECT_NEAR(r.win_probability, 0.5, 3.0 * std::sqrt(0.25 / kTrials));
}

TEST(RaceTest, DefaultHorizon) {
  const auto spec = AttractionSpec::Linear();
  EXPECT_NEAR(default_race_horizon(spec, 10, 1e4), std::log(1e3) / 2.0, 1e-9);
}

TEST(DominanceTest, ZeroShiftMeansAgree) {
  const DominanceReport r = dominance_check(0, 0.5, 4.0, 2000, 6);
  const double se = std::hypot(r.se_shifted, r.se_sum);
  EXPECT_NEAR(r.mean_shifted, r.mean_sum, 3.0 * se);
  EXPECT_EQ(r.levels.size(), 9u);
  EXPECT_EQ(r.quantiles_shifted.size(), 9u);
}

TEST(DominanceTest, SumDominatesShiftedRoot) {
  const DominanceReport r = dominance_check(3, 0.5, 4.0, 1000, 7);
  EXPECT_GT(r.mean_sum, r.mean_shifted);
}

TEST(HoeffdingTest, SmallNExamples) {
  constexpr std::size_t kTrials = 200'000;
  const std::vector<std::size_t> ns{1, 3, 7};
  const auto rows = hoeffding_probe(ns, kTrials, 8);
  EXPECT_EQ(rows[0].analytic, 0.5);
  EXPECT_EQ(rows[1].analytic, 0.125);
  for (const auto& row : rows) {
    const double sigma = std::sqrt(row.analytic * (1 - row.analytic) / kTrials);
    EXPECT_NEAR(row.empirical, row.analytic, 3.0 * sigma) << "n=" << row.n;
    EXPECT_DOUBLE_EQ(row.bound, 1.0 / (row.n * row.n));
  }
  EXPECT_LE(rows[2].empirical, rows[2].bound);
}

TEST(HelpersTest, QuantileAndCdf) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(empirical_cdf(v, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(empirical_cdf(v, 0.0), 0.0);
}

}  // namespace
}  // namespace cmjtree
