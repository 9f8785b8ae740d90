#include "cmjtree/growth.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "cmjtree/malthus.hpp"
#include "cmjtree/tree_io.hpp"

namespace cmjtree {
namespace {

// Fraction of trials in which the third vertex attaches to the second.
template <class Grow>
double third_attaches_to_second(int trials, Grow grow) {
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = derive_stream(2024, t);
    const GrowingTree tree = grow(rng);
    hits += tree.parent(2) == 1;
  }
  return static_cast<double>(hits) / trials;
}

TEST(GrowthTest, SecondVertexAttachesToRoot) {
  Rng rng(1);
  const GrowingTree t = grow_discrete(AttractionSpec::AlphaSublinear(0.5), 2, rng);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.parent(1), 0u);
}

TEST(GrowthTest, SingleVertexStopIsImmediate) {
  Rng rng(1);
  const CmjResult r = grow_cmj(AttractionSpec::Linear(), StopRule::Population(1), rng);
  EXPECT_EQ(r.tree.size(), 1u);
  EXPECT_EQ(r.final_time, 0.0);
}

TEST(GrowthTest, DiscreteThirdVertexFrequencies) {
  constexpr int kTrials = 100'000;
  struct Case {
    AttractionSpec spec;
    double p_root;
  };
  const Case cases[] = {
      {AttractionSpec::Linear(), 2.0 / 3.0},
      {AttractionSpec::AlphaSublinear(0.5), std::sqrt(2.0) / (1.0 + std::sqrt(2.0))},
  };
  for (const auto& c : cases) {
    const double to_second = third_attaches_to_second(kTrials, [&](Rng& rng) { return grow_discrete(c.spec, 3, rng); });
    const double p = 1.0 - c.p_root;
    EXPECT_NEAR(to_second, p, 3.0 * std::sqrt(p * (1 - p) / kTrials)) << c.spec.describe();
  }
}

TEST(GrowthTest, CmjJumpChainMatchesDiscreteModel) {
  constexpr int kTrials = 100'000;
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  const double to_second = third_attaches_to_second(
      kTrials, [&](Rng& rng) { return grow_cmj(spec, StopRule::Population(3), rng).tree; });
  const double p = 1.0 / (1.0 + std::sqrt(2.0));
  EXPECT_NEAR(to_second, p, 3.0 * std::sqrt(p * (1 - p) / kTrials));
}

TEST(GrowthTest, FirstBirthTimeHasUnitMean) {
  constexpr int kTrials = 100'000;
  double sum = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    Rng rng = derive_stream(7, t);
    const CmjResult r = grow_cmj(AttractionSpec::AlphaSublinear(0.5), StopRule::Population(2), rng);
    EXPECT_EQ(r.final_time, r.tree.birth_time(1));
    sum += r.final_time;
  }
  EXPECT_NEAR(sum / kTrials, 1.0, 3.0 / std::sqrt(kTrials));
}

TEST(GrowthTest, SeededRootRateUsesOutDegree) {
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  Rng rng(2);
  CmjProcess star(spec, make_star(6), rng);
  EXPECT_DOUBLE_EQ(star.birth_rate(0), spec(5));
  EXPECT_DOUBLE_EQ(star.birth_rate(3), spec(0));

  CmjOptions shifted;
  shifted.root_degree_shift = 4;
  CmjProcess single(spec, GrowingTree(), rng, shifted);
  EXPECT_DOUBLE_EQ(single.birth_rate(0), spec(4));
}

TEST(GrowthTest, SeedTreeIsKeptAsPrefix) {
  const GrowingTree seed = make_path(5);
  Rng rng(8);
  const CmjResult r = grow_from_seed_tree(seed, AttractionSpec::Linear(), StopRule::Population(40), rng);
  ASSERT_EQ(r.tree.size(), 40u);
  for (Vertex v = 1; v < seed.size(); ++v) {
    EXPECT_EQ(r.tree.parent(v), seed.parent(v));
    EXPECT_EQ(r.tree.birth_time(v), 0.0);
  }
  for (Vertex v = 1; v < r.tree.size(); ++v) EXPECT_LE(r.tree.birth_time(v - 1), r.tree.birth_time(v));
}

TEST(GrowthTest, UniformPopulationMeanIsExponential) {
  // With f = 1 the population is a Yule process: Z_t is geometric with mean e^t.
  constexpr int kTrials = 20'000;
  constexpr double kT = 2.0;
  double sum = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    Rng rng = derive_stream(11, t);
    sum += static_cast<double>(grow_cmj(AttractionSpec::Uniform(), StopRule::Time(kT), rng).tree.size());
  }
  const double mean = std::exp(kT);
  const double sd = std::sqrt(std::exp(2 * kT) - std::exp(kT));
  EXPECT_NEAR(sum / kTrials, mean, 3.0 * sd / std::sqrt(kTrials));
}

TEST(GrowthTest, TimeStopIncludesBirthsUpToTheHorizon) {
  Rng rng(12);
  const CmjResult r = grow_cmj(AttractionSpec::AlphaSublinear(0.3), StopRule::Time(3.0), rng);
  EXPECT_EQ(r.final_time, 3.0);
  EXPECT_LE(r.tree.birth_time(static_cast<Vertex>(r.tree.size() - 1)), 3.0);
}

TEST(GrowthTest, SameSeedGivesIdenticalTrees) {
  const auto spec = AttractionSpec::AlphaSublinear(0.7);
  Rng a(42), b(42);
  EXPECT_EQ(tree_to_string(grow_discrete(spec, 500, a)), tree_to_string(grow_discrete(spec, 500, b)));
  Rng c = derive_stream(42, 3), d = derive_stream(42, 3);
  EXPECT_EQ(tree_to_string(grow_cmj(spec, StopRule::Population(500), c).tree),
            tree_to_string(grow_cmj(spec, StopRule::Population(500), d).tree));
  Rng e = derive_stream(42, 4);
  Rng f = derive_stream(42, 3);
  EXPECT_NE(e(), f());
}

TEST(GrowthTest, PopulationCapIsEnforced) {
  CmjOptions options;
  options.population_cap = 100;
  Rng rng(13);
  try {
    grow_cmj(AttractionSpec::Linear(), StopRule::Time(50.0), rng, options);
    FAIL() << "expected PopulationCapExceeded";
  } catch (const PopulationCapExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("population cap exceeded"), std::string::npos);
  }
}

TEST(GrowthTest, LinearLogGrowthSlopeIsTwo) {
  TrajectoryOptions options;
  options.stop_population = 100'000;
  double sum = 0.0;
  constexpr int kTrials = 10;
  for (int t = 0; t < kTrials; ++t) {
    Rng rng = derive_stream(14, t);
    sum += log_growth_slope(population_trajectory(AttractionSpec::Linear(), 50.0, 0.05, rng, options));
  }
  EXPECT_NEAR(sum / kTrials, 2.0, 0.1);
}

TEST(GrowthTest, TrajectoryNormalizationUsesTheta) {
  const auto spec = AttractionSpec::AlphaSublinear(0.5);
  const double theta = solve_malthusian(spec).theta;
  TrajectoryOptions options;
  options.theta = theta;
  Rng rng(15);
  const CmjTrajectory traj = population_trajectory(spec, 4.0, 0.5, rng, options);
  ASSERT_EQ(traj.times.size(), 9u);
  ASSERT_EQ(traj.normalized.size(), traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    EXPECT_DOUBLE_EQ(traj.normalized[i], std::exp(-theta * traj.times[i]) * traj.population[i]);
    if (i > 0) EXPECT_GE(traj.population[i], traj.population[i - 1]);
  }
  EXPECT_EQ(traj.population[0], 1u);
}

}  // namespace
}  // namespace cmjtree
