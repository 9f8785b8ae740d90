#include "cmjtree/weighted_index.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "cmjtree/random.hpp"

namespace cmjtree {
namespace {

TEST(WeightedIndexTest, PrefixSumsTrackUpdates) {
  WeightedIndex w;
  std::vector<double> ref;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double x = 1.0 + rng.uniform() * 5.0;
    w.push_back(x);
    ref.push_back(x);
  }
  for (int step = 0; step < 2000; ++step) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform() * ref.size());
    const double x = 1.0 + rng.uniform() * 5.0;
    w.set(i, x);
    ref[i] = x;
  }
  double running = 0.0;
  for (std::size_t i = 0; i <= ref.size(); ++i) {
    EXPECT_NEAR(w.prefix(i), running, 1e-9);
    if (i < ref.size()) running += ref[i];
  }
  EXPECT_NEAR(w.total(), running, 1e-9);
}

TEST(WeightedIndexTest, SamplingFrequenciesWithinFourSigma) {
  const std::vector<double> weights{1.0, 2.0, 3.0, 0.5, 7.5, 1.0};
  WeightedIndex w;
  double total = 0.0;
  for (double x : weights) {
    w.push_back(x);
    total += x;
  }
  constexpr int kDraws = 1'000'000;
  std::vector<int> counts(weights.size(), 0);
  Rng rng(99);
  for (int i = 0; i < kDraws; ++i) ++counts[w.sample(rng)];
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double p = weights[i] / total;
    const double sigma = std::sqrt(kDraws * p * (1 - p));
    EXPECT_NEAR(counts[i], kDraws * p, 4 * sigma) << "bucket " << i;
  }
}

TEST(WeightedIndexTest, RejectsNonPositiveWeights) {
  WeightedIndex w;
  w.push_back(1.0);
  EXPECT_THROW(w.push_back(0.0), std::invalid_argument);
  EXPECT_THROW(w.set(0, -1.0), std::invalid_argument);
}

TEST(WeightedIndexTest, SurvivesPeriodicRebuild) {
  WeightedIndex w;
  for (int i = 0; i < 4; ++i) w.push_back(1.0);
  for (std::uint64_t step = 0; step < WeightedIndex::kRebuildInterval + 10; ++step) {
    w.set(step % 4, 1.0 + static_cast<double>(step % 7));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) sum += w.weight(i);
  EXPECT_DOUBLE_EQ(w.total(), sum);
  EXPECT_DOUBLE_EQ(w.prefix(4), sum);
}

}  // namespace
}  // namespace cmjtree
