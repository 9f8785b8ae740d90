#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cmjtree/random.hpp"

namespace cmjtree {

/// Dynamic discrete distribution over indices 0..size()-1, backed by a
/// Fenwick tree of weights. Append, point update and proportional sampling
/// are all O(log n).
class WeightedIndex {
 public:
  /// Number of updates between full rebuilds of the prefix sums.
  static constexpr std::uint64_t kRebuildInterval = std::uint64_t{1} << 20;

  WeightedIndex() = default;
  void reserve(std::size_t n);

  std::size_t push_back(double weight);
  void set(std::size_t i, double weight);

  double weight(std::size_t i) const { return weights_[i]; }
  double total() const { return total_; }
  std::size_t size() const { return weights_.size(); }

  /// Draws i with probability weight(i) / total().
  std::size_t sample(Rng& rng) const;

  /// Sum of weights[0..i) read off the Fenwick tree.
  double prefix(std::size_t i) const;

 private:
  void note_update();
  void rebuild();

  std::vector<double> weights_;
  std::vector<double> tree_{0.0};  // 1-based Fenwick array
  double total_ = 0.0;
  std::uint64_t updates_ = 0;
};

}  // namespace cmjtree
