#include "cmjtree/weighted_index.hpp"

#include <bit>
#include <stdexcept>

namespace cmjtree {

namespace {
constexpr std::size_t lowbit(std::size_t i) { return i & (~i + 1); }
}  // namespace

void WeightedIndex::reserve(std::size_t n) {
  weights_.reserve(n);
  tree_.reserve(n + 1);
}

double WeightedIndex::prefix(std::size_t i) const {
  double sum = 0.0;
  for (; i > 0; i -= lowbit(i)) sum += tree_[i];
  return sum;
}

std::size_t WeightedIndex::push_back(double weight) {
  if (!(weight > 0.0)) throw std::invalid_argument("weights must be positive");
  const std::size_t pos = weights_.size() + 1;
  // Node `pos` covers (pos - lowbit(pos), pos].
  tree_.push_back(weight + prefix(pos - 1) - prefix(pos - lowbit(pos)));
  weights_.push_back(weight);
  total_ += weight;
  note_update();
  return pos - 1;
}

void WeightedIndex::set(std::size_t i, double weight) {
  if (!(weight > 0.0)) throw std::invalid_argument("weights must be positive");
  const double delta = weight - weights_[i];
  weights_[i] = weight;
  for (std::size_t pos = i + 1; pos < tree_.size(); pos += lowbit(pos)) tree_[pos] += delta;
  total_ += delta;
  note_update();
}

std::size_t WeightedIndex::sample(Rng& rng) const {
  const std::size_t n = weights_.size();
  if (n == 0) throw std::logic_error("sampling from an empty WeightedIndex");
  double target = rng.uniform() * total_;
  std::size_t pos = 0;
  for (std::size_t step = std::bit_floor(n); step > 0; step >>= 1) {
    const std::size_t next = pos + step;
    if (next <= n && tree_[next] <= target) {
      pos = next;
      target -= tree_[next];
    }
  }
  // Rounding in the running total can push `pos` one past the end.
  return pos < n ? pos : n - 1;
}

void WeightedIndex::note_update() {
  if (++updates_ % kRebuildInterval == 0) rebuild();
}

void WeightedIndex::rebuild() {
  const std::size_t n = weights_.size();
  total_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tree_[i + 1] = weights_[i];
    total_ += weights_[i];
  }
  for (std::size_t pos = 1; pos <= n; ++pos) {
    const std::size_t up = pos + lowbit(pos);
    if (up <= n) tree_[up] += tree_[pos];
  }
}

}  // namespace cmjtree
