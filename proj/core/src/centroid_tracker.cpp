#include "cmjtree/centroid_tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmjtree {

CentroidTracker::CentroidTracker(const GrowingTree& tree) : tree_(&tree), below_(tree.size(), 1) {
  for (std::size_t v = tree.size(); v-- > 1;) below_[tree.parent(static_cast<Vertex>(v))] += below_[v];
  settle(0);
}

void CentroidTracker::on_birth(Vertex newborn) {
  if (newborn != below_.size() || newborn + 1 != tree_->size()) {
    throw std::logic_error("CentroidTracker::on_birth called out of order");
  }
  below_.push_back(1);
  for (Vertex w = tree_->parent(newborn); w != kNoParent; w = tree_->parent(w)) ++below_[w];
  settle(selected());
}

std::uint32_t CentroidTracker::directed_subtree(Vertex u, Vertex v) const {
  if (!tree_->is_ancestor(v, u)) return below_[v];
  Vertex w = u;
  while (tree_->parent(w) != v) w = tree_->parent(w);
  return static_cast<std::uint32_t>(tree_->size()) - below_[w];
}

std::pair<Vertex, std::uint32_t> CentroidTracker::heaviest_branch(Vertex u) const {
  const auto n = static_cast<std::uint32_t>(tree_->size());
  Vertex best = kNoParent;
  std::uint32_t best_size = 0;
  if (u != 0) {
    best = tree_->parent(u);
    best_size = n - below_[u];
  }
  for (Vertex c : tree_->children(u)) {
    if (below_[c] > best_size) {
      best = c;
      best_size = below_[c];
    }
  }
  return {best, best_size};
}

void CentroidTracker::settle(Vertex start) {
  const auto n = static_cast<std::uint32_t>(tree_->size());
  Vertex c = start;
  auto [heavy, size] = heaviest_branch(c);
  while (2 * size > n) {
    c = heavy;
    std::tie(heavy, size) = heaviest_branch(c);
  }
  psi_ = size;
  centroids_.assign({c});
  // A branch of exactly n/2 means its head is the second centroid.
  if (n > 1 && 2 * size == n) {
    centroids_.push_back(heavy);
    std::sort(centroids_.begin(), centroids_.end());
  }
}

}  // namespace cmjtree
