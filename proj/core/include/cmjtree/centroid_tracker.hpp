#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cmjtree/tree.hpp"

namespace cmjtree {

/// Maintains the centroid(s) of a tree that only grows by leaf insertion.
///
/// Keeps subtree sizes rooted at v_1 and, after each insertion, walks from
/// the previous centroid toward any branch holding more than half of the
/// vertices. A leaf insertion moves the centroid by at most one edge, so an
/// update costs O(depth + degree) instead of a full O(n) recomputation.
class CentroidTracker {
 public:
  /// `tree` must outlive the tracker and may only grow through add_child.
  explicit CentroidTracker(const GrowingTree& tree);

  /// Call once after each tree.add_child(); `newborn` is the new vertex.
  void on_birth(Vertex newborn);

  /// Centroids in ascending order (one or two, adjacent when two).
  const std::vector<Vertex>& centroids() const { return centroids_; }
  /// Tie-broken centroid: the younger of two.
  Vertex selected() const { return centroids_.back(); }
  std::uint32_t psi_of_centroid() const { return psi_; }

  std::uint32_t below(Vertex v) const { return below_[v]; }
  /// Size of the branch at v seen from u on the current tree.
  std::uint32_t directed_subtree(Vertex u, Vertex v) const;

 private:
  std::pair<Vertex, std::uint32_t> heaviest_branch(Vertex u) const;
  void settle(Vertex start);

  const GrowingTree* tree_;
  std::vector<std::uint32_t> below_;
  std::vector<Vertex> centroids_;
  std::uint32_t psi_ = 0;
};

}  // namespace cmjtree
