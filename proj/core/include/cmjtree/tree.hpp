#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace cmjtree {

/// Vertex index in birth order; v_1 (the root) is index 0.
using Vertex = std::uint32_t;
inline constexpr Vertex kNoParent = std::numeric_limits<Vertex>::max();

/// Rooted tree grown by attaching new leaves to existing vertices. Vertices
/// are numbered in birth order, so parent(v) < v for every non-root v.
class GrowingTree {
 public:
  /// A single root vertex, optionally carrying a birth time.
  explicit GrowingTree(std::optional<double> root_birth_time = std::nullopt);

  /// Builds a tree from a parent array (parents[0] must be kNoParent).
  /// Throws std::invalid_argument if parent(v) >= v for some v or the birth
  /// times are not nondecreasing.
  static GrowingTree FromParents(std::span<const Vertex> parents,
                                 std::optional<std::vector<double>> birth_times = std::nullopt);

  Vertex add_child(Vertex parent, std::optional<double> birth_time = std::nullopt);

  std::size_t size() const { return parent_.size(); }
  Vertex parent(Vertex v) const { return parent_[v]; }
  std::span<const Vertex> parents() const { return parent_; }
  std::span<const Vertex> children(Vertex v) const { return children_[v]; }
  std::uint32_t out_degree(Vertex v) const { return static_cast<std::uint32_t>(children_[v].size()); }
  /// Out-degree plus one for every vertex except the root.
  std::uint32_t total_degree(Vertex v) const { return out_degree(v) + (v == 0 ? 0 : 1); }

  bool has_birth_times() const { return !birth_time_.empty(); }
  double birth_time(Vertex v) const { return birth_time_.at(v); }
  std::span<const double> birth_times() const { return birth_time_; }

  /// Visits v's parent (if any) and children.
  template <typename Fn>
  void for_each_neighbor(Vertex v, Fn&& fn) const {
    if (parent_[v] != kNoParent) fn(parent_[v]);
    for (Vertex c : children_[v]) fn(c);
  }

  /// True when `ancestor` lies on the path from `v` to the root (v itself included).
  bool is_ancestor(Vertex ancestor, Vertex v) const;

  friend bool operator==(const GrowingTree&, const GrowingTree&) = default;

 private:
  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<double> birth_time_;
};

GrowingTree make_path(std::size_t n);
GrowingTree make_star(std::size_t n);

/// Sizes of the subtrees hanging below each vertex when the tree is rooted at
/// v_1. Answers directed-subtree queries in O(depth).
class RootedSizes {
 public:
  explicit RootedSizes(const GrowingTree& tree);

  std::uint32_t below(Vertex v) const { return size_[v]; }
  /// Branch at v seen from u: vertices whose path to u passes through v, v included.
  std::uint32_t directed_subtree(Vertex u, Vertex v) const;

 private:
  const GrowingTree* tree_;
  std::vector<std::uint32_t> size_;
};

/// Size of the branch at v seen from u. Throws std::invalid_argument if u == v or either is out of range.
std::uint32_t subtree_size(const GrowingTree& tree, Vertex u, Vertex v);

/// psi(u) = largest subtree of T directed away from u, for every u, in O(n).
/// By convention psi is 0 for the single-vertex tree.
std::vector<std::uint32_t> psi_all(const GrowingTree& tree);

struct CentroidReport {
  std::vector<Vertex> centroid_ids;  // one or two, ascending
  std::vector<std::uint32_t> psi_values;
  Vertex selected = 0;  // the younger (larger index) when there are two
};

CentroidReport centroids(const GrowingTree& tree);
CentroidReport centroids_from_psi(std::span<const std::uint32_t> psi);

enum class Centrality { kFirstMoreCentral, kSecondMoreCentral, kEqual };

/// Orders u and v by psi using only the two directed subtrees between them.
/// Throws std::invalid_argument if u == v.
Centrality compare_centrality(const GrowingTree& tree, Vertex u, Vertex v);

/// Component sizes after deleting every edge between two of the first K
/// vertices; entry j is the size of the component holding v_{j+1}.
std::vector<std::uint32_t> forest_sizes(const GrowingTree& tree, std::size_t k);

}  // namespace cmjtree
