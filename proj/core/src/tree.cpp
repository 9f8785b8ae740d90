#include "cmjtree/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cmjtree {

GrowingTree::GrowingTree(std::optional<double> root_birth_time)
    : parent_{kNoParent}, children_(1) {
  if (root_birth_time) birth_time_.push_back(*root_birth_time);
}

GrowingTree GrowingTree::FromParents(std::span<const Vertex> parents,
                                     std::optional<std::vector<double>> birth_times) {
  if (parents.empty()) throw std::invalid_argument("tree must have at least one vertex");
  if (parents[0] != kNoParent) throw std::invalid_argument("v1 must not have a parent");
  if (birth_times && birth_times->size() != parents.size()) {
    throw std::invalid_argument("birth time count does not match vertex count");
  }
  GrowingTree tree(birth_times ? std::optional<double>((*birth_times)[0]) : std::nullopt);
  tree.parent_.reserve(parents.size());
  tree.children_.reserve(parents.size());
  for (std::size_t v = 1; v < parents.size(); ++v) {
    if (parents[v] >= v) {
      throw std::invalid_argument("vertex " + std::to_string(v + 1) +
                                  " must attach to an earlier vertex");
    }
    std::optional<double> t;
    if (birth_times) t = (*birth_times)[v];
    tree.add_child(parents[v], t);
  }
  return tree;
}

Vertex GrowingTree::add_child(Vertex parent, std::optional<double> birth_time) {
  if (parent >= parent_.size()) throw std::invalid_argument("parent out of range");
  if (has_birth_times() != birth_time.has_value()) {
    throw std::invalid_argument("birth times must be given for all vertices or none");
  }
  if (birth_time && *birth_time < birth_time_.back()) {
    throw std::invalid_argument("birth times must be nondecreasing in vertex index");
  }
  const auto v = static_cast<Vertex>(parent_.size());
  parent_.push_back(parent);
  children_.emplace_back();
  children_[parent].push_back(v);
  if (birth_time) birth_time_.push_back(*birth_time);
  return v;
}

bool GrowingTree::is_ancestor(Vertex ancestor, Vertex v) const {
  // Parents precede children, so the walk can stop once it passes `ancestor`.
  while (v != kNoParent && v > ancestor) v = parent_[v];
  return v == ancestor;
}

GrowingTree make_path(std::size_t n) {
  GrowingTree t;
  for (std::size_t v = 1; v < n; ++v) t.add_child(static_cast<Vertex>(v - 1));
  return t;
}

GrowingTree make_star(std::size_t n) {
  GrowingTree t;
  for (std::size_t v = 1; v < n; ++v) t.add_child(0);
  return t;
}

RootedSizes::RootedSizes(const GrowingTree& tree) : tree_(&tree), size_(tree.size(), 1) {
  for (std::size_t v = tree.size(); v-- > 1;) size_[tree.parent(static_cast<Vertex>(v))] += size_[v];
}

std::uint32_t RootedSizes::directed_subtree(Vertex u, Vertex v) const {
  if (!tree_->is_ancestor(v, u)) return size_[v];
  // u sits below v: walk up from u to find v's child on the path.
  Vertex w = u;
  while (tree_->parent(w) != v) w = tree_->parent(w);
  return static_cast<std::uint32_t>(tree_->size()) - size_[w];
}

namespace {

void check_pair(const GrowingTree& tree, Vertex u, Vertex v) {
  if (u >= tree.size() || v >= tree.size()) throw std::invalid_argument("vertex out of range");
  if (u == v) throw std::invalid_argument("vertices must be distinct");
}

}  // namespace

std::uint32_t subtree_size(const GrowingTree& tree, Vertex u, Vertex v) {
  check_pair(tree, u, v);
  return RootedSizes(tree).directed_subtree(u, v);
}

std::vector<std::uint32_t> psi_all(const GrowingTree& tree) {
  const auto n = static_cast<std::uint32_t>(tree.size());
  RootedSizes sizes(tree);
  std::vector<std::uint32_t> psi(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    std::uint32_t best = u == 0 ? 0 : n - sizes.below(u);
    for (Vertex c : tree.children(u)) best = std::max(best, sizes.below(c));
    psi[u] = best;
  }
  return psi;
}

CentroidReport centroids_from_psi(std::span<const std::uint32_t> psi) {
  CentroidReport report;
  const std::uint32_t best = *std::min_element(psi.begin(), psi.end());
  for (std::size_t v = 0; v < psi.size(); ++v) {
    if (psi[v] == best) {
      report.centroid_ids.push_back(static_cast<Vertex>(v));
      report.psi_values.push_back(best);
    }
  }
  report.selected = report.centroid_ids.back();
  return report;
}

CentroidReport centroids(const GrowingTree& tree) { return centroids_from_psi(psi_all(tree)); }

Centrality compare_centrality(const GrowingTree& tree, Vertex u, Vertex v) {
  check_pair(tree, u, v);
  RootedSizes sizes(tree);
  // psi(u) <= psi(v) iff the branch at u seen from v is at least the branch at v seen from u
  const std::uint32_t toward_u = sizes.directed_subtree(v, u);
  const std::uint32_t toward_v = sizes.directed_subtree(u, v);
  if (toward_u > toward_v) return Centrality::kFirstMoreCentral;
  if (toward_u < toward_v) return Centrality::kSecondMoreCentral;
  return Centrality::kEqual;
}

std::vector<std::uint32_t> forest_sizes(const GrowingTree& tree, std::size_t k) {
  if (k < 1 || k > tree.size()) throw std::invalid_argument("K must lie in [1, n]");
  // Each later vertex belongs to the component of its nearest ancestor among
  // the first K; only edges inside that prefix are removed.
  std::vector<Vertex> owner(tree.size());
  std::vector<std::uint32_t> sizes(k, 0);
  for (Vertex v = 0; v < tree.size(); ++v) {
    owner[v] = v < k ? v : owner[tree.parent(v)];
    ++sizes[owner[v]];
  }
  return sizes;
}

}  // namespace cmjtree
