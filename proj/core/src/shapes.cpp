#include "cmjtree/shapes.hpp"

#include <charconv>
#include <stdexcept>

#include "cmjtree/tree_io.hpp"

namespace cmjtree {

ShapeDescriptor ShapeDescriptor::Parse(const std::string& text) {
  ShapeDescriptor d;
  if (text == "single") return d;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown shape '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string tail = text.substr(colon + 1);
  if (head == "file") {
    if (tail.empty()) throw std::invalid_argument("shape 'file:' needs a path");
    d.kind = Kind::kFile;
    d.path = tail;
    return d;
  }
  if (head == "line") {
    d.kind = Kind::kLine;
  } else if (head == "star") {
    d.kind = Kind::kStar;
  } else {
    throw std::invalid_argument("unknown shape '" + text + "'");
  }
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), d.r);
  if (ec != std::errc{} || ptr != tail.data() + tail.size() || d.r < 1) {
    throw std::invalid_argument("shape size must be a positive integer in '" + text + "'");
  }
  return d;
}

std::string ShapeDescriptor::to_string() const {
  switch (kind) {
    case Kind::kSingle:
      return "single";
    case Kind::kLine:
      return "line:" + std::to_string(r);
    case Kind::kStar:
      return "star:" + std::to_string(r);
    case Kind::kFile:
      return "file:" + path;
  }
  return "single";
}

GrowingTree ShapeDescriptor::build() const {
  switch (kind) {
    case Kind::kSingle:
      return GrowingTree();
    case Kind::kLine:
      return make_path(r);
    case Kind::kStar:
      return make_star(r);
    case Kind::kFile: {
      // Seeded runs restart the clock, so stored birth times are dropped.
      GrowingTree t = read_tree_file(path);
      return GrowingTree::FromParents(t.parents());
    }
  }
  return GrowingTree();
}

}  // namespace cmjtree
