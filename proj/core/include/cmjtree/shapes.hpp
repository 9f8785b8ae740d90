#pragma once

#include <cstddef>
#include <string>

#include "cmjtree/tree.hpp"

namespace cmjtree {

/// Initial state for a seeded CMJ run: "single", "line:<r>", "star:<r>" or
/// "file:<path>" (a tree in the parent-array format).
struct ShapeDescriptor {
  enum class Kind { kSingle, kLine, kStar, kFile };
  Kind kind = Kind::kSingle;
  std::size_t r = 1;
  std::string path;

  static ShapeDescriptor Parse(const std::string& text);
  std::string to_string() const;
  GrowingTree build() const;

  friend bool operator==(const ShapeDescriptor&, const ShapeDescriptor&) = default;
};

}  // namespace cmjtree
