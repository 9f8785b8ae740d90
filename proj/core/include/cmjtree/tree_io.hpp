#pragma once

#include <iosfwd>
#include <string>

#include "cmjtree/tree.hpp"

namespace cmjtree {

// Parent-array text format. One header line, then one row per vertex in
// birth order, 1-based, with parent 0 for the root:
//
//   v,parent[,birth_time]
//   1,0[,0]
//   2,1[,0.4137...]
//
// Birth times are written with 17 significant digits so files round-trip
// exactly.
void write_tree(std::ostream& out, const GrowingTree& tree);
std::string tree_to_string(const GrowingTree& tree);

/// Throws std::runtime_error naming the offending line on malformed input.
GrowingTree read_tree(std::istream& in);
GrowingTree read_tree_file(const std::string& path);

/// Shortest round-tripping decimal rendering of a double ("%.17g").
std::string format_double(double value);

}  // namespace cmjtree
