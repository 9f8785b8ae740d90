#include "cmjtree/tree_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cmjtree {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_tree(std::ostream& out, const GrowingTree& tree) {
  const bool timed = tree.has_birth_times();
  out << (timed ? "v,parent,birth_time\n" : "v,parent\n");
  for (Vertex v = 0; v < tree.size(); ++v) {
    const Vertex p = tree.parent(v);
    out << (v + 1) << ',' << (p == kNoParent ? 0 : p + 1);
    if (timed) out << ',' << format_double(tree.birth_time(v));
    out << '\n';
  }
}

std::string tree_to_string(const GrowingTree& tree) {
  std::ostringstream out;
  write_tree(out, tree);
  return out.str();
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("tree file line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_index(std::string_view s, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) fail(line, "bad integer '" + std::string(s) + "'");
  return value;
}

double parse_time(std::string_view s, std::size_t line) {
  std::string owned(s);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(owned, &used);
  } catch (const std::exception&) {
    fail(line, "bad birth time '" + owned + "'");
  }
  if (used != owned.size()) fail(line, "bad birth time '" + owned + "'");
  return value;
}

}  // namespace

GrowingTree read_tree(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) fail(line_no, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool timed = false;
  if (line == "v,parent,birth_time") {
    timed = true;
  } else if (line != "v,parent") {
    fail(line_no, "expected header 'v,parent' or 'v,parent,birth_time'");
  }

  std::vector<Vertex> parents;
  std::vector<double> times;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != (timed ? 3u : 2u)) fail(line_no, "wrong number of fields");
    const std::uint64_t v = parse_index(fields[0], line_no);
    const std::uint64_t p = parse_index(fields[1], line_no);
    if (v != parents.size() + 1) fail(line_no, "vertices must be listed 1, 2, 3, ... in order");
    if (v == 1) {
      if (p != 0) fail(line_no, "vertex 1 must have parent 0");
      parents.push_back(kNoParent);
    } else {
      if (p == 0 || p >= v) fail(line_no, "parent must be an earlier vertex");
      parents.push_back(static_cast<Vertex>(p - 1));
    }
    if (timed) times.push_back(parse_time(fields[2], line_no));
  }
  if (parents.empty()) fail(line_no, "tree has no vertices");
  try {
    return GrowingTree::FromParents(parents, timed ? std::optional(std::move(times)) : std::nullopt);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("tree file: ") + e.what());
  }
}

GrowingTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tree file '" + path + "'");
  return read_tree(in);
}

}  // namespace cmjtree
