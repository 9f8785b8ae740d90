#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "cmjtree/attraction.hpp"
#include "cmjtree/random.hpp"
#include "cmjtree/tree.hpp"

namespace cmjtree {

inline constexpr std::size_t kDefaultPopulationCap = 10'000'000;

class PopulationCapExceeded : public std::runtime_error {
 public:
  explicit PopulationCapExceeded(std::size_t cap)
      : std::runtime_error("population cap exceeded (" + std::to_string(cap) + " vertices)") {}
};

/// Discrete-time preferential attachment: v_{m+1} attaches to v_i with
/// probability f(out_degree(v_i)) / sum_j f(out_degree(v_j)).
GrowingTree grow_discrete(const AttractionSpec& spec, std::size_t n, Rng& rng);

/// When to stop a continuous-time run. With both set, whichever comes first.
struct StopRule {
  std::optional<std::size_t> n_max;
  std::optional<double> t_end;

  static StopRule Population(std::size_t n) { return {n, std::nullopt}; }
  static StopRule Time(double t) { return {std::nullopt, t}; }
};

struct CmjOptions {
  std::size_t population_cap = kDefaultPopulationCap;
  /// The root gives birth at rate f(k + root_degree_shift) after k births.
  std::uint32_t root_degree_shift = 0;
};

/// Crump-Mode-Jagers process driven by the pure-birth point process with
/// rate function f: a vertex with k children has its next child after an
/// Exp(f(k)) delay. Only the firing vertex's rate changes at a birth, so a
/// single pending birth time per vertex is kept in a min-heap.
class CmjProcess {
 public:
  /// Starts from `initial`. Without birth times the initial vertices are
  /// stamped 0 and the clock starts at 0; otherwise it resumes from the
  /// last recorded birth time.
  CmjProcess(const AttractionSpec& spec, GrowingTree initial, Rng& rng, CmjOptions options = {});

  double now() const { return now_; }
  std::size_t population() const { return tree_.size(); }
  const GrowingTree& tree() const { return tree_; }
  GrowingTree release() && { return std::move(tree_); }

  double next_birth_time() const { return pending_.top().time; }
  /// Performs the next birth and returns the newborn vertex.
  Vertex step();
  /// Performs every birth at or before t and moves the clock to t.
  void advance_to(double t);
  /// Grows until the population reaches n.
  void grow_to(std::size_t n);
  /// Applies a stop rule; returns the final time.
  double run(const StopRule& stop);

  double birth_rate(Vertex v) const;

 private:
  struct Pending {
    double time;
    Vertex vertex;
    bool operator>(const Pending& o) const {
      return time != o.time ? time > o.time : vertex > o.vertex;
    }
  };

  void schedule(Vertex v);

  const AttractionSpec* spec_;
  Rng* rng_;
  CmjOptions options_;
  GrowingTree tree_;
  double now_ = 0.0;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending_;
};

struct CmjResult {
  GrowingTree tree;
  double final_time = 0.0;
};

CmjResult grow_cmj(const AttractionSpec& spec, const StopRule& stop, Rng& rng, CmjOptions options = {});

/// Continues CMJ growth from an arbitrary initial tree.
CmjResult grow_from_seed_tree(GrowingTree initial, const AttractionSpec& spec, const StopRule& stop,
                              Rng& rng, CmjOptions options = {});

/// Population Z_t sampled on a regular time grid.
struct CmjTrajectory {
  std::vector<double> times;
  std::vector<std::uint64_t> population;
  std::optional<double> theta;
  std::vector<double> normalized;  // e^{-theta t} Z_t when theta is set
};

struct TrajectoryOptions {
  std::optional<double> theta;
  /// Stop at the first grid point where Z_t reaches this size.
  std::optional<std::size_t> stop_population;
  std::size_t population_cap = kDefaultPopulationCap;
};

/// Records Z_t on {0, dt, 2dt, ...} up to t_end (or the population stop).
CmjTrajectory population_trajectory(const AttractionSpec& spec, double t_end, double dt, Rng& rng,
                                    const TrajectoryOptions& options = {});

/// Least-squares slope of log Z_t against t over the grid points with
/// t >= window_start * t_last. An empirical estimate of the growth rate.
double log_growth_slope(const CmjTrajectory& trajectory, double window_start = 0.5);

}  // namespace cmjtree
