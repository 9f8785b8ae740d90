#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cmjtree/attraction.hpp"
#include "cmjtree/growth.hpp"
#include "cmjtree/random.hpp"
#include "cmjtree/shapes.hpp"
#include "cmjtree/tree.hpp"

namespace cmjtree {

// ---------------------------------------------------------------------------
// Root confidence sets
// ---------------------------------------------------------------------------

/// The K vertices of smallest psi, ordered by (psi, birth index).
/// Throws std::invalid_argument unless 1 <= K <= n.
std::vector<Vertex> h_k_psi(const GrowingTree& tree, std::size_t k);

/// Position of v_1 in the (psi, birth index) order; v_1 is in H^K exactly
/// when root_rank < K.
std::size_t root_rank(const GrowingTree& tree);

struct CoverageRow {
  double alpha = 0.0;  // NaN for specs without an exponent
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double coverage = 0.0;
  double standard_error = 0.0;
};

struct CoverageTable {
  std::vector<CoverageRow> rows;
  /// root_rank of every trial, in trial order.
  std::vector<std::size_t> root_ranks;
};

struct CoverageOptions {
  bool allow_non_sublinear = false;
  unsigned threads = 1;
};

/// Estimates P(v_1 in H^K_psi(T_n)) for each K by growing `trials` trees on
/// streams derived from master_seed. Rejects specs that are not
/// alpha_sublinear unless options.allow_non_sublinear is set.
CoverageTable root_coverage(const AttractionSpec& spec, std::size_t n, std::span<const std::size_t> k_list,
                            std::size_t trials, std::uint64_t master_seed, const CoverageOptions& options = {});

/// Smallest K whose coverage reaches `target`, read off the trial ranks.
std::size_t smallest_k_for_coverage(std::span<const std::size_t> root_ranks, double target);

// ---------------------------------------------------------------------------
// Centroid tracking
// ---------------------------------------------------------------------------

struct CentroidChange {
  std::size_t n = 0;  // tree size at which the new centroid was first selected
  Vertex old_centroid = 0;
  Vertex new_centroid = 0;
};

struct CentroidCheckpoint {
  std::size_t n = 0;
  std::vector<Vertex> top;  // H^{K_top}_psi at this size
  std::vector<std::uint32_t> psi;
};

/// Finite-horizon record of the selected centroid v*(n) along one growth run.
struct CentroidChangeLog {
  std::vector<CentroidChange> events;
  std::vector<CentroidCheckpoint> checkpoints;
  std::size_t final_n = 0;
  Vertex final_selected = 0;
  /// Steps where psi(v*(n)) > n/2. Always zero for a correct tracker.
  std::size_t balance_violations = 0;
  /// Steps where the branch at the previous centroid seen from the newborn
  /// holds fewer than n/2 vertices. Always zero.
  std::size_t separation_violations = 0;

  /// Number of change events with lo < n <= hi.
  std::size_t events_in(std::size_t lo, std::size_t hi) const;
};

struct TrackOptions {
  /// Compare the selected centroid every `stride` insertions. The invariant
  /// checks run at every insertion regardless.
  std::size_t stride = 1;
};

/// Grows one discrete tree to n_max, maintaining the selected centroid at
/// every step and logging changes plus top-K lists at the checkpoints.
CentroidChangeLog track_centroid(const AttractionSpec& spec, std::size_t n_max,
                                 std::span<const std::size_t> checkpoints, std::size_t k_top, Rng& rng,
                                 const TrackOptions& options = {});

/// track_centroid on trial stream 0 of master_seed.
CentroidChangeLog track_centroid(const AttractionSpec& spec, std::size_t n_max,
                                 std::span<const std::size_t> checkpoints, std::size_t k_top,
                                 std::uint64_t master_seed, const TrackOptions& options = {});

/// Independent tracking runs, one per trial stream.
std::vector<CentroidChangeLog> track_centroid_trials(const AttractionSpec& spec, std::size_t n_max,
                                                     std::span<const std::size_t> checkpoints, std::size_t k_top,
                                                     std::size_t trials, std::uint64_t master_seed,
                                                     const TrackOptions& options = {}, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Maximum degree
// ---------------------------------------------------------------------------

/// Largest total degree (out-degree, plus one for non-root vertices).
std::uint32_t max_degree(const GrowingTree& tree);

struct MaxDegreeRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double median_max_degree = 0.0;
  double scale = 0.0;  // (log n)^{1/(1-alpha)}
  double ratio = 0.0;  // median / scale; NaN when scale is 0
};

std::vector<MaxDegreeRow> max_degree_scan(double alpha, std::span<const std::size_t> n_list, std::size_t trials,
                                          std::uint64_t master_seed, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Races between initial shapes
// ---------------------------------------------------------------------------

struct RaceResult {
  std::size_t trials = 0;
  std::size_t first_wins = 0;
  std::size_t ties = 0;
  double win_probability = 0.0;  // ties count one half
  double standard_error = 0.0;
  double mean_population_first = 0.0;
  double mean_population_second = 0.0;
  double t_end = 0.0;
};

/// Horizon at which e^{theta t} times the smaller start reaches `target`.
double default_race_horizon(const AttractionSpec& spec, std::size_t smaller_start, double target = 1e4);

/// Empirical P(population from shape1 > population from shape2 at t_end),
/// both grown independently by CMJ continuation.
RaceResult race(const ShapeDescriptor& shape1, const ShapeDescriptor& shape2, const AttractionSpec& spec,
                double t_end, std::size_t trials, std::uint64_t master_seed, unsigned threads = 1,
                std::size_t population_cap = kDefaultPopulationCap);

// ---------------------------------------------------------------------------
// Shifted-root dominance
// ---------------------------------------------------------------------------

struct DominanceReport {
  std::uint32_t d = 0;
  double alpha = 0.0;
  double t_end = 0.0;
  std::size_t trials = 0;
  double mean_shifted = 0.0;  // H(t): root births at rate f(i + d)
  double se_shifted = 0.0;
  double mean_sum = 0.0;  // sum of d+1 single-vertex processes
  double se_sum = 0.0;
  std::vector<double> levels;            // 0.1, ..., 0.9
  std::vector<double> quantiles_shifted;
  std::vector<double> quantiles_sum;
  std::vector<double> cdf_shifted;  // empirical CDFs at quantiles_shifted
  std::vector<double> cdf_sum;
};

DominanceReport dominance_check(std::uint32_t d, double alpha, double t_end, std::size_t trials,
                                std::uint64_t master_seed, unsigned threads = 1,
                                std::size_t population_cap = kDefaultPopulationCap);

// ---------------------------------------------------------------------------
// Sums of exponentials against a single exponential
// ---------------------------------------------------------------------------

struct HoeffdingRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double empirical = 0.0;
  double standard_error = 0.0;
  double analytic = 0.0;  // 2^{-n}
  double bound = 0.0;     // 1/n^2
};

/// Empirical P(X_1 + ... + X_n <= Y) for independent unit-rate exponentials.
std::vector<HoeffdingRow> hoeffding_probe(std::span<const std::size_t> n_list, std::size_t trials,
                                          std::uint64_t master_seed);

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

/// Linear-interpolated sample quantile (type 7), q in [0, 1].
double quantile(std::vector<double> values, double q);
/// Fraction of values <= x.
double empirical_cdf(std::span<const double> values, double x);

}  // namespace cmjtree
