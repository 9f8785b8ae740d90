#include "cmjtree/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cmjtree/centroid_tracker.hpp"
#include "cmjtree/malthus.hpp"
#include "cmjtree/parallel.hpp"
#include "cmjtree/weighted_index.hpp"

namespace cmjtree {

namespace {

std::vector<Vertex> top_by_psi(std::span<const std::uint32_t> psi, std::size_t k) {
  if (k < 1 || k > psi.size()) throw std::invalid_argument("K must lie in [1, n]");
  std::vector<Vertex> order(psi.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  auto by_psi = [&](Vertex a, Vertex b) { return psi[a] != psi[b] ? psi[a] < psi[b] : a < b; };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), by_psi);
  order.resize(k);
  return order;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(std::span<const double> xs) {
  MeanSe out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

}  // namespace

std::vector<Vertex> h_k_psi(const GrowingTree& tree, std::size_t k) {
  if (k < 1 || k > tree.size()) throw std::invalid_argument("K must lie in [1, n]");
  return top_by_psi(psi_all(tree), k);
}

std::size_t root_rank(const GrowingTree& tree) {
  const std::vector<std::uint32_t> psi = psi_all(tree);
  // v_1 wins every psi tie because it has the lowest birth index.
  return static_cast<std::size_t>(std::count_if(psi.begin() + 1, psi.end(), [&](std::uint32_t p) { return p < psi[0]; }));
}

CoverageTable root_coverage(const AttractionSpec& spec, std::size_t n, std::span<const std::size_t> k_list,
                            std::size_t trials, std::uint64_t master_seed, const CoverageOptions& options) {
  if (spec.kind() != AttractionKind::kAlphaSublinear && !options.allow_non_sublinear) {
    throw std::invalid_argument(
        "root coverage is defined for alpha_sublinear specs; set allow_non_sublinear to override");
  }
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  for (std::size_t k : k_list) {
    if (k < 1 || k > n) throw std::invalid_argument("every K must lie in [1, n]");
  }

  CoverageTable table;
  table.root_ranks.resize(trials);
  parallel_for(trials, options.threads, [&](std::size_t trial) {
    Rng rng = derive_stream(master_seed, trial);
    table.root_ranks[trial] = root_rank(grow_discrete(spec, n, rng));
  });

  const double alpha = spec.alpha().value_or(std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k : k_list) {
    CoverageRow row;
    row.alpha = alpha;
    row.n = n;
    row.k = k;
    row.trials = trials;
    row.successes = static_cast<std::size_t>(
        std::count_if(table.root_ranks.begin(), table.root_ranks.end(), [&](std::size_t r) { return r < k; }));
    row.coverage = static_cast<double>(row.successes) / static_cast<double>(trials);
    row.standard_error = std::sqrt(row.coverage * (1.0 - row.coverage) / static_cast<double>(trials));
    table.rows.push_back(row);
  }
  return table;
}

std::size_t smallest_k_for_coverage(std::span<const std::size_t> root_ranks, double target) {
  if (root_ranks.empty()) throw std::invalid_argument("no trials");
  if (!(target > 0.0 && target <= 1.0)) throw std::invalid_argument("target must lie in (0, 1]");
  std::vector<std::size_t> sorted(root_ranks.begin(), root_ranks.end());
  std::sort(sorted.begin(), sorted.end());
  const auto needed = static_cast<std::size_t>(std::ceil(target * static_cast<double>(sorted.size()) - 1e-9));
  return sorted[std::max<std::size_t>(needed, 1) - 1] + 1;
}

std::size_t CentroidChangeLog::events_in(std::size_t lo, std::size_t hi) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [&](const CentroidChange& e) { return e.n > lo && e.n <= hi; }));
}

CentroidChangeLog track_centroid(const AttractionSpec& spec, std::size_t n_max,
                                 std::span<const std::size_t> checkpoints, std::size_t k_top, Rng& rng,
                                 const TrackOptions& options) {
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  if (options.stride < 1) throw std::invalid_argument("stride must be positive");
  if (k_top < 1) throw std::invalid_argument("K_top must be positive");
  std::vector<std::size_t> marks(checkpoints.begin(), checkpoints.end());
  std::sort(marks.begin(), marks.end());
  auto next_mark = marks.begin();

  GrowingTree tree;
  WeightedIndex weights;
  weights.reserve(n_max);
  weights.push_back(spec(0));
  CentroidTracker tracker(tree);

  CentroidChangeLog log;
  Vertex reported = tracker.selected();
  auto checkpoint = [&](std::size_t n) {
    while (next_mark != marks.end() && *next_mark < n) ++next_mark;
    if (next_mark == marks.end() || *next_mark != n) return;
    const std::vector<std::uint32_t> psi = psi_all(tree);
    CentroidCheckpoint cp;
    cp.n = n;
    cp.top = top_by_psi(psi, std::min(k_top, n));
    for (Vertex v : cp.top) cp.psi.push_back(psi[v]);
    log.checkpoints.push_back(std::move(cp));
  };
  checkpoint(1);

  for (std::size_t n = 1; n < n_max; ++n) {
    const Vertex before = tracker.selected();
    const auto parent = static_cast<Vertex>(weights.sample(rng));
    const Vertex born = tree.add_child(parent);
    weights.set(parent, spec(tree.out_degree(parent)));
    weights.push_back(spec(0));
    tracker.on_birth(born);

    if (2 * static_cast<std::size_t>(tracker.directed_subtree(born, before)) < n) ++log.separation_violations;
    if (2 * static_cast<std::size_t>(tracker.psi_of_centroid()) > n + 1) ++log.balance_violations;

    const std::size_t size = n + 1;
    if (size % options.stride == 0 || size == n_max) {
      if (tracker.selected() != reported) {
        log.events.push_back({size, reported, tracker.selected()});
        reported = tracker.selected();
      }
    }
    checkpoint(size);
  }
  log.final_n = n_max;
  log.final_selected = tracker.selected();
  return log;
}

CentroidChangeLog track_centroid(const AttractionSpec& spec, std::size_t n_max,
                                 std::span<const std::size_t> checkpoints, std::size_t k_top,
                                 std::uint64_t master_seed, const TrackOptions& options) {
  Rng rng = derive_stream(master_seed, 0);
  return track_centroid(spec, n_max, checkpoints, k_top, rng, options);
}

std::vector<CentroidChangeLog> track_centroid_trials(const AttractionSpec& spec, std::size_t n_max,
                                                     std::span<const std::size_t> checkpoints, std::size_t k_top,
                                                     std::size_t trials, std::uint64_t master_seed,
                                                     const TrackOptions& options, unsigned threads) {
  std::vector<CentroidChangeLog> logs(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    Rng rng = derive_stream(master_seed, trial);
    logs[trial] = track_centroid(spec, n_max, checkpoints, k_top, rng, options);
  });
  return logs;
}

std::uint32_t max_degree(const GrowingTree& tree) {
  std::uint32_t best = 0;
  for (Vertex v = 0; v < tree.size(); ++v) best = std::max(best, tree.total_degree(v));
  return best;
}

std::vector<MaxDegreeRow> max_degree_scan(double alpha, std::span<const std::size_t> n_list, std::size_t trials,
                                          std::uint64_t master_seed, unsigned threads) {
  const AttractionSpec spec = AttractionSpec::AlphaSublinear(alpha);
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  std::vector<MaxDegreeRow> rows;
  for (std::size_t n : n_list) {
    if (n < 1) throw std::invalid_argument("every n must be positive");
    std::vector<double> maxima(trials);
    parallel_for(trials, threads, [&](std::size_t trial) {
      Rng rng = derive_stream(master_seed, n, trial);
      maxima[trial] = max_degree(grow_discrete(spec, n, rng));
    });
    MaxDegreeRow row;
    row.n = n;
    row.trials = trials;
    row.median_max_degree = quantile(maxima, 0.5);
    row.scale = std::pow(std::log(static_cast<double>(n)), 1.0 / (1.0 - alpha));
    row.ratio = row.scale > 0.0 ? row.median_max_degree / row.scale : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

double default_race_horizon(const AttractionSpec& spec, std::size_t smaller_start, double target) {
  const double theta = solve_malthusian(spec, 1e-9).theta;
  const double ratio = target / static_cast<double>(std::max<std::size_t>(smaller_start, 1));
  return ratio > 1.0 ? std::log(ratio) / theta : 0.0;
}

RaceResult race(const ShapeDescriptor& shape1, const ShapeDescriptor& shape2, const AttractionSpec& spec,
                double t_end, std::size_t trials, std::uint64_t master_seed, unsigned threads,
                std::size_t population_cap) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  const GrowingTree start1 = shape1.build();
  const GrowingTree start2 = shape2.build();
  CmjOptions options;
  options.population_cap = population_cap;

  std::vector<double> pop1(trials);
  std::vector<double> pop2(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    Rng rng = derive_stream(master_seed, trial);
    CmjProcess first(spec, start1, rng, options);
    first.advance_to(t_end);
    CmjProcess second(spec, start2, rng, options);
    second.advance_to(t_end);
    pop1[trial] = static_cast<double>(first.population());
    pop2[trial] = static_cast<double>(second.population());
  });

  RaceResult result;
  result.trials = trials;
  result.t_end = t_end;
  std::vector<double> outcome(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    if (pop1[i] > pop2[i]) {
      ++result.first_wins;
      outcome[i] = 1.0;
    } else if (pop1[i] == pop2[i]) {
      ++result.ties;
      outcome[i] = 0.5;
    }
  }
  const MeanSe w = mean_and_se(outcome);
  result.win_probability = w.mean;
  result.standard_error = w.se;
  result.mean_population_first = mean_and_se(pop1).mean;
  result.mean_population_second = mean_and_se(pop2).mean;
  return result;
}

DominanceReport dominance_check(std::uint32_t d, double alpha, double t_end, std::size_t trials,
                                std::uint64_t master_seed, unsigned threads, std::size_t population_cap) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  const AttractionSpec spec = AttractionSpec::AlphaSublinear(alpha);

  std::vector<double> shifted(trials);
  std::vector<double> summed(trials);
  parallel_for(trials, threads, [&](std::size_t trial) {
    Rng rng = derive_stream(master_seed, trial);
    CmjOptions shifted_options;
    shifted_options.population_cap = population_cap;
    shifted_options.root_degree_shift = d;
    CmjProcess h(spec, GrowingTree(), rng, shifted_options);
    h.advance_to(t_end);
    shifted[trial] = static_cast<double>(h.population());

    CmjOptions plain;
    plain.population_cap = population_cap;
    double total = 0.0;
    for (std::uint32_t i = 0; i <= d; ++i) {
      CmjProcess x(spec, GrowingTree(), rng, plain);
      x.advance_to(t_end);
      total += static_cast<double>(x.population());
    }
    summed[trial] = total;
  });

  DominanceReport report;
  report.d = d;
  report.alpha = alpha;
  report.t_end = t_end;
  report.trials = trials;
  const MeanSe h = mean_and_se(shifted);
  const MeanSe s = mean_and_se(summed);
  report.mean_shifted = h.mean;
  report.se_shifted = h.se;
  report.mean_sum = s.mean;
  report.se_sum = s.se;
  for (int i = 1; i <= 9; ++i) {
    const double level = i / 10.0;
    const double q = quantile(shifted, level);
    report.levels.push_back(level);
    report.quantiles_shifted.push_back(q);
    report.quantiles_sum.push_back(quantile(summed, level));
    report.cdf_shifted.push_back(empirical_cdf(shifted, q));
    report.cdf_sum.push_back(empirical_cdf(summed, q));
  }
  return report;
}

std::vector<HoeffdingRow> hoeffding_probe(std::span<const std::size_t> n_list, std::size_t trials,
                                          std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  std::vector<HoeffdingRow> rows;
  for (std::size_t n : n_list) {
    if (n < 1) throw std::invalid_argument("every n must be positive");
    Rng rng = derive_stream(master_seed, n, 0);
    HoeffdingRow row;
    row.n = n;
    row.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += rng.exponential(1.0);
      if (sum <= rng.exponential(1.0)) ++row.hits;
    }
    row.empirical = static_cast<double>(row.hits) / static_cast<double>(trials);
    row.standard_error = std::sqrt(row.empirical * (1.0 - row.empirical) / static_cast<double>(trials));
    row.analytic = std::ldexp(1.0, -static_cast<int>(n));
    row.bound = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    rows.push_back(row);
  }
  return rows;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double empirical_cdf(std::span<const double> values, double x) {
  if (values.empty()) return 0.0;
  const auto count = std::count_if(values.begin(), values.end(), [&](double v) { return v <= x; });
  return static_cast<double>(count) / static_cast<double>(values.size());
}

}  // namespace cmjtree
