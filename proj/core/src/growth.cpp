#include "cmjtree/growth.hpp"

#include <cmath>
#include <vector>

#include "cmjtree/weighted_index.hpp"

namespace cmjtree {

GrowingTree grow_discrete(const AttractionSpec& spec, std::size_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  GrowingTree tree;
  WeightedIndex weights;
  weights.reserve(n);
  weights.push_back(spec(0));
  for (std::size_t m = 1; m < n; ++m) {
    const auto parent = static_cast<Vertex>(weights.sample(rng));
    tree.add_child(parent);
    weights.set(parent, spec(tree.out_degree(parent)));
    weights.push_back(spec(0));
  }
  return tree;
}

namespace {

GrowingTree stamp_birth_times(GrowingTree initial) {
  if (initial.has_birth_times()) return initial;
  std::vector<double> zeros(initial.size(), 0.0);
  return GrowingTree::FromParents(initial.parents(), std::move(zeros));
}

}  // namespace

CmjProcess::CmjProcess(const AttractionSpec& spec, GrowingTree initial, Rng& rng, CmjOptions options)
    : spec_(&spec), rng_(&rng), options_(options), tree_(stamp_birth_times(std::move(initial))) {
  if (tree_.size() > options_.population_cap) throw PopulationCapExceeded(options_.population_cap);
  now_ = tree_.birth_times().back();
  for (Vertex v = 0; v < tree_.size(); ++v) schedule(v);
}

double CmjProcess::birth_rate(Vertex v) const {
  const std::uint64_t k = tree_.out_degree(v) + (v == 0 ? options_.root_degree_shift : 0);
  return (*spec_)(k);
}

void CmjProcess::schedule(Vertex v) {
  pending_.push({now_ + rng_->exponential(birth_rate(v)), v});
}

Vertex CmjProcess::step() {
  if (tree_.size() >= options_.population_cap) throw PopulationCapExceeded(options_.population_cap);
  const Pending next = pending_.top();
  pending_.pop();
  now_ = next.time;
  const Vertex child = tree_.add_child(next.vertex, now_);
  schedule(next.vertex);
  schedule(child);
  return child;
}

void CmjProcess::advance_to(double t) {
  while (pending_.top().time <= t) step();
  if (t > now_) now_ = t;
}

void CmjProcess::grow_to(std::size_t n) {
  while (tree_.size() < n) step();
}

double CmjProcess::run(const StopRule& stop) {
  if (!stop.n_max && !stop.t_end) throw std::invalid_argument("stop rule needs n_max or t_end");
  if (stop.n_max && *stop.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  if (stop.t_end && !(*stop.t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  for (;;) {
    if (stop.n_max && tree_.size() >= *stop.n_max) return now_;
    if (stop.t_end && pending_.top().time > *stop.t_end) {
      if (*stop.t_end > now_) now_ = *stop.t_end;
      return now_;
    }
    step();
  }
}

CmjResult grow_cmj(const AttractionSpec& spec, const StopRule& stop, Rng& rng, CmjOptions options) {
  return grow_from_seed_tree(GrowingTree(0.0), spec, stop, rng, options);
}

CmjResult grow_from_seed_tree(GrowingTree initial, const AttractionSpec& spec, const StopRule& stop,
                              Rng& rng, CmjOptions options) {
  CmjProcess process(spec, std::move(initial), rng, options);
  const double t = process.run(stop);
  return {std::move(process).release(), t};
}

CmjTrajectory population_trajectory(const AttractionSpec& spec, double t_end, double dt, Rng& rng,
                                    const TrajectoryOptions& options) {
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("sample_dt must be positive");
  CmjOptions cmj;
  cmj.population_cap = options.population_cap;
  CmjProcess process(spec, GrowingTree(0.0), rng, cmj);

  CmjTrajectory out;
  out.theta = options.theta;
  const auto steps = static_cast<std::uint64_t>(std::floor(t_end / dt * (1.0 + 1e-12)));
  for (std::uint64_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    process.advance_to(t);
    out.times.push_back(t);
    out.population.push_back(process.population());
    if (options.theta) {
      out.normalized.push_back(std::exp(-*options.theta * t) * static_cast<double>(process.population()));
    }
    if (options.stop_population && process.population() >= *options.stop_population) break;
  }
  return out;
}

double log_growth_slope(const CmjTrajectory& trajectory, double window_start) {
  if (trajectory.times.empty()) throw std::invalid_argument("empty trajectory");
  const double cutoff = window_start * trajectory.times.back();
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    const double t = trajectory.times[i];
    if (t < cutoff) continue;
    const double y = std::log(static_cast<double>(trajectory.population[i]));
    n += 1;
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom <= 0.0) throw std::invalid_argument("need at least two grid points in the window");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace cmjtree
