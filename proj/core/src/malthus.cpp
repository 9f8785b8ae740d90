#include "cmjtree/malthus.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace cmjtree {

namespace {

void require_positive(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
}

double ratio(const AttractionSpec& spec, double theta, std::uint64_t i) {
  const double f = spec(i);
  return f / (theta + f);
}

}  // namespace

double offspring_tail(const AttractionSpec& spec, double theta, std::uint64_t k) {
  require_positive(theta);
  double p = 1.0;
  for (std::uint64_t i = 0; i < k; ++i) p *= ratio(spec, theta, i);
  return p;
}

SeriesValue mean_offspring_series(const AttractionSpec& spec, double theta) {
  require_positive(theta);
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  if (spec.kind() == AttractionKind::kLinear && theta <= 1.0) {
    return {std::numeric_limits<double>::infinity(), 0.0, 0};
  }
  const std::optional<std::uint64_t> constant_from =
      spec.is_total() ? spec.eventually_constant_from() : std::nullopt;

  SeriesValue out;
  double p = 1.0;  // P(xi >= k)
  for (std::uint64_t k = 1; k <= kSeriesTermCap; ++k) {
    p *= ratio(spec, theta, k - 1);
    out.value += p;
    out.terms = k;

    if (constant_from && k - 1 >= *constant_from) {
      // Every later ratio equals q: the rest is p q / (1 - q) = p f / theta.
      out.value += p * spec(k) / theta;
      out.truncation_bound = 4 * kEps * out.value;
      return out;
    }
    if (spec.kind() == AttractionKind::kLinear) {
      // sum_{j > k} P(xi >= j) = P(xi >= k) (k + 1) / (theta - 1)
      out.value += p * (static_cast<double>(k) + 1.0) / (theta - 1.0);
      out.truncation_bound = 4 * kEps * out.value;
      return out;
    }
    if (p < kSeriesTailTolerance) {
      // Ratios are nondecreasing in k, so over the next k terms they are at
      // most q(2k); beyond that the terms are below p q(2k)^k.
      const double q_bar = ratio(spec, theta, 2 * k);
      const double bound = p * q_bar / (1.0 - q_bar);
      if (bound < kSeriesTailTolerance) {
        out.truncation_bound = bound;
        return out;
      }
    }
  }
  const double q_bar = ratio(spec, theta, 2 * kSeriesTermCap);
  throw SeriesNotConverged(out.value, p * q_bar / (1.0 - q_bar));
}

namespace {

// Sign of mean_offspring(theta) - 1, treating a nonconvergent series whose
// partial sum already exceeds 1 as positive (all terms are positive).
struct Probe {
  double value;
  double bound;
};

Probe probe(const AttractionSpec& spec, double theta) {
  try {
    const SeriesValue s = mean_offspring_series(spec, theta);
    return {s.value, s.truncation_bound};
  } catch (const SeriesNotConverged& e) {
    if (e.partial_sum() > 1.0) return {e.partial_sum(), e.bound()};
    throw;
  }
}

}  // namespace

MalthusEstimate solve_malthusian(const AttractionSpec& spec, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  constexpr double kLowest = 1e-3;
  constexpr double kHighest = 64.0;

  double lo = 1.0;
  double hi = 2.0;
  bool bracketed = false;
  if (is_sublinear(spec)) {
    lo = 1.0 + 1e-6;
    hi = 2.0 - 1e-6;
    bracketed = probe(spec, lo).value > 1.0 && probe(spec, hi).value < 1.0;
  }
  if (!bracketed) {
    lo = 1.0;
    hi = 2.0;
    while (probe(spec, lo).value <= 1.0) {
      lo /= 2.0;
      if (lo < kLowest) throw NoMalthusianRoot();
    }
    while (probe(spec, hi).value >= 1.0) {
      hi *= 2.0;
      if (hi > kHighest) throw NoMalthusianRoot();
    }
  }

  MalthusEstimate est;
  est.lo = lo;
  est.hi = hi;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    const Probe p = probe(spec, mid);
    est.theta = mid;
    est.residual = std::abs(p.value - 1.0);
    est.truncation_bound = p.bound;
    if ((hi - lo < tol && est.residual <= tol) || est.iterations >= 200 || mid == lo || mid == hi) break;
    ++est.iterations;
    if (p.value > 1.0) {
      lo = mid;
    } else if (p.value < 1.0) {
      hi = mid;
    } else {
      break;
    }
  }
  est.lo = lo;
  est.hi = hi;
  return est;
}

}  // namespace cmjtree
