#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cmjtree/attraction.hpp"

namespace cmjtree {

class SeriesNotConverged : public std::runtime_error {
 public:
  SeriesNotConverged(double partial_sum, double bound)
      : std::runtime_error("series not converged (partial sum " + std::to_string(partial_sum) +
                           ", tail bound " + std::to_string(bound) + ")"),
        partial_sum_(partial_sum),
        bound_(bound) {}
  double partial_sum() const { return partial_sum_; }
  double bound() const { return bound_; }

 private:
  double partial_sum_;
  double bound_;
};

class NoMalthusianRoot : public std::runtime_error {
 public:
  NoMalthusianRoot() : std::runtime_error("no Malthusian parameter in search range") {}
};

inline constexpr double kSeriesTailTolerance = 1e-16;
inline constexpr std::uint64_t kSeriesTermCap = 1'000'000;

/// P(xi(0, X_theta] >= k) = prod_{i<k} f(i) / (theta + f(i)), where X_theta
/// is an independent Exp(theta) time. Throws std::invalid_argument if theta <= 0.
double offspring_tail(const AttractionSpec& spec, double theta, std::uint64_t k);

struct SeriesValue {
  double value = 0.0;
  /// Upper bound on the part of the series not included in `value`.
  double truncation_bound = 0.0;
  std::uint64_t terms = 0;
};

/// E[xi(X_theta)] = theta * int e^{-theta t} mu(t) dt, evaluated as the sum
/// of offspring_tail over k >= 1. Tails that are eventually geometric
/// (constant f) or hypergeometric (linear f) are summed in closed form;
/// otherwise the sum stops once the tail bound falls below
/// kSeriesTailTolerance. Returns +infinity for linear f with theta <= 1,
/// where the series diverges.
SeriesValue mean_offspring_series(const AttractionSpec& spec, double theta);

inline double mean_offspring(const AttractionSpec& spec, double theta) {
  return mean_offspring_series(spec, theta).value;
}

struct MalthusEstimate {
  double theta = 0.0;
  double residual = 0.0;  // |mean_offspring(theta) - 1|
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
  double truncation_bound = 0.0;
};

/// Solves mean_offspring(theta) = 1 by bisection. Sublinear specs start from
/// the bracket (1 + 1e-6, 2 - 1e-6); others start from (1, 2) and expand
/// geometrically down to 1e-3 and up to 64.
MalthusEstimate solve_malthusian(const AttractionSpec& spec, double tol = 1e-9);

}  // namespace cmjtree
