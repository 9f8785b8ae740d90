#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cmjtree {

enum class AttractionKind { kUniform, kLinear, kAlphaSublinear, kTable };

// What a table-backed attraction function does past its last entry.
enum class TailRule { kConstantLast, kReject };

/// Attraction function f mapping a vertex's out-degree to its attachment
/// weight (discrete growth) or birth rate (continuous-time growth).
///
/// Instances are immutable once built and may be shared freely across
/// concurrently running trials.
class AttractionSpec {
 public:
  static AttractionSpec Uniform();
  static AttractionSpec Linear();
  /// f(k) = (k+1)^alpha. Throws std::invalid_argument unless 0 < alpha < 1.
  static AttractionSpec AlphaSublinear(double alpha);
  /// f(k) = values[k]; past the end the tail rule applies. `declared_alpha`
  /// marks the table as claiming f(k) <= (k+1)^alpha.
  static AttractionSpec Table(std::vector<double> values, TailRule tail,
                              std::optional<double> declared_alpha = std::nullopt);

  AttractionKind kind() const { return kind_; }
  /// Exponent for kAlphaSublinear, the declared exponent for a table, else empty.
  std::optional<double> alpha() const { return alpha_; }
  const std::vector<double>& table_values() const { return values_; }
  TailRule tail_rule() const { return tail_; }

  /// f(k). Throws std::out_of_range("undefined degree ...") for a rejecting
  /// table queried past its end.
  double operator()(std::uint64_t k) const;

  /// True when every f(k) is defined, i.e. not a rejecting table.
  bool is_total() const { return kind_ != AttractionKind::kTable || tail_ == TailRule::kConstantLast; }

  /// Largest k for which f(k) differs from f(k+1), or empty if f keeps
  /// changing forever (linear, alpha-sublinear). For a rejecting table this is
  /// the last defined index.
  std::optional<std::uint64_t> eventually_constant_from() const;

  std::string describe() const;

  friend bool operator==(const AttractionSpec&, const AttractionSpec&) = default;

 private:
  AttractionSpec() = default;

  AttractionKind kind_ = AttractionKind::kUniform;
  std::optional<double> alpha_;
  std::vector<double> values_;
  TailRule tail_ = TailRule::kConstantLast;
};

inline double evaluate(const AttractionSpec& spec, std::uint64_t k) { return spec(k); }

enum class ValidationMode {
  kBasic,      // f >= 1 and nondecreasing; what growth requires
  kSublinear,  // the three sublinear-attraction conditions
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

inline constexpr std::uint64_t kDefaultCheckLimit = 10'000;

/// Checks the attraction conditions on k in [0, k_check], using closed-form
/// arguments where the kind permits. Violations are reported, never thrown.
ValidationReport validate(const AttractionSpec& spec,
                          ValidationMode mode = ValidationMode::kSublinear,
                          std::uint64_t k_check = kDefaultCheckLimit);

/// Convenience: true for alpha_sublinear specs and tables that pass
/// sublinear validation.
bool is_sublinear(const AttractionSpec& spec);

}  // namespace cmjtree
