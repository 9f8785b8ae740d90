#include "cmjtree/attraction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmjtree {

AttractionSpec AttractionSpec::Uniform() {
  AttractionSpec s;
  s.kind_ = AttractionKind::kUniform;
  return s;
}

AttractionSpec AttractionSpec::Linear() {
  AttractionSpec s;
  s.kind_ = AttractionKind::kLinear;
  return s;
}

AttractionSpec AttractionSpec::AlphaSublinear(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  AttractionSpec s;
  s.kind_ = AttractionKind::kAlphaSublinear;
  s.alpha_ = alpha;
  return s;
}

AttractionSpec AttractionSpec::Table(std::vector<double> values, TailRule tail,
                                     std::optional<double> declared_alpha) {
  if (values.empty()) throw std::invalid_argument("attraction table must not be empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("attraction table entries must be finite");
  }
  if (declared_alpha && !(*declared_alpha > 0.0 && *declared_alpha < 1.0)) {
    throw std::invalid_argument("declared alpha must lie in (0, 1)");
  }
  AttractionSpec s;
  s.kind_ = AttractionKind::kTable;
  s.values_ = std::move(values);
  s.tail_ = tail;
  s.alpha_ = declared_alpha;
  return s;
}

double AttractionSpec::operator()(std::uint64_t k) const {
  switch (kind_) {
    case AttractionKind::kUniform:
      return 1.0;
    case AttractionKind::kLinear:
      return static_cast<double>(k) + 1.0;
    case AttractionKind::kAlphaSublinear:
      return std::pow(static_cast<double>(k) + 1.0, *alpha_);
    case AttractionKind::kTable:
      if (k < values_.size()) return values_[k];
      if (tail_ == TailRule::kConstantLast) return values_.back();
      throw std::out_of_range("undefined degree " + std::to_string(k) +
                              " for attraction table of length " +
                              std::to_string(values_.size()));
  }
  return 1.0;
}

std::optional<std::uint64_t> AttractionSpec::eventually_constant_from() const {
  switch (kind_) {
    case AttractionKind::kUniform:
      return 0;
    case AttractionKind::kTable: {
      std::uint64_t last = values_.size() - 1;
      if (tail_ == TailRule::kReject) return last;
      while (last > 0 && values_[last - 1] == values_[last]) --last;
      return last;
    }
    default:
      return std::nullopt;
  }
}

std::string AttractionSpec::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case AttractionKind::kUniform:
      out << "uniform";
      break;
    case AttractionKind::kLinear:
      out << "linear";
      break;
    case AttractionKind::kAlphaSublinear:
      out << "alpha_sublinear(" << *alpha_ << ")";
      break;
    case AttractionKind::kTable:
      out << "table[" << values_.size() << "]"
          << (tail_ == TailRule::kConstantLast ? "/constant_last" : "/reject");
      if (alpha_) out << " alpha<=" << *alpha_;
      break;
  }
  return out.str();
}

namespace {

void add(ValidationReport& report, std::string message) {
  report.valid = false;
  report.violations.push_back(std::move(message));
}

// Prefix checks shared by every kind: f >= 1 and nondecreasing.
void check_basic_prefix(const AttractionSpec& spec, std::uint64_t limit, ValidationReport& report) {
  bool below_one = false;
  bool decreasing = false;
  double prev = 0.0;
  for (std::uint64_t k = 0; k <= limit; ++k) {
    double v = spec(k);
    if (!below_one && !(v >= 1.0)) {
      below_one = true;
      add(report, "f(i) >= 1 fails at i = " + std::to_string(k));
    }
    if (!decreasing && k > 0 && v < prev) {
      decreasing = true;
      add(report, "f is not nondecreasing: f(" + std::to_string(k) + ") < f(" +
                      std::to_string(k - 1) + ")");
    }
    prev = v;
  }
}

}  // namespace

ValidationReport validate(const AttractionSpec& spec, ValidationMode mode, std::uint64_t k_check) {
  ValidationReport report;

  std::uint64_t limit = k_check;
  if (spec.kind() == AttractionKind::kTable && spec.tail_rule() == TailRule::kReject) {
    limit = std::min<std::uint64_t>(limit, spec.table_values().size() - 1);
  }

  switch (spec.kind()) {
    case AttractionKind::kUniform:
    case AttractionKind::kLinear:
    case AttractionKind::kAlphaSublinear:
      // f >= 1 and monotonicity hold analytically.
      break;
    case AttractionKind::kTable:
      check_basic_prefix(spec, limit, report);
      break;
  }

  if (mode == ValidationMode::kBasic) return report;

  switch (spec.kind()) {
    case AttractionKind::kUniform:
      add(report, "f is not identically equal to 1");
      break;
    case AttractionKind::kLinear:
      add(report, "f(i) <= (i+1)^alpha fails for every alpha < 1: f(1) = 2 > 2^alpha");
      break;
    case AttractionKind::kAlphaSublinear:
      break;
    case AttractionKind::kTable: {
      bool all_one = true;
      for (std::uint64_t k = 0; k <= limit; ++k) {
        if (spec(k) != 1.0) {
          all_one = false;
          break;
        }
      }
      if (all_one) add(report, "f is not identically equal to 1");

      if (spec.alpha()) {
        const double a = *spec.alpha();
        for (std::uint64_t k = 0; k <= limit; ++k) {
          double bound = std::pow(static_cast<double>(k) + 1.0, a);
          if (spec(k) > bound * (1.0 + 1e-12)) {
            add(report, "f(i) <= (i+1)^alpha fails at i = " + std::to_string(k) +
                            " for declared alpha");
            break;
          }
        }
      } else {
        // Need some alpha < 1 with f(i) <= (i+1)^alpha. A constant tail is
        // eventually dominated by any positive power, so the prefix decides.
        if (spec(0) > 1.0) {
          add(report, "f(i) <= (i+1)^alpha fails at i = 0 (requires f(0) = 1)");
        } else {
          double needed = 0.0;
          for (std::uint64_t k = 1; k <= limit; ++k) {
            needed = std::max(needed, std::log(spec(k)) / std::log(static_cast<double>(k) + 1.0));
          }
          if (needed >= 1.0) {
            add(report, "no alpha < 1 satisfies f(i) <= (i+1)^alpha on the checked prefix");
          }
        }
      }
      break;
    }
  }
  return report;
}

bool is_sublinear(const AttractionSpec& spec) {
  return validate(spec, ValidationMode::kSublinear).valid;
}

}  // namespace cmjtree
