#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <vector>

#include "detail/real.hpp"
#include "gsfpp/errors.hpp"
#include "gsfpp/specfun.hpp"

namespace gsfpp::detail {

/// A partial result together with the absolute mass that produced it.
template <class Real>
struct Tracked {
  Real value{0};
  Real mass{0};
};

/// Neumaier's variant of compensated summation.
template <class Real>
class CompensatedSum {
 public:
  void add(const Real& x) {
    const Real t = sum_ + x;
    if (real_abs(sum_) >= real_abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

struct TruncationRule {
  double tol;
  int first_check = 0;
  int max_terms = 10000;
  /// Summation is abandoned with PrecisionOverflow once epsilon * mass of a
  /// component exceeds this, since the result could no longer be accepted.
  double max_rounding = std::numeric_limits<double>::infinity();
};

template <class Real>
void check_rounding(const Real& mass, const TruncationRule& rule, const char* what) {
  if (std::numeric_limits<Real>::epsilon() * mass > Real(rule.max_rounding)) {
    throw PrecisionOverflow(std::string(what) + ": term mass " + std::to_string(to_double(mass)) +
                            " rules out the requested accuracy");
  }
}

/// Runs of exact zeros this long after first_check mean the series terminated.
inline constexpr int kTerminalZeroRun = 16;

/// Sums term(0), term(1), ... under the shared truncation contract. `term` is
/// invoked with consecutive indices starting at 0 and may keep state.
template <class Real, class TermFn>
Tracked<Real> sum_series(TermFn&& term, const TruncationRule& rule, const char* what) {
  CompensatedSum<Real> sum;
  Real mass{0};
  std::array<Real, 3> recent{};
  int nonzero_seen = 0;
  int zero_run = 0;
  for (int r = 0; r < rule.max_terms; ++r) {
    const Tracked<Real> t = term(r);
    if (!real_isfinite(t.value) || !real_isfinite(t.mass)) {
      throw PrecisionOverflow(std::string(what) + ": term " + std::to_string(r) +
                              " is not finite");
    }
    sum.add(t.value);
    mass += t.mass;
    check_rounding(mass, rule, what);
    if (t.value == 0) {
      if (r >= rule.first_check && ++zero_run >= kTerminalZeroRun) {
        return {sum.value(), mass};
      }
      continue;
    }
    zero_run = 0;
    recent[0] = recent[1];
    recent[1] = recent[2];
    recent[2] = real_abs(t.value);
    ++nonzero_seen;
    if (r < rule.first_check || nonzero_seen < 3) continue;
    const bool settling = recent[0] >= recent[1] && recent[1] >= recent[2];
    if (settling && recent[2] < Real(rule.tol) * real_abs(sum.value())) {
      return {sum.value(), mass};
    }
  }
  throw NonConvergence(std::string(what) + ": truncation rule not met within " +
                       std::to_string(rule.max_terms) + " terms");
}

/// True when a double-precision mass estimate already rules out an extended
/// result within `target`. The margin absorbs differences between the two
/// truncation points.
inline bool hopeless_in_extended(double mass, double target) {
  constexpr double kMargin = 1e3;
  return to_double(std::numeric_limits<Extended>::epsilon()) * mass > kMargin * target;
}

/// Evaluates `fn.template operator()<Real>()` in the precision requested by
/// `precision`. In automatic mode the double result is accepted when
/// epsilon * mass <= tol * max(|value|, floor); otherwise, or on overflow, the
/// extended path runs. An extended result that fails the same test raises
/// NonConvergence.
template <class Fn>
specfun::SeriesEvaluation evaluate_with_precision(specfun::Precision precision, double tol,
                                                  double floor, Fn&& fn) {
  using specfun::Precision;
  auto extended = [&] {
    const Tracked<Extended> r = fn.template operator()<Extended>();
    const Extended err = std::numeric_limits<Extended>::epsilon() * r.mass;
    if (err > Extended(tol) * std::max(real_abs(r.value), Extended(floor))) {
      throw NonConvergence("cancellation exceeds extended precision: term mass " +
                           std::to_string(to_double(r.mass)) + " against value " +
                           std::to_string(to_double(r.value)));
    }
    return specfun::SeriesEvaluation{to_double(r.value), to_double(r.mass), true};
  };
  if (precision == Precision::extended) return extended();
  try {
    const Tracked<double> r = fn.template operator()<double>();
    const double err = std::numeric_limits<double>::epsilon() * r.mass;
    const double scale = std::max(std::fabs(r.value), floor);
    if (precision == Precision::standard || err <= tol * scale) {
      return {r.value, r.mass, false};
    }
    if (hopeless_in_extended(r.mass, tol * scale)) {
      throw NonConvergence("cancellation exceeds extended precision: term mass " +
                           std::to_string(r.mass));
    }
  } catch (const PrecisionOverflow&) {
    if (precision == Precision::standard) throw;
  }
  return extended();
}

}  // namespace gsfpp::detail

namespace gsfpp::detail {

/// Sums a family of series that share their summation index, such as the
/// state probabilities p_0..p_K of one outer series. term(m, out) fills
/// out[k] for every component. Each component follows the truncation
/// contract of sum_series with its own first_check; summation stops once all
/// components have met it.
template <class Real, class TermFn>
std::vector<Tracked<Real>> sum_series_family(TermFn&& term, const std::vector<int>& first_check,
                                             const TruncationRule& rule, const char* what) {
  struct State {
    CompensatedSum<Real> sum;
    Real mass{0};
    std::array<Real, 3> recent{};
    int nonzero_seen = 0;
    int zero_run = 0;
    bool done = false;
  };
  const std::size_t width = first_check.size();
  std::vector<State> states(width);
  std::vector<Tracked<Real>> terms(width);
  std::size_t remaining = width;
  for (int m = 0; m < rule.max_terms && remaining > 0; ++m) {
    term(m, terms);
    for (std::size_t k = 0; k < width; ++k) {
      State& s = states[k];
      const Tracked<Real>& t = terms[k];
      if (!real_isfinite(t.value) || !real_isfinite(t.mass)) {
        throw PrecisionOverflow(std::string(what) + ": term " + std::to_string(m) +
                                " of component " + std::to_string(k) + " is not finite");
      }
      s.sum.add(t.value);
      s.mass += t.mass;
      check_rounding(s.mass, rule, what);
      if (s.done) continue;
      const bool checking = m >= std::max(rule.first_check, first_check[k]);
      if (t.value == 0) {
        if (checking && ++s.zero_run >= kTerminalZeroRun) {
          s.done = true;
          --remaining;
        }
        continue;
      }
      s.zero_run = 0;
      s.recent = {s.recent[1], s.recent[2], real_abs(t.value)};
      ++s.nonzero_seen;
      if (!checking || s.nonzero_seen < 3) continue;
      const bool settling = s.recent[0] >= s.recent[1] && s.recent[1] >= s.recent[2];
      if (settling && s.recent[2] < Real(rule.tol) * real_abs(s.sum.value())) {
        s.done = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    throw NonConvergence(std::string(what) + ": truncation rule not met within " +
                         std::to_string(rule.max_terms) + " terms");
  }
  std::vector<Tracked<Real>> out(width);
  for (std::size_t k = 0; k < width; ++k) out[k] = {states[k].sum.value(), states[k].mass};
  return out;
}

/// Result of a family evaluation in double precision.
struct FamilyEvaluation {
  std::vector<double> values;
  bool extended = false;
};

/// Vector analogue of evaluate_with_precision with an absolute acceptance
/// test: the double result is kept when epsilon * mass <= abs_tol for every
/// component. Extended results failing that test raise NonConvergence.
template <class Fn>
FamilyEvaluation evaluate_family_with_precision(specfun::Precision precision, double abs_tol,
                                                Fn&& fn) {
  using specfun::Precision;
  auto extended = [&] {
    const auto r = fn.template operator()<Extended>();
    FamilyEvaluation out{{}, true};
    out.values.reserve(r.size());
    for (const auto& t : r) {
      if (std::numeric_limits<Extended>::epsilon() * t.mass > Extended(abs_tol)) {
        throw NonConvergence("cancellation exceeds extended precision: term mass " +
                             std::to_string(to_double(t.mass)));
      }
      out.values.push_back(to_double(t.value));
    }
    return out;
  };
  if (precision == Precision::extended) return extended();
  try {
    const auto r = fn.template operator()<double>();
    bool accurate = true;
    for (const auto& t : r) {
      accurate = accurate && std::numeric_limits<double>::epsilon() * t.mass <= abs_tol;
    }
    if (precision == Precision::standard || accurate) {
      FamilyEvaluation out{{}, false};
      for (const auto& t : r) out.values.push_back(t.value);
      return out;
    }
    for (const auto& t : r) {
      if (hopeless_in_extended(t.mass, abs_tol)) {
        throw NonConvergence("cancellation exceeds extended precision: term mass " +
                             std::to_string(t.mass));
      }
    }
  } catch (const PrecisionOverflow&) {
    if (precision == Precision::standard) throw;
  }
  return extended();
}

}  // namespace gsfpp::detail
