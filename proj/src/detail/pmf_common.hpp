#pragma once

// Helpers shared by the series and oracle routes of every pmf.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "detail/series.hpp"
#include "gsfpp/errors.hpp"
#include "gsfpp/numerics.hpp"
#include "gsfpp/process.hpp"

namespace gsfpp::detail::pmf_common {

/// Values below this are rounding noise and are clipped to zero; anything
/// more negative means the evaluation failed.
constexpr double kNegativeSlack = 1e-9;
constexpr double kOracleResidualLimit = 1e-10;

inline void require_time(double t) {
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidParam("time must satisfy 0 <= t < inf");
}

inline void require_k_max(int k_max) {
  if (k_max < 0) throw InvalidParam("k_max must satisfy k_max >= 0");
}

/// Index from which binom(order * m, k) has a positive reciprocal-gamma
/// argument order * m - k + 1, i.e. from which the terms stop oscillating.
inline std::vector<int> settle_indices(int k_max, double order) {
  std::vector<int> first(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    first[k] = k == 0 ? 0 : static_cast<int>(std::ceil((k - 1) / order)) + 1;
  }
  return first;
}

template <class Real>
void fill_binomials(const Real& a, std::vector<Real>& out) {
  out[0] = Real(1);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    out[k + 1] = out[k] * (a - Real(static_cast<double>(k))) / Real(static_cast<double>(k + 1));
  }
}

inline std::vector<double> clip_probabilities(std::vector<double> values, const char* what) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] < -kNegativeSlack || !std::isfinite(values[k])) {
      throw NonConvergence(std::string(what) + ": p_" + std::to_string(k) + " = " +
                           std::to_string(values[k]) + " is not a probability");
    }
    values[k] = std::max(values[k], 0.0);
  }
  return values;
}

inline Pmf point_mass(const ProcessParams& params, int k_max, PmfMethod method) {
  Pmf out;
  out.params = params;
  out.k_max = k_max;
  out.probs.assign(k_max + 1, 0.0);
  out.probs[0] = 1.0;
  out.method = method;
  return out;
}

inline Pmf finish_series(Pmf out, const FamilyEvaluation& eval, const char* what) {
  out.probs = clip_probabilities(eval.values, what);
  out.est_tail = std::max(0.0, 1.0 - out.partial_sum());
  out.extended_precision = eval.extended;
  out.method = PmfMethod::series;
  return out;
}

inline TruncationRule rule_from(const PmfOptions& o) {
  if (!(o.tol > 0)) throw InvalidParam("series tolerance must satisfy tol > 0");
  constexpr double kRoundingMargin = 1e3;
  TruncationRule rule{o.tol, 0, o.max_terms};
  if (o.precision != specfun::Precision::standard) rule.max_rounding = kRoundingMargin * o.tol;
  return rule;
}

/// Validates and clips Fourier-inverted coefficients into an oracle Pmf.
inline Pmf from_extraction(const ProcessParams& params, double t, int k_max,
                           const numerics::CoefficientExtraction& ex, const char* what) {
  if (ex.max_imag_residual > kOracleResidualLimit) {
    throw OracleInstability(std::string(what) + ": residual imaginary part " +
                            std::to_string(ex.max_imag_residual) + " exceeds 1e-10");
  }
  Pmf out;
  out.t = t;
  out.params = params;
  out.k_max = k_max;
  out.method = PmfMethod::oracle;
  out.probs = ex.coefficients;
  for (std::size_t k = 0; k < out.probs.size(); ++k) {
    if (out.probs[k] < -kOracleResidualLimit || !std::isfinite(out.probs[k])) {
      throw OracleInstability(std::string(what) + ": p_" + std::to_string(k) + " = " +
                              std::to_string(out.probs[k]) + " is negative beyond rounding");
    }
    out.probs[k] = std::max(out.probs[k], 0.0);
  }
  out.est_tail = std::max(ex.tail, 0.0);
  return out;
}

}  // namespace gsfpp::detail::pmf_common
