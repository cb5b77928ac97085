#pragma once

namespace gsfpp::specfun {

/// Working precision of a series evaluation. `automatic` evaluates in double
/// and repeats the evaluation in software quad precision (113-bit mantissa)
/// when the estimated rounding error exceeds the tolerance or an
/// intermediate leaves the double range.
enum class Precision { standard, extended, automatic };

/// Truncation contract shared by every series in the library: summation stops
/// at the first term with |term| < tol * |partial sum| whose three most recent
/// nonzero predecessors have non-increasing magnitude. Exceeding max_terms
/// raises NonConvergence.
struct SeriesOptions {
  double tol = 1e-13;
  Precision precision = Precision::automatic;
  int max_terms = 10000;
};

/// Diagnostics of one series evaluation.
struct SeriesEvaluation {
  double value = 0;
  /// Sum of |term| over the evaluated terms, including the magnitude of inner
  /// series; rounding error is about epsilon * abs_mass.
  double abs_mass = 0;
  bool extended = false;
};

/// Arguments of the three-parameter Mittag-Leffler function
/// E^{upper}_{order, offset}(x) = sum_r x^r (upper)_r / (r! Gamma(order r + offset)).
struct MLArgs {
  double order;
  double offset;
  double upper;
  double x;
};

/// Arguments of the Wright function
/// 1psi1[(num_shift, num_scale); (den_shift, den_scale) | z]
///   = sum_r Gamma(num_shift + num_scale r) / Gamma(den_shift + den_scale r) z^r / r!.
struct WrightArgs {
  double num_shift;
  double num_scale;
  double den_shift;
  double den_scale;
  double z;
};

/// 1 / Gamma(x); exactly zero at the poles x = 0, -1, -2, ...
double recip_gamma(double x);

/// Generalized binomial coefficient Gamma(a + 1) / (k! Gamma(a - k + 1)).
double gen_binom(double a, long k);

/// True when x lies within a few ulps of 0, -1, -2, ...
bool is_nonpositive_integer(double x);

double ml3(const MLArgs& args, const SeriesOptions& options = {});
SeriesEvaluation ml3_detailed(const MLArgs& args, const SeriesOptions& options = {});

/// One-parameter Mittag-Leffler function E_order(x).
double mittag_leffler(double order, double x, const SeriesOptions& options = {});

double wright_psi11(const WrightArgs& args, const SeriesOptions& options = {});
SeriesEvaluation wright_psi11_detailed(const WrightArgs& args, const SeriesOptions& options = {});

}  // namespace gsfpp::specfun
