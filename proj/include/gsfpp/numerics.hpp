#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace gsfpp::numerics {

using ComplexFn = std::function<std::complex<double>(std::complex<double>)>;

/// Taylor coefficients of a generating function, recovered by a discrete
/// Fourier transform on the circle |u| = radius.
struct CoefficientExtraction {
  std::vector<double> coefficients;  // index 0..k_max, real parts, unclipped
  /// [u^k_max] (1 - g(u)) / (1 - u) = 1 - sum of coefficients 0..k_max.
  double tail = 0;
  /// Largest |Im| over the recovered coefficients.
  double max_imag_residual = 0;
  double radius = 0;
  int nodes = 0;
};

/// Radius max(0.5, 10^(-3/k_max)) and max(4 k_max, 64) nodes: rounding is
/// amplified by at most radius^(-k_max) <= 1000, while aliasing from
/// coefficients beyond k_max is damped by radius^nodes <= 1e-12.
CoefficientExtraction extract_coefficients(const ComplexFn& g, int k_max);

}  // namespace gsfpp::numerics
