#include "gsfpp/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "gsfpp/errors.hpp"

namespace gsfpp::numerics {

CoefficientExtraction extract_coefficients(const ComplexFn& g, int k_max) {
  if (k_max < 0) throw InvalidParam("k_max must satisfy k_max >= 0");
  CoefficientExtraction out;
  out.radius = k_max == 0 ? 0.5 : std::max(0.5, std::pow(10.0, -3.0 / k_max));
  out.nodes = std::max(4 * k_max, 64);
  const int m = out.nodes;

  std::vector<std::complex<double>> roots(m);
  for (int j = 0; j < m; ++j) roots[j] = std::polar(1.0, 2.0 * M_PI * j / m);

  std::vector<std::complex<double>> values(m);
  std::vector<std::complex<double>> tail_values(m);
  for (int j = 0; j < m; ++j) {
    const std::complex<double> u = out.radius * roots[j];
    values[j] = g(u);
    tail_values[j] = (1.0 - values[j]) / (1.0 - u);
  }

  auto coefficient = [&](const std::vector<std::complex<double>>& f, int k) {
    std::complex<double> acc = 0;
    for (int j = 0; j < m; ++j) {
      // e^{-i k theta_j} = conj(roots[j k mod m])
      acc += f[j] * std::conj(roots[(static_cast<long>(j) * k) % m]);
    }
    return acc / static_cast<double>(m) * std::pow(out.radius, -k);
  };

  out.coefficients.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    const std::complex<double> c = coefficient(values, k);
    out.coefficients[k] = c.real();
    out.max_imag_residual = std::max(out.max_imag_residual, std::fabs(c.imag()));
  }
  const std::complex<double> tail = coefficient(tail_values, k_max);
  out.tail = tail.real();
  out.max_imag_residual = std::max(out.max_imag_residual, std::fabs(tail.imag()));
  return out;
}

}  // namespace gsfpp::numerics
