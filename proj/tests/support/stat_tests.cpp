#include "support/stat_tests.hpp"

#include <algorithm>
#include <cmath>

namespace testing {
namespace {

// Asymptotic Kolmogorov survival function with Stephens' small-sample
// correction of the argument.
double kolmogorov_survival(double d, double n_eff) {
  const double root = std::sqrt(n_eff);
  const double lam = (root + 0.12 + 0.11 / root) * d;
  if (lam < 0.2) return 1.0;
  double sum = 0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lam * lam);
    sum += (j % 2 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  const double n_eff = na * nb / (na + nb);
  return {d, kolmogorov_survival(d, n_eff)};
}

}  // namespace testing
