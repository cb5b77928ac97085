#include "gsfpp/stats.hpp"

#include <cmath>

#include "gsfpp/errors.hpp"

namespace gsfpp::stats {

std::vector<double> empirical_pmf(const std::vector<std::int64_t>& values, int k_max) {
  std::vector<double> bins(k_max + 2, 0.0);
  for (std::int64_t v : values) {
    bins[v <= k_max ? static_cast<std::size_t>(v) : bins.size() - 1] += 1.0;
  }
  if (!values.empty()) {
    for (double& b : bins) b /= static_cast<double>(values.size());
  }
  return bins;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw InvalidParam("total_variation: bin counts differ");
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::fabs(p[i] - q[i]);
  return 0.5 * sum;
}

std::vector<double> with_tail_bin(std::vector<double> probs, double tail_mass) {
  probs.push_back(std::max(tail_mass, 0.0));
  return probs;
}

int mass_quantile(const std::vector<double>& probs, double level) {
  double cumulative = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    cumulative += probs[k];
    if (cumulative >= level) return static_cast<int>(k);
  }
  return -1;
}

MeanEstimate mean_with_error(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  if (xs.size() < 2) return {xs.empty() ? 0.0 : xs[0], INFINITY};
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1) / n)};
}

}  // namespace gsfpp::stats
