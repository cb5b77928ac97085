#pragma once

#include <cstdint>
#include <vector>

namespace gsfpp::stats {

/// Empirical frequencies of 0..k_max followed by one bin holding all values
/// above k_max.
std::vector<double> empirical_pmf(const std::vector<std::int64_t>& values, int k_max);

/// Half the L1 distance between two equally binned distributions.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Appends the mass beyond the last entry as a final bin.
std::vector<double> with_tail_bin(std::vector<double> probs, double tail_mass);

/// Smallest k whose cumulative mass reaches `level`, or -1 when the provided
/// probabilities never reach it.
int mass_quantile(const std::vector<double>& probs, double level);

struct MeanEstimate {
  double mean = 0;
  double std_error = 0;
};

MeanEstimate mean_with_error(const std::vector<double>& xs);

}  // namespace gsfpp::stats
