#pragma once

#include <cstddef>
#include <vector>

namespace testing {

/// Two-sample Kolmogorov-Smirnov statistic and its asymptotic p-value. For
/// discrete samples the p-value is conservative.
struct KsResult {
  double statistic;
  double p_value;
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace testing
