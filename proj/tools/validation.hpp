#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gsfpp::validation {

/// The defaults table for every tolerance, draw count and grid used by the
/// checks. Entries can be overridden by name ("key=value").
struct Settings {
  double levy_tol = 1e-6;
  double levy_seconds = 1.0;
  double laplace_draws = 1e5;
  double laplace_se_multiple = 3.0;
  double normalization_tol = 1e-6;
  double normalization_k_max = 200;
  double series_tol = 1e-8;
  double series_k_max = 20;
  double poisson_tol = 1e-12;
  double poisson_k_max = 20;
  double subordination_draws = 1e6;
  double subordination_tv = 0.01;
  double mass_level = 0.999;
  double mc_draws = 1e6;
  double mc_tv = 0.01;
  double prabhakar_tol = 1e-6;
  double prabhakar_terms = 80;
  double prabhakar_quadrature_tol = 1e-8;
  double tf_laplace_tol = 1e-5;
  double tf_laplace_cutoff = 1e-8;
  double reduction_tol = 1e-8;
  double reduction_ml_tol = 1e-10;
  double byproduct_draws = 1e5;
  double byproduct_grid_fraction = 1e-3;
  double byproduct_se_multiple = 3.0;
  double determinism_draws = 2000;

  /// Applies "key=value"; throws InvalidParam for unknown keys or bad values.
  void apply(const std::string& assignment);
  nlohmann::ordered_json to_json() const;
};

struct CheckResult {
  std::string group;
  std::string name;
  /// Human-readable acceptance condition, e.g. "error < 1e-06".
  std::string target;
  double achieved = 0;
  double limit = 0;
  bool pass = false;
  double seconds = 0;
  /// False for bookkeeping checks that have no error to rank.
  bool ranked = true;
};

/// Group names in criterion order: levy, laplace-mc, normalization, series,
/// poisson, subordination, mc, prabhakar, tf-laplace, reduction, byproduct,
/// determinism.
std::vector<std::string> group_names();

std::vector<CheckResult> run_group(const std::string& group, const Settings& settings,
                                   std::uint64_t seed);

/// Runs the listed groups (all when empty) in criterion order.
std::vector<CheckResult> run(const std::vector<std::string>& groups, const Settings& settings,
                             std::uint64_t seed);

nlohmann::ordered_json report(const std::vector<CheckResult>& results, const Settings& settings,
                              std::uint64_t seed);

}  // namespace gsfpp::validation
