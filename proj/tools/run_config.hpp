#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsfpp/params.hpp"
#include "gsfpp/process.hpp"

namespace gsfpp::cli {

enum class Command { pmf, pgf, sample, levy_check, validate };
enum class OutputFormat { csv, json };

std::string to_string(Command c);
std::string to_string(OutputFormat f);
std::string to_string(PmfRoute r);
Command parse_command(const std::string& name);
OutputFormat parse_format(const std::string& name);
PmfRoute parse_route(const std::string& name);

/// Everything one invocation needs. Parameter objects are constructed, and
/// therefore validated, before a RunConfig exists.
struct RunConfig {
  Command command = Command::pmf;
  ProcessParams params{1.0, 1.0};
  std::optional<TimeFracParams> tf_params;
  std::vector<double> times{1.0};
  int k_max = 20;
  long long n_draws = 0;
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;
  PmfRoute route = PmfRoute::automatic;
  /// pgf arguments.
  std::vector<double> u{0.0};
  /// levy-check arguments.
  std::vector<double> mu{1.0};
  /// Inverse-clock grid step; 0 selects 1e-3 times the largest time.
  double grid_step = 0;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;
  /// validate: groups to run (empty = all) and defaults-table overrides "key=value".
  std::vector<std::string> only;
  std::vector<std::string> overrides;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws InvalidParam naming the first violated requirement.
void check(const RunConfig& config);

double effective_grid_step(const RunConfig& config);

nlohmann::ordered_json to_json(const RunConfig& config);
/// Inverse of to_json; validates the parameter objects and the config.
RunConfig from_json(const nlohmann::json& j);

}  // namespace gsfpp::cli
