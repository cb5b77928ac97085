#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace gsfpp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitValidationFailure = 4;

inline constexpr const char* kVersion = "1.0.0";

/// Writes the result of a pmf, pgf, sample or levy-check config. CSV output
/// starts with a '#'-prefixed JSON metadata line.
void write_output(const RunConfig& config, std::ostream& out);

/// Runs the validation groups of a validate config, writes the JSON report to
/// `out` and a one-line-per-check table to `table`. Returns true when every
/// check passed.
bool write_validation(const RunConfig& config, std::ostream& out, std::ostream& table);

/// Dispatches a checked config, mapping failures to exit codes. Output goes to
/// config.output_path or, when empty, to `out`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gsfpp::cli
