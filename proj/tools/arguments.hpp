#pragma once

#include <iosfwd>
#include <optional>

#include "run_config.hpp"

namespace gsfpp::cli {

struct ParseOutcome {
  /// Empty when parsing ended the run (help, or an error already reported).
  std::optional<RunConfig> config;
  int exit_code = 0;
  /// --print-config: echo the resolved config as JSON instead of running it.
  bool print_config = false;
};

/// Parses `gsfpp <command> [flags]`. Errors are reported on `err` and mapped
/// to the invalid-config exit code; help text goes to `out`.
ParseOutcome parse_arguments(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gsfpp::cli
