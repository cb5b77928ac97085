#include <iostream>

#include "arguments.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace gsfpp::cli;
  const ParseOutcome parsed = parse_arguments(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  if (parsed.print_config) {
    std::cout << to_json(*parsed.config).dump(2) << '\n';
    return kExitOk;
  }
  return execute(*parsed.config, std::cout, std::cerr);
}
