#include "arguments.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "gsfpp/errors.hpp"

namespace gsfpp::cli {
namespace {

struct RawFlags {
  double nu = 1, delta = 1, eta = 1, lambda = 1;
  bool tf = false;
  double alpha = 1, beta = 1, gamma = 0, omega = 1;
  std::vector<double> times{1.0};
  int k_max = 20;
  long long n_draws = 0;
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;
  std::string route = "auto";
  std::vector<double> u{0.0};
  std::vector<double> mu{1.0};
  double grid_step = 0;
  std::string format = "csv";
  std::string out;
  std::vector<std::string> only;
  std::vector<std::string> overrides;
  std::string config_file;
  bool print_config = false;
};

void add_flags(CLI::App& cmd, RawFlags& f) {
  cmd.add_option("--nu", f.nu, "stable index nu, 0 < nu*ceil(delta) <= 1")->capture_default_str();
  cmd.add_option("--delta", f.delta, "outer exponent delta > 0")->capture_default_str();
  cmd.add_option("--eta", f.eta, "tempering eta > 0")->capture_default_str();
  cmd.add_option("--lambda", f.lambda, "Poisson rate lambda > 0")->capture_default_str();
  cmd.add_flag("--tf", f.tf, "use the time-fractional process");
  cmd.add_option("--alpha", f.alpha, "clock order alpha in (0, 1]")->capture_default_str();
  cmd.add_option("--beta", f.beta, "clock order beta in (0, 1]")->capture_default_str();
  cmd.add_option("--gamma", f.gamma, "clock exponent gamma >= 0")->capture_default_str();
  cmd.add_option("--omega", f.omega, "clock weight omega > 0")->capture_default_str();
  cmd.add_option("--t", f.times, "time or non-decreasing time grid")->delimiter(',')->capture_default_str();
  cmd.add_option("--k-max", f.k_max, "largest state")->capture_default_str();
  cmd.add_option("--n-draws", f.n_draws, "number of sample paths")->capture_default_str();
  cmd.add_option("--seed", f.seed, "64-bit master seed");
  cmd.add_option("--tol", f.tol, "series / quadrature tolerance")->capture_default_str();
  cmd.add_option("--route", f.route, "pmf route: auto, series or oracle")->capture_default_str();
  cmd.add_option("--u", f.u, "pgf arguments")->delimiter(',')->capture_default_str();
  cmd.add_option("--mu", f.mu, "Laplace arguments for levy-check")->delimiter(',')->capture_default_str();
  cmd.add_option("--grid-step", f.grid_step, "inverse-clock grid step (0: 1e-3 * max t)")->capture_default_str();
  cmd.add_option("--format", f.format, "csv or json")->capture_default_str();
  cmd.add_option("--out", f.out, "output file (default: stdout)");
  cmd.add_option("--only", f.only, "validation groups to run")->delimiter(',');
  cmd.add_option("--set", f.overrides, "override a validation setting, key=value");
  cmd.add_option("--config", f.config_file, "read the run configuration from a JSON file");
  cmd.add_flag("--print-config", f.print_config, "print the resolved configuration and exit");
}

RunConfig build(const std::string& command, const RawFlags& f) {
  RunConfig c;
  c.command = parse_command(command);
  c.params = ProcessParams(f.nu, f.delta, f.eta, f.lambda);
  if (f.tf) c.tf_params = TimeFracParams(f.alpha, f.beta, f.gamma, f.omega);
  c.times = f.times;
  c.k_max = f.k_max;
  c.n_draws = f.n_draws;
  c.seed = f.seed;
  c.tol = f.tol;
  c.route = parse_route(f.route);
  c.u = f.u;
  c.mu = f.mu;
  c.grid_step = f.grid_step;
  c.format = parse_format(f.format);
  c.output_path = f.out;
  c.only = f.only;
  c.overrides = f.overrides;
  check(c);
  return c;
}

}  // namespace

ParseOutcome parse_arguments(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized space-time fractional counting processes"};
  app.require_subcommand(1);
  RawFlags flags;
  const char* commands[][2] = {{"pmf", "state probabilities"},
                               {"pgf", "probability generating function"},
                               {"sample", "simulate sample paths"},
                               {"levy-check", "Levy-Khintchine quadrature check"},
                               {"validate", "run the validation suite"}};
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return outcome;
  } catch (const CLI::ParseError& e) {
    err << "gsfpp: " << e.what() << '\n';
    outcome.exit_code = kExitInvalidConfig;
    return outcome;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  outcome.print_config = flags.print_config;
  try {
    if (!flags.config_file.empty()) {
      std::ifstream in(flags.config_file);
      if (!in) throw InvalidParam("cannot read config file '" + flags.config_file + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw InvalidParam(std::string("config file is not JSON: ") + e.what());
      }
      j["command"] = command;
      outcome.config = from_json(j);
    } else {
      outcome.config = build(command, flags);
    }
  } catch (const InvalidParam& e) {
    err << "gsfpp: invalid configuration: " << e.what() << '\n';
    outcome.exit_code = kExitInvalidConfig;
  }
  return outcome;
}

}  // namespace gsfpp::cli
