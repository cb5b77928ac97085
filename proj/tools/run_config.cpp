#include "run_config.hpp"

#include <algorithm>
#include <cmath>

#include "gsfpp/errors.hpp"
#include "validation.hpp"

namespace gsfpp::cli {
namespace {

template <class Enum, std::size_t N>
Enum lookup(const std::pair<const char*, Enum> (&table)[N], const std::string& name,
            const char* what) {
  for (const auto& [key, value] : table) {
    if (name == key) return value;
  }
  std::string choices;
  for (const auto& entry : table) choices += std::string(choices.empty() ? "" : ", ") + entry.first;
  throw InvalidParam(std::string("unknown ") + what + " '" + name + "' (expected one of " + choices + ")");
}

template <class Enum, std::size_t N>
std::string name_of(const std::pair<const char*, Enum> (&table)[N], Enum value) {
  for (const auto& [key, v] : table) {
    if (v == value) return key;
  }
  return "?";
}

const std::pair<const char*, Command> kCommands[] = {{"pmf", Command::pmf},
                                                     {"pgf", Command::pgf},
                                                     {"sample", Command::sample},
                                                     {"levy-check", Command::levy_check},
                                                     {"validate", Command::validate}};
const std::pair<const char*, OutputFormat> kFormats[] = {{"csv", OutputFormat::csv},
                                                         {"json", OutputFormat::json}};
const std::pair<const char*, PmfRoute> kRoutes[] = {
    {"auto", PmfRoute::automatic}, {"series", PmfRoute::series}, {"oracle", PmfRoute::oracle}};

}  // namespace

std::string to_string(Command c) { return name_of(kCommands, c); }
std::string to_string(OutputFormat f) { return name_of(kFormats, f); }
std::string to_string(PmfRoute r) { return name_of(kRoutes, r); }
Command parse_command(const std::string& name) { return lookup(kCommands, name, "command"); }
OutputFormat parse_format(const std::string& name) { return lookup(kFormats, name, "format"); }
PmfRoute parse_route(const std::string& name) { return lookup(kRoutes, name, "route"); }

void check(const RunConfig& c) {
  if (c.times.empty()) throw InvalidParam("at least one time t is required");
  for (double t : c.times) {
    if (!(t >= 0) || !std::isfinite(t)) throw InvalidParam("t >= 0 violated");
  }
  if (!std::is_sorted(c.times.begin(), c.times.end())) {
    throw InvalidParam("times must be non-decreasing");
  }
  if (c.k_max < 0) throw InvalidParam("k_max >= 0 violated");
  if (c.n_draws < 0) throw InvalidParam("n_draws >= 0 violated");
  if (!(c.tol > 0)) throw InvalidParam("tol > 0 violated");
  if (!(c.grid_step >= 0)) throw InvalidParam("grid_step >= 0 violated");
  for (double u : c.u) {
    if (!(std::fabs(u) <= 1)) throw InvalidParam("|u| <= 1 violated");
  }
  for (double mu : c.mu) {
    if (!(mu > 0)) throw InvalidParam("mu > 0 violated");
  }
  if ((c.command == Command::sample || c.command == Command::validate) && !c.seed) {
    throw InvalidParam("--seed is required for " + to_string(c.command));
  }
  const auto groups = validation::group_names();
  for (const auto& g : c.only) {
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) {
      throw InvalidParam("unknown validation group '" + g + "'");
    }
  }
  validation::Settings probe;
  for (const auto& o : c.overrides) probe.apply(o);
}

double effective_grid_step(const RunConfig& c) {
  if (c.grid_step > 0) return c.grid_step;
  const double t_max = c.times.empty() ? 1.0 : c.times.back();
  return 1e-3 * (t_max > 0 ? t_max : 1.0);
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = to_string(c.command);
  j["params"] = {{"nu", c.params.nu()},
                 {"delta", c.params.delta()},
                 {"eta", c.params.eta()},
                 {"lambda", c.params.lambda()}};
  if (c.tf_params) {
    j["tf_params"] = {{"alpha", c.tf_params->alpha()},
                      {"beta", c.tf_params->beta()},
                      {"gamma", c.tf_params->gamma()},
                      {"omega", c.tf_params->omega()}};
  } else {
    j["tf_params"] = nullptr;
  }
  j["t"] = c.times;
  j["k_max"] = c.k_max;
  j["n_draws"] = c.n_draws;
  if (c.seed) {
    j["seed"] = *c.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["tol"] = c.tol;
  j["route"] = to_string(c.route);
  j["u"] = c.u;
  j["mu"] = c.mu;
  j["grid_step"] = c.grid_step;
  j["format"] = to_string(c.format);
  j["out"] = c.output_path;
  j["only"] = c.only;
  j["set"] = c.overrides;
  return j;
}

RunConfig from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = parse_command(j.at("command").get<std::string>());
    const auto& p = j.at("params");
    c.params = ProcessParams(p.at("nu").get<double>(), p.at("delta").get<double>(),
                             p.at("eta").get<double>(), p.at("lambda").get<double>());
    if (j.contains("tf_params") && !j["tf_params"].is_null()) {
      const auto& q = j["tf_params"];
      c.tf_params = TimeFracParams(q.at("alpha").get<double>(), q.at("beta").get<double>(),
                                   q.at("gamma").get<double>(), q.at("omega").get<double>());
    }
    c.times = j.at("t").get<std::vector<double>>();
    c.k_max = j.at("k_max").get<int>();
    c.n_draws = j.at("n_draws").get<long long>();
    if (!j.at("seed").is_null()) c.seed = j["seed"].get<std::uint64_t>();
    c.tol = j.at("tol").get<double>();
    c.route = parse_route(j.at("route").get<std::string>());
    c.u = j.at("u").get<std::vector<double>>();
    c.mu = j.at("mu").get<std::vector<double>>();
    c.grid_step = j.at("grid_step").get<double>();
    c.format = parse_format(j.at("format").get<std::string>());
    c.output_path = j.at("out").get<std::string>();
    c.only = j.at("only").get<std::vector<std::string>>();
    c.overrides = j.at("set").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParam(std::string("malformed config: ") + e.what());
  }
  check(c);
  return c;
}

}  // namespace gsfpp::cli
