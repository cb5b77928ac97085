#include "commands.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <variant>

#include "gsfpp/errors.hpp"
#include "gsfpp/montecarlo.hpp"
#include "gsfpp/subordinators.hpp"
#include "gsfpp/timefrac.hpp"
#include "validation.hpp"

namespace gsfpp::cli {
namespace {

using Cell = std::variant<double, long long, std::string>;

std::string format_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const long long* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

/// Collects rows and writes them as CSV or JSON with the shared metadata.
class Table {
 public:
  Table(const RunConfig& config, std::vector<std::string> columns)
      : config_(config), columns_(std::move(columns)) {}

  void row(std::vector<Cell> cells) { rows_.push_back(std::move(cells)); }

  void write(std::ostream& out) const {
    nlohmann::ordered_json meta;
    meta["tool"] = "gsfpp";
    meta["version"] = kVersion;
    meta["config"] = to_json(config_);
    meta["columns"] = columns_;
    if (config_.format == OutputFormat::csv) {
      out << "# " << meta.dump() << '\n';
      for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
      out << '\n';
      for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_cell(r[i]);
        out << '\n';
      }
      return;
    }
    nlohmann::ordered_json j;
    j["meta"] = meta;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
      nlohmann::ordered_json entry;
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::visit([&](const auto& v) { entry[columns_[i]] = v; }, r[i]);
      }
      j["rows"].push_back(std::move(entry));
    }
    out << j.dump(2) << '\n';
  }

 private:
  const RunConfig& config_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

void pmf_rows(const RunConfig& c, Table& table) {
  for (double t : c.times) {
    PmfOptions opts;
    opts.tol = c.tol;
    const Pmf r = c.tf_params ? pmf_tf(c.params, *c.tf_params, t, c.k_max, c.route, opts)
                              : pmf(c.params, t, c.k_max, c.route, opts);
    for (int k = 0; k <= c.k_max; ++k) {
      table.row({t, static_cast<long long>(k), r.probs[k], to_string(r.method), r.est_tail});
    }
  }
}

void pgf_rows(const RunConfig& c, Table& table) {
  for (double t : c.times) {
    for (double u : c.u) {
      const double g = c.tf_params ? pgf_tf(c.params, *c.tf_params, u, t, c.tol) : pgf(c.params, u, t);
      table.row({t, u, g});
    }
  }
}

void sample_rows(const RunConfig& c, Table& table) {
  const ClockGrid grid{effective_grid_step(c)};
  const auto paths = mc::generate<std::vector<CountSample>>(
      *c.seed, static_cast<std::size_t>(c.n_draws), [&](RandomStream& rng) {
        if (c.tf_params) return sample_tf_path(c.params, *c.tf_params, c.times, grid, rng);
        return sample_path(c.params, c.times, rng);
      });
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (const CountSample& s : paths[i]) {
      table.row({static_cast<long long>(i), s.t, static_cast<long long>(s.value), s.clock_value});
    }
  }
}

void levy_rows(const RunConfig& c, Table& table) {
  for (double mu : c.mu) {
    const LaplaceProbe probe = levy_identity_check(c.params, mu, c.tol);
    table.row({mu, probe.closed_form, probe.estimate, probe.error(), probe.error_bound});
  }
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidParam& e) {
    err << "gsfpp: invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const NumericalError& e) {
    err << "gsfpp: numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace

void write_output(const RunConfig& c, std::ostream& out) {
  check(c);
  switch (c.command) {
    case Command::pmf: {
      Table t(c, {"t", "k", "p_k", "method", "tail_estimate"});
      pmf_rows(c, t);
      t.write(out);
      return;
    }
    case Command::pgf: {
      Table t(c, {"t", "u", "G"});
      pgf_rows(c, t);
      t.write(out);
      return;
    }
    case Command::sample: {
      Table t(c, {"draw_index", "t", "value", "clock_value"});
      sample_rows(c, t);
      t.write(out);
      return;
    }
    case Command::levy_check: {
      Table t(c, {"mu", "closed_form", "quadrature", "error", "error_bound"});
      levy_rows(c, t);
      t.write(out);
      return;
    }
    case Command::validate:
      throw InvalidParam("validate writes a report; use write_validation");
  }
}

bool write_validation(const RunConfig& c, std::ostream& out, std::ostream& table) {
  check(c);
  validation::Settings settings;
  for (const auto& o : c.overrides) settings.apply(o);
  const auto results = validation::run(c.only, settings, *c.seed);
  for (const auto& r : results) {
    table << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(14) << r.group << ' ' << r.name
          << "  [" << r.target << "; achieved " << r.achieved << "]\n";
  }
  auto report = validation::report(results, settings, *c.seed);
  report["config"] = to_json(c);
  out << report.dump(2) << '\n';
  return report["pass"].get<bool>();
}

int execute(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check(c);
    std::ofstream file;
    if (!c.output_path.empty()) {
      file.open(c.output_path, std::ios::binary);
      if (!file) throw InvalidParam("cannot open output file '" + c.output_path + "'");
    }
    std::ostream& sink = c.output_path.empty() ? out : file;
    if (c.command == Command::validate) {
      return write_validation(c, sink, err) ? kExitOk : kExitValidationFailure;
    }
    write_output(c, sink);
    return kExitOk;
  });
}

}  // namespace gsfpp::cli
