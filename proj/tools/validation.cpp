#include "validation.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "commands.hpp"
#include "gsfpp/errors.hpp"
#include "gsfpp/montecarlo.hpp"
#include "gsfpp/process.hpp"
#include "gsfpp/stats.hpp"
#include "gsfpp/subordinators.hpp"
#include "gsfpp/timefrac.hpp"

namespace gsfpp::validation {
namespace {

using Clock = std::chrono::steady_clock;

struct Entry {
  const char* key;
  double Settings::*field;
};

const Entry kEntries[] = {
    {"levy.tol", &Settings::levy_tol},
    {"levy.seconds", &Settings::levy_seconds},
    {"laplace.draws", &Settings::laplace_draws},
    {"laplace.se_multiple", &Settings::laplace_se_multiple},
    {"normalization.tol", &Settings::normalization_tol},
    {"normalization.k_max", &Settings::normalization_k_max},
    {"series.tol", &Settings::series_tol},
    {"series.k_max", &Settings::series_k_max},
    {"poisson.tol", &Settings::poisson_tol},
    {"poisson.k_max", &Settings::poisson_k_max},
    {"subordination.draws", &Settings::subordination_draws},
    {"subordination.tv", &Settings::subordination_tv},
    {"mass_level", &Settings::mass_level},
    {"mc.draws", &Settings::mc_draws},
    {"mc.tv", &Settings::mc_tv},
    {"prabhakar.tol", &Settings::prabhakar_tol},
    {"prabhakar.terms", &Settings::prabhakar_terms},
    {"prabhakar.quadrature_tol", &Settings::prabhakar_quadrature_tol},
    {"tf_laplace.tol", &Settings::tf_laplace_tol},
    {"tf_laplace.cutoff", &Settings::tf_laplace_cutoff},
    {"reduction.tol", &Settings::reduction_tol},
    {"reduction.ml_tol", &Settings::reduction_ml_tol},
    {"byproduct.draws", &Settings::byproduct_draws},
    {"byproduct.grid_fraction", &Settings::byproduct_grid_fraction},
    {"byproduct.se_multiple", &Settings::byproduct_se_multiple},
    {"determinism.draws", &Settings::determinism_draws},
};

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

class Collector {
 public:
  Collector(std::string group) : group_(std::move(group)) {}

  /// Records a check passing when achieved < limit.
  void below(std::string name, double achieved, double limit, const std::string& what = "error") {
    add(std::move(name), what + " < " + num(limit), achieved, limit, achieved < limit);
  }

  void add(std::string name, std::string target, double achieved, double limit, bool pass) {
    const auto now = Clock::now();
    results_.push_back({group_, std::move(name), std::move(target), achieved, limit, pass,
                        std::chrono::duration<double>(now - mark_).count()});
    mark_ = now;
  }

  /// Records a numerical failure as a failed check instead of aborting the group.
  template <class Fn>
  void guarded(const std::string& name, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(name, std::string("no exception (") + e.what() + ")", NAN, 0, false);
    }
  }

  void restart_clock() { mark_ = Clock::now(); }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string group_;
  std::vector<CheckResult> results_;
  Clock::time_point mark_ = Clock::now();
};

std::size_t count(double draws) { return static_cast<std::size_t>(std::llround(draws)); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  double m = 0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

/// Reference probabilities up to the mass_level point (capped at the window)
/// with the remainder as one tail bin.
std::vector<double> reference_with_tail(const std::vector<double>& probs, double level) {
  int k_cut = stats::mass_quantile(probs, level);
  if (k_cut < 0) k_cut = static_cast<int>(probs.size()) - 1;
  std::vector<double> kept(probs.begin(), probs.begin() + k_cut + 1);
  const double mass = std::accumulate(kept.begin(), kept.end(), 0.0);
  return stats::with_tail_bin(std::move(kept), 1.0 - mass);
}

std::vector<CheckResult> levy(const Settings& s) {
  Collector c("levy");
  for (double nu : {0.1, 0.2, 0.3}) {
    for (double delta : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
      for (double eta : {0.5, 2.0}) {
        for (double mu : {0.5, 2.0}) {
          const ProcessParams p(nu, delta, eta);
          const std::string name = p.describe() + " mu=" + num(mu);
          c.guarded(name, [&] {
            const auto start = Clock::now();
            const LaplaceProbe probe = levy_identity_check(p, mu, s.levy_tol);
            const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
            c.add(name, "error < " + num(s.levy_tol) + " within " + num(s.levy_seconds) + " s",
                  probe.error(), s.levy_tol, probe.error() < s.levy_tol && seconds < s.levy_seconds);
          });
        }
      }
    }
  }
  return c.take();
}

std::vector<CheckResult> laplace_mc(const Settings& s, std::uint64_t seed) {
  Collector c("laplace-mc");
  struct Sampler {
    std::string name;
    std::function<double(RandomStream&)> draw;
    std::function<double(double)> exponent;
  };
  const TemperedParams tempered(0.5, 1.0);
  const ProcessParams composite(0.25, 2.0, 1.0);
  const ProcessParams subordinated(0.3, 1.5, 1.0);
  const std::vector<Sampler> samplers = {
      {"stable alpha=0.5", [](RandomStream& r) { return stable_sample(0.5, 1.0, r); },
       [](double mu) { return stable_laplace_exponent(0.5, mu); }},
      {"tempered alpha=0.5 xi=1", [&](RandomStream& r) { return tempered_stable_sample(tempered, 1.0, r); },
       [&](double mu) { return tempered_laplace_exponent(tempered, mu); }},
      {"composite " + composite.describe(), [&](RandomStream& r) { return composite_sample(composite, 1.0, r); },
       [&](double mu) { return composite_laplace_exponent(composite, mu); }},
      {"subordinated " + subordinated.describe(),
       [&](RandomStream& r) { return subordinated_sample(subordinated, 1.0, r); },
       [&](double mu) { return laplace_exponent(subordinated, mu); }},
  };
  std::uint64_t stream = 0;
  for (const Sampler& sampler : samplers) {
    const auto draws = mc::generate<double>(derive_seed(seed, ++stream), count(s.laplace_draws), sampler.draw);
    for (double mu : {0.5, 1.0, 2.0}) {
      std::vector<double> transformed(draws.size());
      for (std::size_t i = 0; i < draws.size(); ++i) transformed[i] = std::exp(-mu * draws[i]);
      const auto est = stats::mean_with_error(transformed);
      const double z = std::fabs(est.mean - std::exp(-sampler.exponent(mu))) / est.std_error;
      c.add(sampler.name + " mu=" + num(mu), "|error| / SE < " + num(s.laplace_se_multiple), z,
            s.laplace_se_multiple, z < s.laplace_se_multiple);
    }
  }
  return c.take();
}

std::vector<CheckResult> normalization(const Settings& s) {
  Collector c("normalization");
  const int k_max = static_cast<int>(s.normalization_k_max);
  constexpr double kRoundingSlack = 1e-12;
  // Light tails: the window itself holds all but normalization_tol of the mass.
  for (double delta : {0.3, 0.7, 1.0}) {
    for (double lambda : {0.5, 2.0}) {
      for (double t : {0.5, 2.0}) {
        const ProcessParams p(1.0, delta, 1.0, lambda);
        c.guarded(p.describe(), [&] {
          const Pmf o = pmf_oracle(p, t, k_max);
          const double sum = o.partial_sum();
          c.add(p.describe() + " t=" + num(t) + " partial sum",
                "partial sum in [1 - " + num(s.normalization_tol) + ", 1]", 1.0 - sum, s.normalization_tol,
                sum >= 1.0 - s.normalization_tol && sum <= 1.0 + kRoundingSlack);
        });
      }
    }
  }
  // Heavy tails (nu < 1): the window cannot hold the mass, so the partial sum
  // plus the separately extracted tail must account for it.
  for (double nu : {0.1, 0.3, 0.5}) {
    for (double delta : {0.5, 1.0, 2.0}) {
      for (double eta : {0.5, 2.0}) {
        for (double t : {0.5, 2.0}) {
          if (nu * std::ceil(delta) > 1) continue;
          const ProcessParams p(nu, delta, eta);
          c.guarded(p.describe(), [&] {
            const Pmf o = pmf_oracle(p, t, k_max);
            const double gap = std::fabs(o.partial_sum() + o.est_tail - 1.0);
            c.add(p.describe() + " t=" + num(t) + " partial sum + tail",
                  "partial sum <= 1 and |partial + tail - 1| < " + num(s.normalization_tol), gap,
                  s.normalization_tol, gap < s.normalization_tol && o.partial_sum() <= 1.0 + kRoundingSlack);
          });
        }
      }
    }
  }
  return c.take();
}

std::vector<CheckResult> series(const Settings& s) {
  Collector c("series");
  const int k_max = static_cast<int>(s.series_k_max);
  int compared = 0;
  for (double nu : {0.3, 0.5, 0.9}) {
    for (double delta : {0.5, 1.0, 1.5}) {
      for (double eta : {0.5, 1.0}) {
        for (double t : {0.5, 1.0, 2.0}) {
          if (nu * std::ceil(delta) > 1) continue;
          const ProcessParams p(nu, delta, eta, 1.0);
          Pmf sp;
          try {
            sp = pmf_series(p, t, k_max);
          } catch (const NonConvergence&) {
            continue;  // the truncation rule did not report convergence
          }
          c.guarded(p.describe(), [&] {
            const Pmf o = pmf_oracle(p, t, k_max);
            c.below(p.describe() + " t=" + num(t), max_abs_diff(sp.probs, o.probs, k_max + 1), s.series_tol,
                    "max |series - oracle|");
            ++compared;
          });
        }
      }
    }
  }
  c.add("grid points where the series converged", "count >= 1", compared, 1, compared >= 1);
  auto results = c.take();
  results.back().ranked = false;
  return results;
}

std::vector<CheckResult> poisson(const Settings& s) {
  Collector c("poisson");
  const int k_max = static_cast<int>(s.poisson_k_max);
  for (double lambda : {0.5, 1.0, 3.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const ProcessParams p(1.0, 1.0, 1.0, lambda);
      c.guarded(p.describe(), [&] {
        const Pmf r = pmf(p, t, k_max);
        std::vector<double> expected(k_max + 1);
        expected[0] = std::exp(-lambda * t);
        for (int k = 1; k <= k_max; ++k) expected[k] = expected[k - 1] * lambda * t / k;
        c.below(p.describe() + " t=" + num(t), max_abs_diff(r.probs, expected, k_max + 1), s.poisson_tol,
                "max |p_k - Poisson|");
      });
    }
  }
  return c.take();
}

std::vector<CheckResult> subordination(const Settings& s, std::uint64_t seed) {
  Collector c("subordination");
  c.guarded("N^0.5(V^0.5_1) vs N^0.25(1)", [&] {
    const auto r = subordination_identity_check(0.5, 0.5, 1.0, 1.0, derive_seed(seed, 100),
                                                count(s.subordination_draws), s.subordination_tv);
    c.below("N^0.5(V^0.5_1) vs N^0.25(1), k <= " + std::to_string(r.k_max), r.total_variation,
            s.subordination_tv, "TV");
  });
  return c.take();
}

std::vector<CheckResult> monte_carlo(const Settings& s, std::uint64_t seed) {
  Collector c("mc");
  std::uint64_t stream = 200;
  for (const ProcessParams& p : {ProcessParams(0.9, 1.0, 1.0, 1.0), ProcessParams(1.0, 0.7, 1.0, 1.0)}) {
    c.guarded(p.describe(), [&] {
      const Pmf analytic = pmf(p, 1.0, 200);
      const auto reference = reference_with_tail(analytic.probs, s.mass_level);
      const int k_cut = static_cast<int>(reference.size()) - 2;
      const auto counts = mc::generate<std::int64_t>(derive_seed(seed, ++stream), count(s.mc_draws),
                                                     [&](RandomStream& r) { return sample(p, 1.0, r).value; });
      c.below(p.describe() + " t=1, k <= " + std::to_string(k_cut),
              stats::total_variation(stats::empirical_pmf(counts, k_cut), reference), s.mc_tv, "TV");
    });
  }
  return c.take();
}

const ProcessParams kTfSpace(0.5, 0.5, 1.0, 1.0);
const TimeFracParams kTfClock(0.4, 0.4, 0.5, 1.0);

/// Regularized Prabhakar derivative of t^(c-1) E^g_(alpha, c)(-omega t^alpha)
/// from the defining convolution, for c > 1.
double prabhakar_by_quadrature(const TimeFracParams& q, double c, double g, double t) {
  auto integrand = [&](double y, double t_minus_y) {
    if (y <= 0 || t_minus_y <= 0) return 0.0;
    const double kernel =
        std::pow(t_minus_y, -q.beta()) *
        specfun::ml3({q.alpha(), 1.0 - q.beta(), -q.gamma(), -q.omega() * std::pow(t_minus_y, q.alpha())});
    const double derivative =
        std::pow(y, c - 2.0) * specfun::ml3({q.alpha(), c - 1.0, g, -q.omega() * std::pow(y, q.alpha())});
    return kernel * derivative;
  };
  boost::math::quadrature::tanh_sinh<double> quad;
  return quad.integrate([&](double y, double complement) { return integrand(y, y > t / 2 ? complement : t - y); },
                        0.0, t, 1e-12);
}

std::vector<CheckResult> prabhakar(const Settings& s) {
  Collector c("prabhakar");
  const int terms = static_cast<int>(s.prabhakar_terms);
  for (double u : {0.0, 0.5, 0.9}) {
    const MLSeriesFunction g = pgf_tf_kernels(kTfSpace, kTfClock, u, terms);
    const MLSeriesFunction derivative = prabhakar_transform(g, kTfClock);
    const double bracket = space_exponent(kTfSpace, u);
    for (double t : {0.1, 0.5, 1.0}) {
      c.guarded("residual", [&] {
        const double residual = derivative(t) + bracket * g(t);
        c.below("Cauchy residual u=" + num(u) + " t=" + num(t), std::fabs(residual), s.prabhakar_tol,
                "|D G + bracket G|");
      });
    }
  }
  // The term-wise calculus against the defining integral.
  for (const auto& [power, upper] : {std::pair{2.0, 0.0}, std::pair{1.7, 0.8}, std::pair{2.4, 1.5}}) {
    const MLSeriesFunction f{kTfClock.alpha(), -kTfClock.omega(), {{1.0, power, upper}}};
    for (double t : {0.3, 1.0}) {
      c.guarded("quadrature", [&] {
        const double diff = std::fabs(prabhakar_apply(f, kTfClock, t) -
                                      prabhakar_by_quadrature(kTfClock, power, upper, t));
        c.below("kernel c=" + num(power) + " g=" + num(upper) + " t=" + num(t) + " vs quadrature", diff,
                s.prabhakar_quadrature_tol);
      });
    }
  }
  return c.take();
}

std::vector<CheckResult> tf_laplace(const Settings& s) {
  Collector c("tf-laplace");
  for (double u : {0.0, 0.5}) {
    for (double sv : {1.0, 2.0, 5.0}) {
      const std::string name = "u=" + num(u) + " s=" + num(sv);
      c.guarded(name, [&] {
        const double ratio = std::fabs(space_exponent(kTfSpace, u) / clock_laplace_exponent(kTfClock, sv));
        if (!(ratio < 1)) {
          c.add(name, "geometric expansion valid", ratio, 1, false);
          return;
        }
        // Integrate to where e^(-s t) / s falls below the cutoff; |G| <= 1 bounds the rest.
        const double horizon = std::log(1.0 / (s.tf_laplace_cutoff * sv)) / sv;
        boost::math::quadrature::tanh_sinh<double> quad;
        const double head = quad.integrate(
            [&](double t) { return std::exp(-sv * t) * pgf_tf(kTfSpace, kTfClock, u, t); }, 0.0, horizon, 1e-10);
        const double tail_bound = std::exp(-sv * horizon) / sv;
        const double diff = std::fabs(head - pgf_tf_laplace(kTfSpace, kTfClock, u, sv));
        c.add(name, "|quadrature - closed form| + tail bound < " + num(s.tf_laplace_tol), diff + tail_bound,
              s.tf_laplace_tol, diff + tail_bound < s.tf_laplace_tol);
      });
    }
  }
  return c.take();
}

std::vector<CheckResult> reduction(const Settings& s) {
  Collector c("reduction");
  const TimeFracParams classical(0.5, 1.0, 0.0, 1.0);
  for (const ProcessParams& p : {ProcessParams(0.9, 1.0), ProcessParams(0.5, 0.5, 2.0),
                                 ProcessParams(0.3, 1.5, 1.0), ProcessParams(0.45, 2.0, 0.5)}) {
    for (double t : {0.5, 1.0}) {
      c.guarded(p.describe(), [&] {
        const Pmf a = pmf_tf(p, classical, t, 10);
        const Pmf b = pmf(p, t, 10);
        c.below("gamma=0 beta=1 " + p.describe() + " t=" + num(t), max_abs_diff(a.probs, b.probs, 11),
                s.reduction_tol, "max |pmf_tf - pmf|");
      });
    }
  }
  for (double beta : {0.3, 0.6, 0.9}) {
    for (double lambda : {0.5, 2.0}) {
      const double t = 1.4;
      c.guarded("p_0", [&] {
        const Pmf r = pmf_tf(ProcessParams(1.0, 1.0, 1.0, lambda), TimeFracParams(0.5, beta, 0.0, 1.0), t, 0);
        const double expected = specfun::mittag_leffler(beta, -lambda * std::pow(t, beta));
        c.below("gamma=0 delta=1 nu=1 beta=" + num(beta) + " lambda=" + num(lambda) + " p_0",
                std::fabs(r.probs[0] - expected), s.reduction_ml_tol, "|p_0 - E_beta(-lambda t^beta)|");
      });
    }
  }
  for (double nu : {0.3, 0.8}) {
    c.guarded("space-fractional", [&] {
      const Pmf a = pmf_tf(ProcessParams(nu, 1.0, 1.0, 1.5), classical, 0.9, 15);
      const Pmf b = pmf_space_fractional(nu, 1.5, 0.9, 15);
      c.below("gamma=0 delta=1 beta=1 nu=" + num(nu), max_abs_diff(a.probs, b.probs, 16), s.reduction_tol,
              "max |pmf_tf - space-fractional|");
    });
  }
  return c.take();
}

std::vector<CheckResult> byproduct(const Settings& s, std::uint64_t seed) {
  Collector c("byproduct");
  const double t = 1.0;
  const ClockGrid grid{s.byproduct_grid_fraction * t};
  std::uint64_t stream = 300;
  for (double mu : {1.0, 2.0}) {
    c.guarded("mu=" + num(mu), [&] {
      const auto draws = mc::generate<double>(derive_seed(seed, ++stream), count(s.byproduct_draws),
                                              [&](RandomStream& r) {
                                                const double clock = inverse_clock_sample(kTfClock, t, grid, r);
                                                return std::exp(-mu * subordinated_sample(kTfSpace, clock, r));
                                              });
      const auto est = stats::mean_with_error(draws);
      const double z = std::fabs(est.mean - time_changed_laplace(kTfSpace, kTfClock, mu, t)) / est.std_error;
      c.add("E exp(-mu V(U_t)) mu=" + num(mu) + " grid=" + num(grid.step), "|error| / SE < " +
            num(s.byproduct_se_multiple), z, s.byproduct_se_multiple, z < s.byproduct_se_multiple);
    });
  }
  return c.take();
}

std::vector<CheckResult> determinism(const Settings& s, std::uint64_t seed) {
  Collector c("determinism");
  cli::RunConfig plain;
  plain.command = cli::Command::sample;
  plain.params = ProcessParams(0.4, 1.5, 1.0, 1.0);
  plain.times = {0.5, 1.0, 2.0};
  plain.n_draws = static_cast<long long>(count(s.determinism_draws));
  plain.seed = seed;
  cli::RunConfig tf = plain;
  tf.tf_params = kTfClock;
  tf.times = {1.0};
  tf.n_draws = std::max<long long>(1, plain.n_draws / 10);
  tf.grid_step = 1e-2;
  for (const auto& [name, config] : {std::pair{"generalized process", plain}, std::pair{"time-fractional", tf}}) {
    c.guarded(name, [&] {
      std::ostringstream first, second;
      cli::write_output(config, first);
      cli::write_output(config, second);
      const std::string a = first.str(), b = second.str();
      std::size_t differing = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
      for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) differing += a[i] != b[i];
      c.add(std::string(name) + " sample file, " + std::to_string(a.size()) + " bytes",
            "differing bytes == 0", static_cast<double>(differing), 0, differing == 0 && !a.empty());
    });
  }
  return c.take();
}

}  // namespace

void Settings::apply(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidParam("override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  for (const Entry& e : kEntries) {
    if (key != e.key) continue;
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(value) || !(value > 0)) {
      throw InvalidParam("override '" + assignment + "' needs a positive finite number");
    }
    this->*e.field = value;
    return;
  }
  throw InvalidParam("unknown settings key '" + key + "'");
}

nlohmann::ordered_json Settings::to_json() const {
  nlohmann::ordered_json j;
  for (const Entry& e : kEntries) j[e.key] = this->*e.field;
  return j;
}

std::vector<std::string> group_names() {
  return {"levy", "laplace-mc", "normalization", "series", "poisson", "subordination",
          "mc", "prabhakar", "tf-laplace", "reduction", "byproduct", "determinism"};
}

std::vector<CheckResult> run_group(const std::string& group, const Settings& s, std::uint64_t seed) {
  if (group == "levy") return levy(s);
  if (group == "laplace-mc") return laplace_mc(s, seed);
  if (group == "normalization") return normalization(s);
  if (group == "series") return series(s);
  if (group == "poisson") return poisson(s);
  if (group == "subordination") return subordination(s, seed);
  if (group == "mc") return monte_carlo(s, seed);
  if (group == "prabhakar") return prabhakar(s);
  if (group == "tf-laplace") return tf_laplace(s);
  if (group == "reduction") return reduction(s);
  if (group == "byproduct") return byproduct(s, seed);
  if (group == "determinism") return determinism(s, seed);
  throw InvalidParam("unknown validation group '" + group + "'");
}

std::vector<CheckResult> run(const std::vector<std::string>& groups, const Settings& s, std::uint64_t seed) {
  std::vector<CheckResult> all;
  for (const std::string& g : group_names()) {
    if (!groups.empty() && std::find(groups.begin(), groups.end(), g) == groups.end()) continue;
    auto part = run_group(g, s, seed);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return all;
}

nlohmann::ordered_json report(const std::vector<CheckResult>& results, const Settings& s, std::uint64_t seed) {
  nlohmann::ordered_json j;
  bool all_pass = true;
  j["seed"] = seed;
  j["settings"] = s.to_json();
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    nlohmann::ordered_json entry;
    entry["group"] = r.group;
    entry["name"] = r.name;
    entry["target"] = r.target;
    entry["achieved"] = std::isfinite(r.achieved) ? nlohmann::ordered_json(r.achieved) : nullptr;
    entry["limit"] = r.limit;
    entry["pass"] = r.pass;
    entry["seconds"] = r.seconds;
    j["checks"].push_back(std::move(entry));
  }
  j["pass"] = all_pass;
  return j;
}

}  // namespace gsfpp::validation
