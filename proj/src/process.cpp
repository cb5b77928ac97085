#include "gsfpp/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/pmf_common.hpp"
#include "detail/specfun_impl.hpp"
#include "gsfpp/errors.hpp"
#include "gsfpp/montecarlo.hpp"
#include "gsfpp/numerics.hpp"
#include "gsfpp/stats.hpp"
#include "gsfpp/subordinators.hpp"

namespace gsfpp {
namespace {

using detail::Tracked;
using namespace detail::pmf_common;

template <class Real>
std::vector<Tracked<Real>> space_fractional_terms(double alpha, double lambda, double t, int k_max,
                                                  const detail::TruncationRule& rule) {
  const Real x = -std::pow(lambda, alpha) * t;
  Real coef(1);
  std::vector<Real> binoms(k_max + 1);
  auto term = [&](int r, std::vector<Tracked<Real>>& out) {
    if (r > 0) coef *= x / Real(r);
    fill_binomials(Real(Real(alpha) * Real(r)), binoms);
    for (int k = 0; k <= k_max; ++k) {
      const Real v = coef * binoms[k];
      out[k] = {k % 2 ? Real(-v) : v, detail::real_abs(v)};
    }
  };
  return detail::sum_series_family<Real>(term, settle_indices(k_max, alpha), rule,
                                         "pmf_space_fractional");
}

template <class Real>
std::vector<Tracked<Real>> gsfpp_terms(const ProcessParams& p, double t, int k_max,
                                       const detail::TruncationRule& rule) {
  using std::exp;
  const double shift = t * std::pow(p.eta(), p.delta());
  const Real ratio = Real(std::pow(p.lambda(), p.nu())) / Real(p.eta());
  Real coef = exp(Real(shift));
  std::vector<Real> binoms(k_max + 1);
  // Inner sums are truncated at rounding level: the outer sum can amplify
  // their relative error by its cancellation factor.
  const detail::TruncationRule inner{detail::to_double(std::numeric_limits<Real>::epsilon()), 0,
                                     rule.max_terms};
  detail::WrightRows<Real> rows(p.delta(), -shift);
  auto term = [&](int m, std::vector<Tracked<Real>>& out) {
    if (m > 0) {
      coef *= ratio / Real(m);
      rows.advance();
    }
    const auto psi = rows.current(inner);
    const Real w = coef * psi.value;
    const Real w_mass = detail::real_abs(coef) * psi.mass;
    fill_binomials(Real(Real(p.nu()) * Real(m)), binoms);
    for (int k = 0; k <= k_max; ++k) {
      const Real v = w * binoms[k];
      out[k] = {k % 2 ? Real(-v) : v, w_mass * detail::real_abs(binoms[k])};
    }
  };
  return detail::sum_series_family<Real>(term, settle_indices(k_max, p.nu()), rule, "pmf_series");
}

}  // namespace

std::string to_string(PmfMethod method) {
  switch (method) {
    case PmfMethod::series: return "series";
    case PmfMethod::oracle: return "oracle";
    case PmfMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

double Pmf::partial_sum() const {
  detail::CompensatedSum<double> s;
  for (double p : probs) s.add(p);
  return s.value();
}

double pgf(const ProcessParams& params, double u, double t) {
  if (!(std::fabs(u) <= 1)) throw InvalidParam("pgf requires |u| <= 1");
  require_time(t);
  return std::exp(-t * laplace_exponent(params, params.lambda() * (1.0 - u)));
}

std::complex<double> pgf_complex(const ProcessParams& params, std::complex<double> u, double t) {
  const std::complex<double> base =
      params.eta() + std::pow(params.lambda(), params.nu()) * std::pow(1.0 - u, params.nu());
  return std::exp(-t * (std::pow(base, params.delta()) - std::pow(params.eta(), params.delta())));
}

Pmf pmf_series(const ProcessParams& params, double t, int k_max, const PmfOptions& options) {
  require_time(t);
  require_k_max(k_max);
  const auto rule = rule_from(options);
  if (t == 0) return point_mass(params, k_max, PmfMethod::series);
  if (!params.integer_delta() && std::pow(params.lambda(), params.nu()) >= params.eta()) {
    throw NonConvergence(
        "pmf_series: the expansion in powers of lambda^nu / eta diverges for non-integer "
        "delta unless lambda^nu < eta");
  }
  Pmf out;
  out.t = t;
  out.params = params;
  out.k_max = k_max;
  const auto eval = detail::evaluate_family_with_precision(
      options.precision, options.tol,
      [&]<class Real>() { return gsfpp_terms<Real>(params, t, k_max, rule); });
  return finish_series(std::move(out), eval, "pmf_series");
}

Pmf pmf_space_fractional(double alpha, double lambda, double t, int k_max, const PmfOptions& options) {
  if (!(alpha > 0 && alpha <= 1)) throw InvalidParam("space-fractional index must satisfy 0 < alpha <= 1");
  if (!(lambda > 0)) throw InvalidParam("lambda must satisfy lambda > 0");
  require_time(t);
  require_k_max(k_max);
  const auto rule = rule_from(options);
  const ProcessParams params(alpha, 1.0, 1.0, lambda);
  if (t == 0) return point_mass(params, k_max, PmfMethod::series);
  Pmf out;
  out.t = t;
  out.params = params;
  out.k_max = k_max;
  const auto eval = detail::evaluate_family_with_precision(
      options.precision, options.tol,
      [&]<class Real>() { return space_fractional_terms<Real>(alpha, lambda, t, k_max, rule); });
  return finish_series(std::move(out), eval, "pmf_space_fractional");
}

Pmf pmf_oracle(const ProcessParams& params, double t, int k_max) {
  require_time(t);
  require_k_max(k_max);
  if (t == 0) return point_mass(params, k_max, PmfMethod::oracle);
  const auto ex = numerics::extract_coefficients(
      [&](std::complex<double> u) { return pgf_complex(params, u, t); }, k_max);
  return from_extraction(params, t, k_max, ex, "pmf_oracle");
}

Pmf pmf(const ProcessParams& params, double t, int k_max, PmfRoute route, const PmfOptions& options) {
  switch (route) {
    case PmfRoute::series: return pmf_series(params, t, k_max, options);
    case PmfRoute::oracle: return pmf_oracle(params, t, k_max);
    case PmfRoute::automatic: break;
  }
  try {
    return pmf_series(params, t, k_max, options);
  } catch (const NonConvergence&) {
    return pmf_oracle(params, t, k_max);
  }
}

CountSample sample(const ProcessParams& params, double t, RandomStream& rng) {
  require_time(t);
  CountSample s;
  s.t = t;
  s.clock_value = subordinated_sample(params, t, rng);
  s.value = rng.poisson(params.lambda() * s.clock_value);
  return s;
}

std::vector<CountSample> sample_path(const ProcessParams& params, const std::vector<double>& times,
                                     RandomStream& rng) {
  std::vector<CountSample> path;
  path.reserve(times.size());
  CountSample current;
  double previous_time = 0;
  for (double t : times) {
    if (!(t >= previous_time)) throw InvalidParam("path times must be non-decreasing");
    const double clock_step = subordinated_sample(params, t - previous_time, rng);
    current.t = t;
    current.clock_value += clock_step;
    current.value += rng.poisson(params.lambda() * clock_step);
    path.push_back(current);
    previous_time = t;
  }
  return path;
}

IdentityReport subordination_identity_check(double alpha, double gamma_exp, double lambda, double t,
                                            std::uint64_t seed, std::size_t n_draws,
                                            double threshold) {
  if (!(alpha > 0 && alpha <= 1 && gamma_exp > 0 && gamma_exp <= 1)) {
    throw InvalidParam("subordination check requires 0 < alpha <= 1 and 0 < gamma <= 1");
  }
  const Pmf analytic = pmf_space_fractional(alpha * gamma_exp, lambda, t, 200);
  int k_cut = stats::mass_quantile(analytic.probs, 0.999);
  if (k_cut < 0) k_cut = 200;
  std::vector<double> reference(analytic.probs.begin(), analytic.probs.begin() + k_cut + 1);
  const double kept = std::accumulate(reference.begin(), reference.end(), 0.0);
  reference = stats::with_tail_bin(std::move(reference), 1.0 - kept);

  const auto counts = mc::generate<std::int64_t>(seed, n_draws, [&](RandomStream& rng) {
    const double clock = stable_or_drift_sample(gamma_exp, t, rng);
    const double inner = stable_or_drift_sample(alpha, clock, rng);
    return rng.poisson(lambda * inner);
  });
  IdentityReport report;
  report.total_variation = stats::total_variation(stats::empirical_pmf(counts, k_cut), reference);
  report.threshold = threshold;
  report.k_max = k_cut;
  report.draws = n_draws;
  report.pass = report.total_variation < threshold;
  return report;
}

Moments moments(const ProcessParams& params, double t) {
  require_time(t);
  if (params.nu() < 1.0) return {};
  // nu = 1 forces delta <= 1, and G is analytic around u = 1.
  const double eta = params.eta();
  const double lambda = params.lambda();
  const double delta = params.delta();
  auto g = [&](double u) {
    return std::exp(-t * (std::pow(eta + lambda * (1.0 - u), delta) - std::pow(eta, delta)));
  };
  constexpr int kLevels = 5;
  const double h0 = 0.2 * std::min(1.0, eta / lambda);
  double first[kLevels][kLevels];
  double second[kLevels][kLevels];
  for (int i = 0; i < kLevels; ++i) {
    const double h = h0 / std::pow(2.0, i);
    const double up = g(1.0 + h);
    const double down = g(1.0 - h);
    first[i][0] = (up - down) / (2 * h);
    second[i][0] = (up - 2.0 * g(1.0) + down) / (h * h);
    for (int j = 1; j <= i; ++j) {
      const double f = std::pow(4.0, j);
      first[i][j] = (f * first[i][j - 1] - first[i - 1][j - 1]) / (f - 1);
      second[i][j] = (f * second[i][j - 1] - second[i - 1][j - 1]) / (f - 1);
    }
  }
  const double d1 = first[kLevels - 1][kLevels - 1];
  const double d2 = second[kLevels - 1][kLevels - 1];
  return {d1, d2 + d1 - d1 * d1};
}

}  // namespace gsfpp
