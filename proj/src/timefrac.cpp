#include "gsfpp/timefrac.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "detail/pmf_common.hpp"
#include "detail/specfun_impl.hpp"
#include "gsfpp/errors.hpp"
#include "gsfpp/numerics.hpp"
#include "gsfpp/subordinators.hpp"

namespace gsfpp {
namespace {

using detail::Tracked;
using namespace detail::pmf_common;

/// Coefficient c_n = (-t^beta)^n E^(gamma n)_(alpha, beta n + 1)(-omega t^alpha)
/// of the inverse-clock series, with its absolute mass.
template <class Real>
class ClockCoefficients {
 public:
  ClockCoefficients(const TimeFracParams& q, double t)
      : q_(q), t_pow_(-std::pow(t, q.beta())), ml_arg_(-q.omega() * std::pow(t, q.alpha())) {}

  const Tracked<Real>& operator()(int n) {
    const detail::TruncationRule inner{detail::to_double(std::numeric_limits<Real>::epsilon()), 0,
                                       10000};
    while (static_cast<int>(cache_.size()) <= n) {
      const int j = static_cast<int>(cache_.size());
      if (j > 0) power_ *= t_pow_;
      const auto ml = detail::ml3_t<Real>(Real(q_.alpha()), Real(q_.beta()) * Real(j) + Real(1),
                                          Real(q_.gamma()) * Real(j), Real(ml_arg_), inner);
      cache_.push_back({power_ * ml.value, detail::real_abs(power_) * ml.mass});
    }
    return cache_[n];
  }

 private:
  TimeFracParams q_;
  Real t_pow_;
  double ml_arg_;
  Real power_{1};
  std::vector<Tracked<Real>> cache_;
};

template <class Real>
Tracked<Real> inverse_clock_laplace_t(const TimeFracParams& q, double x, double t,
                                      const detail::TruncationRule& rule) {
  ClockCoefficients<Real> coeffs(q, t);
  Real x_power(1);
  auto term = [&](int n) -> Tracked<Real> {
    if (n > 0) x_power *= Real(x);
    const auto& c = coeffs(n);
    return {x_power * c.value, detail::real_abs(x_power) * c.mass};
  };
  return detail::sum_series<Real>(term, rule, "inverse_clock_laplace");
}

template <class Real>
std::vector<Tracked<Real>> tf_terms(const ProcessParams& p, const TimeFracParams& q, double t,
                                    int k_max, const detail::TruncationRule& rule) {
  using std::pow;
  const double delta = p.delta();
  const Real eta(p.eta());
  const Real eta_delta = pow(eta, Real(delta));
  const Real lambda_nu = pow(Real(p.lambda()), Real(p.nu()));
  ClockCoefficients<Real> coeffs(q, t);

  std::vector<Real> row_binoms;    // binom(r delta, m) for r = 0..m at the current m
  std::vector<Real> pascal{Real(1)};  // binom(n, r), rebuilt per n
  std::vector<Real> k_binoms(k_max + 1);
  Real lambda_pow(1);   // lambda^(nu m)
  Real eta_inverse(1);  // eta^(-m)

  auto term = [&](int m, std::vector<Tracked<Real>>& out) {
    if (m == 0) {
      row_binoms.assign(1, Real(1));
    } else {
      for (std::size_t r = 0; r < row_binoms.size(); ++r) {
        row_binoms[r] *= (Real(static_cast<double>(r)) * Real(delta) - Real(m - 1)) / Real(m);
      }
      row_binoms.push_back(detail::gen_binom_t(Real(Real(m) * Real(delta)), m));
      lambda_pow *= lambda_nu;
      eta_inverse /= eta;
    }
    // b_m = eta^-m sum_{n<=m} c_n eta^(delta n) sum_{r<=n} binom(n,r) (-1)^(n-r) binom(r delta, m);
    // terms with n > m vanish because the bracket raised to n is O(x^n).
    Real b(0), b_mass(0);
    Real eta_delta_pow(1);
    pascal.assign(1, Real(1));
    for (int n = 0; n <= m; ++n) {
      if (n > 0) {
        eta_delta_pow *= eta_delta;
        pascal.push_back(Real(1));
        for (int r = n - 1; r > 0; --r) pascal[r] += pascal[r - 1];
      }
      Real inner(0), inner_mass(0);
      for (int r = 0; r <= n; ++r) {
        const Real v = pascal[r] * row_binoms[r];
        inner += ((n - r) % 2 ? Real(-v) : v);
        inner_mass += detail::real_abs(v);
      }
      const auto& c = coeffs(n);
      b += c.value * eta_delta_pow * inner;
      b_mass += c.mass * eta_delta_pow * inner_mass;
    }
    b *= eta_inverse;
    b_mass *= eta_inverse;
    detail::pmf_common::fill_binomials(Real(Real(p.nu()) * Real(m)), k_binoms);
    for (int k = 0; k <= k_max; ++k) {
      const Real w = lambda_pow * k_binoms[k];
      const Real v = w * b;
      out[k] = {k % 2 ? Real(-v) : v, detail::real_abs(w) * b_mass};
    }
  };
  return detail::sum_series_family<Real>(term, settle_indices(k_max, p.nu()), rule, "pmf_tf");
}

double checked_tol(double tol) {
  if (!(tol > 0)) throw InvalidParam("series tolerance must satisfy tol > 0");
  return tol;
}

std::complex<double> space_exponent_complex(const ProcessParams& p, std::complex<double> u) {
  const std::complex<double> base = p.eta() + std::pow(p.lambda(), p.nu()) * std::pow(1.0 - u, p.nu());
  return std::pow(base, p.delta()) - std::pow(p.eta(), p.delta());
}

double binomial(int n, int r) {
  double c = 1;
  for (int j = 1; j <= r; ++j) c = c * (n - r + j) / j;
  return c;
}

}  // namespace

double MLSeriesFunction::operator()(double t, const specfun::SeriesOptions& options) const {
  if (!(t > 0)) throw InvalidParam("MLSeriesFunction is evaluated at t > 0");
  detail::CompensatedSum<double> sum;
  const double arg = scale * std::pow(t, order);
  for (const MLTerm& term : terms) {
    sum.add(term.coeff * std::pow(t, term.power - 1.0) *
            specfun::ml3({order, term.power, term.upper, arg}, options));
  }
  return sum.value();
}

double MLSeriesFunction::initial_value() const {
  double f0 = 0;
  for (const MLTerm& term : terms) {
    if (term.power < 1.0) throw InvalidParam("term power must satisfy power >= 1 for f(0+) to exist");
    if (term.power == 1.0) f0 += term.coeff;
  }
  return f0;
}

MLSeriesFunction prabhakar_transform(const MLSeriesFunction& f, const TimeFracParams& q) {
  if (!(f.order > 0)) throw InvalidParam("kernel order must satisfy order > 0");
  if (q.gamma() != 0 && (f.order != q.alpha() || f.scale != -q.omega())) {
    throw InvalidParam("with gamma != 0 the kernels must have order alpha and scale -omega");
  }
  const double f0 = f.initial_value();
  std::map<std::pair<double, double>, double> merged;
  for (const MLTerm& term : f.terms) {
    merged[{term.power - q.beta(), term.upper - q.gamma()}] += term.coeff;
  }
  // Image of the constant f(0+): t^(-beta) E^(-gamma)_(alpha, 1-beta)(-omega t^alpha).
  merged[{1.0 - q.beta(), -q.gamma()}] -= f0;

  MLSeriesFunction out{f.order, f.scale, {}};
  for (const auto& [key, coeff] : merged) {
    if (coeff != 0) out.terms.push_back({coeff, key.first, key.second});
  }
  return out;
}

double prabhakar_apply(const MLSeriesFunction& f, const TimeFracParams& q, double t,
                       const specfun::SeriesOptions& options) {
  return prabhakar_transform(f, q)(t, options);
}

MLSeriesFunction pgf_tf_kernels(const ProcessParams& p, const TimeFracParams& q, double u,
                                int n_terms) {
  if (!(std::fabs(u) <= 1)) throw InvalidParam("pgf requires |u| <= 1");
  if (n_terms < 1) throw InvalidParam("n_terms must satisfy n_terms >= 1");
  const double bracket = -space_exponent(p, u);
  MLSeriesFunction f{q.alpha(), -q.omega(), {}};
  double coeff = 1;
  for (int n = 0; n < n_terms; ++n) {
    f.terms.push_back({coeff, q.beta() * n + 1.0, q.gamma() * n});
    coeff *= bracket;
  }
  return f;
}

double clock_laplace_exponent(const TimeFracParams& q, double s) {
  if (!(s > 0)) throw InvalidParam("Laplace variable must satisfy s > 0");
  return std::pow(s, q.beta()) * std::pow(1.0 + q.omega() * std::pow(s, -q.alpha()), q.gamma());
}

double inverse_clock_laplace(const TimeFracParams& q, double x, double t, double tol) {
  checked_tol(tol);
  require_time(t);
  if (t == 0 || x == 0) return 1.0;
  const detail::TruncationRule rule{tol, 0, 10000};
  return detail::evaluate_with_precision(
             specfun::Precision::automatic, tol, std::numeric_limits<double>::min(),
             [&]<class Real>() { return inverse_clock_laplace_t<Real>(q, x, t, rule); })
      .value;
}

struct InverseClockSeries::Coefficients {
  Coefficients(const TimeFracParams& q, double t) : standard(q, t), extended(q, t) {}
  ClockCoefficients<double> standard;
  ClockCoefficients<detail::Extended> extended;
};

InverseClockSeries::InverseClockSeries(const TimeFracParams& q, double t, double tol)
    : t_(t), tol_(checked_tol(tol)) {
  require_time(t);
  coeffs_ = std::make_unique<Coefficients>(q, t);
}

InverseClockSeries::~InverseClockSeries() = default;
InverseClockSeries::InverseClockSeries(InverseClockSeries&&) noexcept = default;
InverseClockSeries& InverseClockSeries::operator=(InverseClockSeries&&) noexcept = default;

namespace {

/// Sums c_n x^n for complex x under the usual truncation rule, with complex
/// arithmetic spelled out so that it works for any Real.
template <class Real, class Coeffs>
std::pair<std::complex<double>, double> sum_complex_series(Coeffs& coeffs, std::complex<double> x,
                                                           double tol) {
  const Real x_re(x.real()), x_im(x.imag());
  Real p_re(1), p_im(0), s_re(0), s_im(0), mass(0);
  std::array<Real, 3> recent{};
  for (int n = 0; n < 10000; ++n) {
    if (n > 0) {
      const Real re = p_re * x_re - p_im * x_im;
      p_im = p_re * x_im + p_im * x_re;
      p_re = re;
    }
    const auto& c = coeffs(n);
    const Real t_re = c.value * p_re, t_im = c.value * p_im;
    if (!detail::real_isfinite(t_re) || !detail::real_isfinite(t_im)) {
      throw PrecisionOverflow("inverse-clock series overflowed at term " + std::to_string(n));
    }
    s_re += t_re;
    s_im += t_im;
    const Real size = detail::real_abs(t_re) + detail::real_abs(t_im);
    mass += c.mass * (detail::real_abs(p_re) + detail::real_abs(p_im));
    recent = {recent[1], recent[2], size};
    if (n >= 2 && recent[0] >= recent[1] && recent[1] >= recent[2] &&
        recent[2] < Real(tol) * (detail::real_abs(s_re) + detail::real_abs(s_im))) {
      const double err = detail::to_double(Real(std::numeric_limits<Real>::epsilon()) * mass);
      return {{detail::to_double(s_re), detail::to_double(s_im)}, err};
    }
  }
  throw NonConvergence("inverse-clock series: truncation rule not met within 10000 terms");
}

}  // namespace

std::complex<double> InverseClockSeries::operator()(std::complex<double> x) {
  if (t_ == 0) return 1.0;
  try {
    const auto [value, err] = sum_complex_series<double>(coeffs_->standard, x, tol_);
    if (err <= tol_) return value;
    if (detail::hopeless_in_extended(err / std::numeric_limits<double>::epsilon(), tol_)) {
      throw NonConvergence("inverse-clock series: cancellation exceeds extended precision");
    }
  } catch (const PrecisionOverflow&) {
  }
  const auto [value, err] = sum_complex_series<detail::Extended>(coeffs_->extended, x, tol_);
  if (err > tol_) {
    throw NonConvergence("inverse-clock series: cancellation exceeds extended precision");
  }
  return value;
}

double space_exponent(const ProcessParams& p, double u) {
  return laplace_exponent(p, p.lambda() * (1.0 - u));
}

double pgf_tf(const ProcessParams& p, const TimeFracParams& q, double u, double t, double tol) {
  if (!(std::fabs(u) <= 1)) throw InvalidParam("pgf requires |u| <= 1");
  return inverse_clock_laplace(q, space_exponent(p, u), t, tol);
}

double pgf_tf_laplace(const ProcessParams& p, const TimeFracParams& q, double u, double s) {
  if (!(std::fabs(u) <= 1)) throw InvalidParam("pgf requires |u| <= 1");
  const double clock = clock_laplace_exponent(q, s);
  return clock / s / (clock + space_exponent(p, u));
}

Pmf pmf_tf(const ProcessParams& p, const TimeFracParams& q, double t, int k_max, PmfRoute route,
           const PmfOptions& options) {
  require_time(t);
  require_k_max(k_max);
  if (route == PmfRoute::oracle) return pmf_tf_oracle(p, q, t, k_max);
  const auto rule = rule_from(options);
  if (t == 0) return point_mass(p, k_max, PmfMethod::series);
  try {
    if (!p.integer_delta() && std::pow(p.lambda(), p.nu()) >= p.eta()) {
      throw NonConvergence(
          "pmf_tf: the expansion in powers of lambda^nu / eta diverges for non-integer delta "
          "unless lambda^nu < eta");
    }
    Pmf out;
    out.t = t;
    out.params = p;
    out.k_max = k_max;
    const auto eval = detail::evaluate_family_with_precision(
        options.precision, options.tol,
        [&]<class Real>() { return tf_terms<Real>(p, q, t, k_max, rule); });
    return finish_series(std::move(out), eval, "pmf_tf");
  } catch (const NonConvergence&) {
    if (route == PmfRoute::series) throw;
  }
  return pmf_tf_oracle(p, q, t, k_max);
}

Pmf pmf_tf_oracle(const ProcessParams& p, const TimeFracParams& q, double t, int k_max) {
  require_time(t);
  require_k_max(k_max);
  if (t == 0) return point_mass(p, k_max, PmfMethod::oracle);
  InverseClockSeries series(q, t);
  const auto ex = numerics::extract_coefficients(
      [&](std::complex<double> u) { return series(space_exponent_complex(p, u)); }, k_max);
  return from_extraction(p, t, k_max, ex, "pmf_tf_oracle");
}

std::vector<double> inverse_clock_path(const TimeFracParams& q, const std::vector<double>& times,
                                       const ClockGrid& grid, RandomStream& rng) {
  if (!(grid.step > 0)) throw InvalidParam("grid step must satisfy step > 0");
  const int g = q.gamma_ceil();
  std::vector<double> outer_index, weight;
  if (q.gamma() == 0) {
    outer_index.push_back(q.beta());
    weight.push_back(1.0);
  } else {
    for (int r = 0; r <= g; ++r) {
      outer_index.push_back(q.outer_index(r));
      weight.push_back(binomial(g, r) * std::pow(q.omega(), r));
    }
  }
  std::vector<double> out;
  out.reserve(times.size());
  double value = 0;
  long step = 0;
  double previous = 0;
  for (double t : times) {
    if (!(t >= previous)) throw InvalidParam("path times must be non-decreasing");
    previous = t;
    if (t == 0) {
      out.push_back(0.0);
      continue;
    }
    while (value <= t) {
      if (++step > grid.max_steps) {
        throw GridExhausted("clock path did not pass t = " + std::to_string(t) + " within " +
                            std::to_string(grid.max_steps) + " grid steps");
      }
      const double inner = q.gamma() == 0 ? grid.step
                                          : stable_or_drift_sample(q.inner_index(), grid.step, rng);
      for (std::size_t r = 0; r < outer_index.size(); ++r) {
        value += stable_or_drift_sample(outer_index[r], weight[r] * inner, rng);
      }
    }
    out.push_back((static_cast<double>(step) - 0.5) * grid.step);
  }
  return out;
}

double inverse_clock_sample(const TimeFracParams& q, double t, const ClockGrid& grid, RandomStream& rng) {
  require_time(t);
  if (t == 0) return 0.0;
  if (q.gamma() == 0) {
    return std::pow(t / stable_or_drift_sample(q.beta(), 1.0, rng), q.beta());
  }
  return inverse_clock_path(q, {t}, grid, rng).front();
}

CountSample sample_tf(const ProcessParams& p, const TimeFracParams& q, double t, const ClockGrid& grid,
                      RandomStream& rng) {
  CountSample s;
  s.t = t;
  const double clock = inverse_clock_sample(q, t, grid, rng);
  s.clock_value = subordinated_sample(p, clock, rng);
  s.value = rng.poisson(p.lambda() * s.clock_value);
  return s;
}

std::vector<CountSample> sample_tf_path(const ProcessParams& p, const TimeFracParams& q,
                                        const std::vector<double>& times, const ClockGrid& grid,
                                        RandomStream& rng) {
  const std::vector<double> clock = inverse_clock_path(q, times, grid, rng);
  std::vector<CountSample> path = sample_path(p, clock, rng);
  for (std::size_t i = 0; i < path.size(); ++i) path[i].t = times[i];
  return path;
}

double time_changed_laplace(const ProcessParams& p, const TimeFracParams& q, double mu, double t,
                            double tol) {
  if (!(mu >= 0)) throw InvalidParam("mu must satisfy mu >= 0");
  return inverse_clock_laplace(q, laplace_exponent(p, mu), t, tol);
}

}  // namespace gsfpp
