#include "gsfpp/subordinators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gsfpp/errors.hpp"
#include "gsfpp/specfun.hpp"

namespace gsfpp {
namespace {

void require_time(double t) {
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidParam("time must satisfy 0 <= t < inf");
}

/// V_1 of Kanter's representation for 0 < alpha < 1.
double unit_stable(double alpha, RandomStream& rng) {
  const double u = M_PI * rng.uniform();
  const double e = rng.exponential();
  const double beta = 1.0 - alpha;
  const double log_a = alpha / beta * std::log(std::sin(alpha * u)) +
                       std::log(std::sin(beta * u)) - std::log(std::sin(u)) / beta;
  return std::exp(beta / alpha * (log_a - std::log(e)));
}

double binomial(int n, int r) {
  double c = 1;
  for (int j = 1; j <= r; ++j) c = c * (n - r + j) / j;
  return c;
}

struct QuadResult {
  double value;
  double error;
};

constexpr unsigned kMaxDepth = 20;

template <class F>
QuadResult integrate(F f, double lo, double hi) {
  double error = 0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, kMaxDepth, 1e-13, &error);
  return {value, error};
}

/// int_0^X (1 - e^{-mu x}) x^{-1-a} dx + X^{-a}/a, i.e. the full integral up to
/// the neglected e^{-mu x} tail. Substituting x = v^{1/(1-a)} leaves the smooth
/// integrand (1 - e^{-mu x}) / x / (1 - a).
QuadResult stable_measure_integral(double a, double mu) {
  const double cutoff = 50.0 / mu;
  const double power = 1.0 / (1.0 - a);
  auto f = [&](double v) {
    const double x = std::pow(v, power);
    if (x == 0) return mu / (1.0 - a);
    return -std::expm1(-mu * x) / x / (1.0 - a);
  };
  QuadResult q = integrate(f, 0.0, std::pow(cutoff, 1.0 - a));
  q.value += std::pow(cutoff, -a) / a;
  q.error += std::exp(-mu * cutoff) * std::pow(cutoff, -1.0 - a) / mu;
  return q;
}

}  // namespace

double LaplaceProbe::error() const { return std::fabs(estimate - closed_form); }

bool LaplaceProbe::within_bound(double multiple) const {
  return error() <= multiple * error_bound;
}

double stable_sample(double alpha, double t, RandomStream& rng) {
  if (!(alpha > 0 && alpha < 1)) throw InvalidParam("stable index must satisfy 0 < alpha < 1");
  require_time(t);
  if (t == 0) return 0.0;
  return std::pow(t, 1.0 / alpha) * unit_stable(alpha, rng);
}

double stable_or_drift_sample(double alpha, double t, RandomStream& rng) {
  if (alpha == 1.0) {
    require_time(t);
    return t;
  }
  return stable_sample(alpha, t, rng);
}

double tempered_stable_sample(const TemperedParams& params, double t, RandomStream& rng,
                              const TemperingLimits& limits) {
  require_time(t);
  if (t == 0) return 0.0;
  const double alpha = params.alpha();
  const double xi = params.xi();
  const double load = t * std::pow(xi, alpha);
  const double pieces_real = std::max(1.0, std::ceil(load));
  if (pieces_real > static_cast<double>(limits.max_pieces)) {
    throw RestartCapExceeded("tempered stable draw needs " + std::to_string(pieces_real) +
                             " pieces; t * xi^alpha is too large");
  }
  const long pieces = static_cast<long>(pieces_real);
  const double piece_time = t / static_cast<double>(pieces);
  const double scale = std::pow(piece_time, 1.0 / alpha);
  double total = 0;
  for (long i = 0; i < pieces; ++i) {
    long attempts = 0;
    for (;;) {
      const double s = scale * unit_stable(alpha, rng);
      if (rng.uniform() <= std::exp(-xi * s)) {
        total += s;
        break;
      }
      if (++attempts >= limits.max_restarts) {
        throw RestartCapExceeded("tempered stable rejection exceeded " +
                                 std::to_string(limits.max_restarts) + " restarts");
      }
    }
  }
  return total;
}

double composite_sample(const ProcessParams& params, double t, RandomStream& rng) {
  require_time(t);
  if (t == 0) return 0.0;
  const int n = params.n();
  double total = 0;
  for (int r = 1; r <= n; ++r) {
    const double clock = binomial(n, r) * std::pow(params.eta(), n - r) * t;
    total += stable_or_drift_sample(params.nu() * r, clock, rng);
  }
  return total;
}

double subordinated_sample(const ProcessParams& params, double t, RandomStream& rng,
                           const TemperingLimits& limits) {
  require_time(t);
  if (t == 0) return 0.0;
  const double clock_index = params.delta() / params.n();
  double clock = t;
  if (clock_index < 1.0) {
    clock = tempered_stable_sample(TemperedParams(clock_index, std::pow(params.eta(), params.n())),
                                   t, rng, limits);
  }
  return composite_sample(params, clock, rng);
}

std::vector<double> subordinated_path(const ProcessParams& params, const std::vector<double>& times,
                                      RandomStream& rng) {
  std::vector<double> path;
  path.reserve(times.size());
  double previous_time = 0;
  double value = 0;
  for (double t : times) {
    if (t < previous_time) throw InvalidParam("path times must be non-decreasing");
    value += subordinated_sample(params, t - previous_time, rng);
    path.push_back(value);
    previous_time = t;
  }
  return path;
}

double stable_laplace_exponent(double alpha, double mu) { return std::pow(mu, alpha); }

double tempered_laplace_exponent(const TemperedParams& params, double mu) {
  return std::pow(params.xi() + mu, params.alpha()) - std::pow(params.xi(), params.alpha());
}

double composite_laplace_exponent(const ProcessParams& params, double mu) {
  const double base = params.eta() + std::pow(mu, params.nu());
  return std::pow(base, params.n()) - std::pow(params.eta(), params.n());
}

double laplace_exponent(const ProcessParams& params, double mu) {
  const double eta_delta = std::pow(params.eta(), params.delta());
  const double shift = std::pow(mu, params.nu());
  // (eta + s)^delta - eta^delta without cancellation for small s.
  return eta_delta * std::expm1(params.delta() * std::log1p(shift / params.eta()));
}

LaplaceProbe levy_identity_check(const ProcessParams& params, double mu, double tol) {
  if (!(mu > 0)) throw InvalidParam("levy_identity_check requires mu > 0");
  if (!(tol > 0)) throw InvalidParam("levy_identity_check requires tol > 0");
  LaplaceProbe probe;
  probe.mu = mu;
  probe.closed_form = laplace_exponent(params, mu);
  const int n = params.n();
  const double p = params.delta() / n;

  if (p < 1.0) {
    const double a = std::pow(params.eta(), n);
    const double b = std::pow(params.eta() + std::pow(mu, params.nu()), n);
    const double gap = b - a;
    const double weight = p * specfun::recip_gamma(1.0 - p);
    const double cutoff = 50.0 / a;
    const double q = 1.0 / (1.0 - p);
    // t = u^q turns t^{-1-p} dt into q dt / t.
    auto f = [&](double u) {
      const double t = std::pow(u, q);
      if (t == 0) return weight * q * gap;
      return weight * q * std::exp(-a * t) * -std::expm1(-gap * t) / t;
    };
    const QuadResult r = integrate(f, 0.0, std::pow(cutoff, 1.0 - p));
    const double tail = weight * std::exp(-a * cutoff) * std::pow(cutoff, -1.0 - p) / a;
    probe.estimate = r.value;
    probe.error_bound = r.error + tail;
  } else {
    double estimate = 0;
    double error = 0;
    for (int r = 1; r <= n; ++r) {
      const double index = params.nu() * r;
      const double weight = binomial(n, r) * std::pow(params.eta(), n - r);
      if (index == 1.0) {
        estimate += weight * mu;  // drift component
        continue;
      }
      const QuadResult q = stable_measure_integral(index, mu);
      const double density = index * specfun::recip_gamma(1.0 - index);
      estimate += weight * density * q.value;
      error += weight * density * q.error;
    }
    probe.estimate = estimate;
    probe.error_bound = error;
  }
  if (!std::isfinite(probe.estimate) || probe.error_bound > tol) {
    throw QuadratureFailure("Levy measure quadrature error bound " +
                            std::to_string(probe.error_bound) + " exceeds tol " +
                            std::to_string(tol) + " for " + params.describe());
  }
  return probe;
}

}  // namespace gsfpp
