#pragma once

#include <vector>

#include "gsfpp/params.hpp"
#include "gsfpp/random.hpp"

namespace gsfpp {

/// One Laplace-transform identity check: the closed form next to an
/// independent estimate (quadrature or Monte Carlo) and the estimate's error
/// bound (quadrature error plus truncated tail, or one standard error).
struct LaplaceProbe {
  double mu = 0;
  double closed_form = 0;
  double estimate = 0;
  double error_bound = 0;

  double error() const;
  /// |estimate - closed_form| <= multiple * error_bound.
  bool within_bound(double multiple) const;
};

/// Safety limits of the tempered-stable rejection sampler.
struct TemperingLimits {
  /// Rejections tolerated for one piece before RestartCapExceeded.
  long max_restarts = 100000;
  /// Upper bound on the number of infinitely-divisible pieces per draw.
  long max_pieces = 10000000;
};

/// Draw of a one-sided alpha-stable subordinator at time t, with
/// E exp(-mu V_t) = exp(-t mu^alpha). Kanter's representation of V_1 scaled by
/// t^(1/alpha). Requires 0 < alpha < 1 and t >= 0.
double stable_sample(double alpha, double t, RandomStream& rng);

/// As stable_sample, but alpha = 1 is admitted and returns the drift t.
double stable_or_drift_sample(double alpha, double t, RandomStream& rng);

/// Tempered stable draw with exponent (xi + mu)^alpha - xi^alpha, by
/// exponential-tilting rejection. The interval is split into
/// ceil(t xi^alpha) independent pieces so each piece accepts with
/// probability at least 1/e.
double tempered_stable_sample(const TemperedParams& params, double t, RandomStream& rng,
                              const TemperingLimits& limits = {});

/// Sum over r = 1..n of independent (nu r)-stable subordinators run at times
/// binom(n, r) eta^(n-r) t. Laplace exponent (eta + mu^nu)^n - eta^n.
double composite_sample(const ProcessParams& params, double t, RandomStream& rng);

/// The composite subordinator evaluated at an independent tempered
/// (delta/n)-stable clock with tempering eta^n. Laplace exponent
/// (eta + mu^nu)^delta - eta^delta. For integer delta the clock is t itself.
double subordinated_sample(const ProcessParams& params, double t, RandomStream& rng,
                           const TemperingLimits& limits = {});

/// Values of the subordinated process at increasing times, coupled through
/// independent increments so the path is non-decreasing.
std::vector<double> subordinated_path(const ProcessParams& params, const std::vector<double>& times,
                                      RandomStream& rng);

double stable_laplace_exponent(double alpha, double mu);
double tempered_laplace_exponent(const TemperedParams& params, double mu);
/// (eta + mu^nu)^n - eta^n.
double composite_laplace_exponent(const ProcessParams& params, double mu);
/// (eta + mu^nu)^delta - eta^delta.
double laplace_exponent(const ProcessParams& params, double mu);

/// Checks laplace_exponent against the integral of (1 - e^{-mu x}) over the
/// Levy measure, following the reduction to
///   (p / Gamma(1-p)) int_0^inf (e^{-a t} - e^{-b t}) t^{-1-p} dt,
/// p = delta/n, a = eta^n, b = (eta + mu^nu)^n. For integer delta the clock is
/// deterministic and the Levy measure is that of the composite process, which
/// is integrated component by component. Throws QuadratureFailure when the
/// quadrature error plus the truncated tail exceeds tol.
LaplaceProbe levy_identity_check(const ProcessParams& params, double mu, double tol);

}  // namespace gsfpp
