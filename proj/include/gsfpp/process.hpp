#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsfpp/params.hpp"
#include "gsfpp/random.hpp"
#include "gsfpp/specfun.hpp"

namespace gsfpp {

enum class PmfMethod { series, oracle, monte_carlo };

std::string to_string(PmfMethod method);

/// State probabilities p_0..p_k_max at time t.
struct Pmf {
  double t = 0;
  ProcessParams params{1.0, 1.0};
  std::vector<double> probs;
  int k_max = 0;
  /// Mass beyond k_max. Series results report 1 - sum(probs); the oracle
  /// extracts it independently as a Taylor coefficient of (1 - G)/(1 - u).
  double est_tail = 0;
  PmfMethod method = PmfMethod::series;
  /// True when the extended-precision path produced the values.
  bool extended_precision = false;

  double partial_sum() const;
};

struct CountSample {
  double t = 0;
  std::int64_t value = 0;
  /// The drawn value of the subordinator at t.
  double clock_value = 0;
};

struct PmfOptions {
  /// Relative truncation tolerance of every series, and the absolute rounding
  /// budget per probability that decides the switch to extended precision.
  double tol = 1e-12;
  specfun::Precision precision = specfun::Precision::automatic;
  int max_terms = 10000;
};

/// G(u, t) = exp(-t [(eta + lambda^nu (1-u)^nu)^delta - eta^delta]), |u| <= 1.
double pgf(const ProcessParams& params, double u, double t);
/// The same expression on the principal branch, for |u| < 1.
std::complex<double> pgf_complex(const ProcessParams& params, std::complex<double> u, double t);

/// The double series p_k = (-1)^k e^{t eta^delta} sum_m (lambda^nu/eta)^m / m!
///   binom(nu m, k) 1psi1[(1, delta); (1 - m, delta) | -eta^delta t].
/// The sum over m converges when delta is an integer or lambda^nu < eta;
/// otherwise NonConvergence is raised without summing.
Pmf pmf_series(const ProcessParams& params, double t, int k_max, const PmfOptions& options = {});

/// Discrete stable law, p_k = (-1)^k sum_r (-lambda^alpha t)^r / r! binom(alpha r, k),
/// for 0 < alpha <= 1.
Pmf pmf_space_fractional(double alpha, double lambda, double t, int k_max,
                         const PmfOptions& options = {});

/// Taylor coefficients of G(., t) by discrete Fourier inversion. Raises
/// OracleInstability when the residual imaginary parts exceed 1e-10 or a
/// coefficient is below -1e-10.
Pmf pmf_oracle(const ProcessParams& params, double t, int k_max);

enum class PmfRoute { automatic, series, oracle };

/// pmf_series, falling back to pmf_oracle on NonConvergence when the route is
/// automatic.
Pmf pmf(const ProcessParams& params, double t, int k_max, PmfRoute route = PmfRoute::automatic,
        const PmfOptions& options = {});

/// N(V_t): the subordinated clock followed by a Poisson count of rate lambda.
CountSample sample(const ProcessParams& params, double t, RandomStream& rng);

/// Counts at increasing times from one path, built from independent
/// increments of the clock and of the Poisson process.
std::vector<CountSample> sample_path(const ProcessParams& params, const std::vector<double>& times,
                                     RandomStream& rng);

struct IdentityReport {
  double total_variation = 0;
  double threshold = 0;
  /// Largest state compared individually; larger states share one bin.
  int k_max = 0;
  std::size_t draws = 0;
  bool pass = false;
};

/// Compares N^alpha evaluated at a gamma-stable clock against the discrete
/// stable law of index alpha * gamma. Bins 0..K, K = min(99.9% mass point, 200),
/// plus one tail bin.
IdentityReport subordination_identity_check(double alpha, double gamma_exp, double lambda, double t,
                                            std::uint64_t seed, std::size_t n_draws,
                                            double threshold = 0.01);

/// Mean and variance of N(V_t). Both are infinite (nullopt) for nu < 1; for
/// nu = 1 they come from Richardson-extrapolated differences of G at u = 1.
struct Moments {
  std::optional<double> mean;
  std::optional<double> variance;
};

Moments moments(const ProcessParams& params, double t);

}  // namespace gsfpp
