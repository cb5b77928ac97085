#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "gsfpp/params.hpp"
#include "gsfpp/process.hpp"
#include "gsfpp/random.hpp"
#include "gsfpp/specfun.hpp"

namespace gsfpp {

/// One term coeff * t^(power - 1) * E^upper_{order, power}(scale * t^order)
/// of an MLSeriesFunction.
struct MLTerm {
  double coeff;
  double power;
  double upper;
};

/// A finite sum of Prabhakar kernels sharing their order and argument scale:
///   f(t) = sum_i coeff_i t^(power_i - 1) E^(upper_i)_(order, power_i)(scale t^order).
struct MLSeriesFunction {
  double order;
  double scale;
  std::vector<MLTerm> terms;

  double operator()(double t, const specfun::SeriesOptions& options = {}) const;
  /// f(0+); only terms with power 1 contribute, terms with power < 1 diverge.
  double initial_value() const;
};

/// Applies the regularized Prabhakar derivative ^C D^gamma_{alpha, beta, -omega, 0+}
/// term by term. A term with power c and upper index g maps to power c - beta
/// and upper index g - gamma; the regularization subtracts f(0+) times the
/// image of the constant 1. Like terms are merged, so constants map to exactly
/// zero. Throws InvalidParam for terms with power < 1, or, when gamma != 0,
/// for a kernel order or scale other than alpha and -omega.
MLSeriesFunction prabhakar_transform(const MLSeriesFunction& f, const TimeFracParams& q);

double prabhakar_apply(const MLSeriesFunction& f, const TimeFracParams& q, double t,
                       const specfun::SeriesOptions& options = {});

/// The pgf series at fixed u as a function of t, truncated to n_terms terms:
/// coefficient (-space_exponent(u))^n, power beta n + 1, upper index gamma n.
MLSeriesFunction pgf_tf_kernels(const ProcessParams& p, const TimeFracParams& q, double u, int n_terms);

/// Laplace exponent of the time-fractional clock, s^beta (1 + omega s^-alpha)^gamma.
double clock_laplace_exponent(const TimeFracParams& q, double s);

/// E exp(-x U_t) for the inverse clock U, as the series
///   sum_n (-x t^beta)^n E^(gamma n)_(alpha, beta n + 1)(-omega t^alpha).
/// Evaluated in extended precision when cancellation demands it; raises
/// NonConvergence when even that fails (t beyond the usable horizon).
double inverse_clock_laplace(const TimeFracParams& q, double x, double t, double tol = 1e-12);

/// The same series for one t and many complex x, with the coefficients
/// computed once. tol is an absolute accuracy target; terms are summed in
/// extended precision when double cancellation would exceed it.
class InverseClockSeries {
 public:
  InverseClockSeries(const TimeFracParams& q, double t, double tol = 1e-12);
  ~InverseClockSeries();
  InverseClockSeries(InverseClockSeries&&) noexcept;
  InverseClockSeries& operator=(InverseClockSeries&&) noexcept;

  std::complex<double> operator()(std::complex<double> x);

 private:
  struct Coefficients;

  double t_;
  double tol_;
  std::unique_ptr<Coefficients> coeffs_;
};

/// (eta + lambda^nu (1-u)^nu)^delta - eta^delta.
double space_exponent(const ProcessParams& p, double u);

/// G(u, t) of the time-fractional process.
double pgf_tf(const ProcessParams& p, const TimeFracParams& q, double u, double t, double tol = 1e-12);

/// Closed form of the time Laplace transform of pgf_tf,
///   s^(beta-1) (1 + omega s^-alpha)^gamma / (s^beta (1 + omega s^-alpha)^gamma + space_exponent).
double pgf_tf_laplace(const ProcessParams& p, const TimeFracParams& q, double u, double s);

/// State probabilities from the quadruple series
///   p_k = (-1)^k sum_m lambda^(nu m) binom(nu m, k) sum_{n <= m} c_n
///         sum_{r <= n} binom(n, r) (-eta^delta)^(n-r) binom(r delta, m) eta^(delta r - m),
/// c_n = (-t^beta)^n E^(gamma n)_(alpha, beta n + 1)(-omega t^alpha). With
/// PmfRoute::automatic a NonConvergence falls back to Fourier inversion of pgf_tf.
Pmf pmf_tf(const ProcessParams& p, const TimeFracParams& q, double t, int k_max,
           PmfRoute route = PmfRoute::automatic, const PmfOptions& options = {});

/// Fourier inversion of the series pgf_tf.
Pmf pmf_tf_oracle(const ProcessParams& p, const TimeFracParams& q, double t, int k_max);

struct ClockGrid {
  double step;
  /// The clock path is abandoned with GridExhausted after this many steps.
  long max_steps = 50000000;
};

/// First passage of the clock V_s = sum_r W^(r)_{binom(g, r) omega^r S_s} above t,
/// where g = ceil(gamma), S is a (gamma/g)-stable subordinator shared by all
/// terms and W^(r) are independent stable subordinators of index
/// beta g / gamma - r alpha. V is simulated on the grid s = j * step and the
/// midpoint of the crossing step is returned. For gamma = 0 the clock is
/// beta-stable and its inverse is drawn exactly as (t / V_1)^beta.
double inverse_clock_sample(const TimeFracParams& q, double t, const ClockGrid& grid, RandomStream& rng);

/// Inverse clock at several increasing times from one simulated path.
std::vector<double> inverse_clock_path(const TimeFracParams& q, const std::vector<double>& times,
                                       const ClockGrid& grid, RandomStream& rng);

/// N(V(U_t)): inverse clock, subordinated process, Poisson count. clock_value
/// holds the drawn V(U_t).
CountSample sample_tf(const ProcessParams& p, const TimeFracParams& q, double t, const ClockGrid& grid,
                      RandomStream& rng);

/// The time-fractional count at several increasing times from one path of
/// each layer.
std::vector<CountSample> sample_tf_path(const ProcessParams& p, const TimeFracParams& q,
                                        const std::vector<double>& times, const ClockGrid& grid,
                                        RandomStream& rng);

/// E exp(-mu V(U_t)) for the subordinated process V driven by the inverse
/// clock: inverse_clock_laplace at x = laplace_exponent(p, mu). This is the
/// series with bracket (eta + lambda^nu mu^nu)^delta - eta^delta at lambda = 1.
double time_changed_laplace(const ProcessParams& p, const TimeFracParams& q, double mu, double t,
                            double tol = 1e-12);

}  // namespace gsfpp
