#pragma once

#include <string>

namespace gsfpp {

/// Parameters of the generalized space-fractional Poisson process and of its
/// subordinator: stability factor nu, exponent delta, shift eta and Poisson
/// rate lambda. The number of stable components is n = ceil(delta).
///
/// Admissible values: delta, eta, lambda > 0 and 0 < nu * n <= 1. The upper
/// endpoint nu * n = 1 is admitted so that the classical reductions (nu = 1,
/// delta <= 1) are representable; the component of order 1 is a unit drift.
class ProcessParams {
 public:
  /// Throws InvalidParam naming the violated inequality.
  ProcessParams(double nu, double delta, double eta = 1.0, double lambda = 1.0);

  double nu() const { return nu_; }
  double delta() const { return delta_; }
  double eta() const { return eta_; }
  double lambda() const { return lambda_; }
  int n() const { return n_; }

  /// True when delta is an integer, so every binomial expansion in delta
  /// terminates.
  bool integer_delta() const;

  std::string describe() const;

  friend bool operator==(const ProcessParams&, const ProcessParams&) = default;

 private:
  double nu_;
  double delta_;
  double eta_;
  double lambda_;
  int n_;
};

/// Exponentially tempered stable subordinator with Laplace exponent
/// (xi + mu)^alpha - xi^alpha.
class TemperedParams {
 public:
  TemperedParams(double alpha, double xi);

  double alpha() const { return alpha_; }
  double xi() const { return xi_; }

  friend bool operator==(const TemperedParams&, const TemperedParams&) = default;

 private:
  double alpha_;
  double xi_;
};

/// Parameters of the regularized Prabhakar derivative acting in time:
/// kernel order alpha, derivative order beta, upper index gamma and
/// tempering omega. When gamma > 0 the composite clock requires
/// 0 < beta * ceil(gamma) / gamma - r * alpha < 1 for r = 0..ceil(gamma).
class TimeFracParams {
 public:
  TimeFracParams(double alpha, double beta, double gamma, double omega);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double omega() const { return omega_; }
  int gamma_ceil() const { return gamma_ceil_; }

  /// Stability index of the r-th outer stable subordinator of the clock.
  double outer_index(int r) const;
  /// Stability index of the shared inner clock, gamma / ceil(gamma).
  double inner_index() const;

  std::string describe() const;

  friend bool operator==(const TimeFracParams&, const TimeFracParams&) = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double omega_;
  int gamma_ceil_;
};

}  // namespace gsfpp
