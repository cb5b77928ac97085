#include "gsfpp/params.hpp"

#include <cmath>
#include <sstream>

#include "gsfpp/errors.hpp"

namespace gsfpp {
namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidParam(std::string(name) + " must be finite");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ProcessParams::ProcessParams(double nu, double delta, double eta, double lambda)
    : nu_(nu), delta_(delta), eta_(eta), lambda_(lambda), n_(0) {
  require_finite(nu, "nu");
  require_finite(delta, "delta");
  require_finite(eta, "eta");
  require_finite(lambda, "lambda");
  if (!(delta > 0)) throw InvalidParam("delta > 0 violated: delta = " + fmt(delta));
  if (!(eta > 0)) throw InvalidParam("eta > 0 violated: eta = " + fmt(eta));
  if (!(lambda > 0)) throw InvalidParam("lambda > 0 violated: lambda = " + fmt(lambda));
  n_ = static_cast<int>(std::ceil(delta));
  const double nu_n = nu * n_;
  if (!(nu > 0) || !(nu_n <= 1.0)) {
    throw InvalidParam("0 < nu*n <= 1 violated (n = ceil(delta)): nu = " + fmt(nu) +
                       ", n = " + std::to_string(n_) + ", nu*n = " + fmt(nu_n));
  }
}

bool ProcessParams::integer_delta() const { return delta_ == std::floor(delta_); }

std::string ProcessParams::describe() const {
  return "nu=" + fmt(nu_) + " delta=" + fmt(delta_) + " eta=" + fmt(eta_) +
         " lambda=" + fmt(lambda_);
}

TemperedParams::TemperedParams(double alpha, double xi) : alpha_(alpha), xi_(xi) {
  require_finite(alpha, "alpha");
  require_finite(xi, "xi");
  if (!(alpha > 0 && alpha < 1)) {
    throw InvalidParam("0 < alpha < 1 violated: alpha = " + fmt(alpha));
  }
  if (!(xi > 0)) throw InvalidParam("xi > 0 violated: xi = " + fmt(xi));
}

TimeFracParams::TimeFracParams(double alpha, double beta, double gamma, double omega)
    : alpha_(alpha), beta_(beta), gamma_(gamma), omega_(omega), gamma_ceil_(0) {
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_finite(gamma, "gamma");
  require_finite(omega, "omega");
  if (!(omega > 0)) throw InvalidParam("omega > 0 violated: omega = " + fmt(omega));
  if (!(gamma >= 0)) throw InvalidParam("gamma >= 0 violated: gamma = " + fmt(gamma));
  if (!(alpha > 0 && alpha <= 1)) {
    throw InvalidParam("0 < alpha <= 1 violated: alpha = " + fmt(alpha));
  }
  if (!(beta > 0 && beta <= 1)) {
    throw InvalidParam("0 < beta <= 1 violated: beta = " + fmt(beta));
  }
  gamma_ceil_ = static_cast<int>(std::ceil(gamma));
  if (gamma != 0) {
    for (int r = 0; r <= gamma_ceil_; ++r) {
      const double idx = outer_index(r);
      if (!(idx > 0 && idx < 1)) {
        throw InvalidParam("0 < beta*ceil(gamma)/gamma - r*alpha < 1 violated at r = " +
                           std::to_string(r) + ": value " + fmt(idx));
      }
    }
  }
}

double TimeFracParams::outer_index(int r) const {
  if (gamma_ == 0) return beta_;
  return beta_ * gamma_ceil_ / gamma_ - r * alpha_;
}

double TimeFracParams::inner_index() const {
  if (gamma_ == 0) return 1.0;
  return gamma_ / gamma_ceil_;
}

std::string TimeFracParams::describe() const {
  return "alpha=" + fmt(alpha_) + " beta=" + fmt(beta_) + " gamma=" + fmt(gamma_) +
         " omega=" + fmt(omega_);
}

}  // namespace gsfpp
