#pragma once

// Scalar helpers shared by the double and extended-precision code paths.

#include <cmath>
#include <limits>
#include <type_traits>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace gsfpp::detail {

using Extended = boost::multiprecision::cpp_bin_float_quad;

using QuietPolicy = boost::math::policies::policy<
    boost::math::policies::domain_error<boost::math::policies::ignore_error>,
    boost::math::policies::pole_error<boost::math::policies::ignore_error>,
    boost::math::policies::overflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::underflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::evaluation_error<boost::math::policies::ignore_error>>;

template <class Real>
inline constexpr bool is_double_v = std::is_same_v<Real, double>;

template <class Real>
Real real_abs(const Real& x) {
  using std::abs;
  return abs(x);
}

template <class Real>
bool real_isfinite(const Real& x) {
  using std::isfinite;
  if constexpr (is_double_v<Real>) {
    return std::isfinite(x);
  } else {
    return boost::multiprecision::isfinite(x);
  }
}

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// Tolerance used to decide that an argument sits on a pole of Gamma. It is
/// relative to double precision because every argument is derived from double
/// parameters.
inline bool near_nonpositive_integer(double x) {
  if (x > 0.5) return false;
  const double nearest = std::round(x);
  return std::fabs(x - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() *
                                       std::fmax(1.0, std::fabs(x));
}

template <class Real>
bool on_gamma_pole(const Real& x) {
  return near_nonpositive_integer(to_double(x));
}

/// Sign of Gamma(x) away from poles.
template <class Real>
int gamma_sign(const Real& x) {
  if (x > 0) return 1;
  using std::ceil;
  const double c = std::ceil(-to_double(x));
  return (static_cast<long long>(c) % 2 == 0) ? 1 : -1;
}

/// log |Gamma(x)|.
template <class Real>
Real log_abs_gamma(const Real& x) {
  if constexpr (is_double_v<Real>) {
    return std::lgamma(x);
  } else {
    return boost::math::lgamma(x, QuietPolicy());
  }
}

template <class Real>
Real gamma_fn(const Real& x) {
  if constexpr (is_double_v<Real>) {
    return std::tgamma(x);
  } else {
    return boost::math::tgamma(x, QuietPolicy());
  }
}

template <class Real>
Real recip_gamma_t(const Real& x) {
  if (on_gamma_pole(x)) return Real(0);
  if constexpr (is_double_v<Real>) {
    if (x > 171.0) return std::exp(-std::lgamma(x));
    if (x < -170.0) {
      // Reflection: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi.
      const double s = std::sin(M_PI * x) / M_PI;
      return s * std::exp(std::lgamma(1.0 - x));
    }
    return 1.0 / std::tgamma(x);
  } else {
    return Real(1) / gamma_fn(x);
  }
}

/// q / Gamma(arg) without intermediate overflow in double.
template <class Real>
Real times_recip_gamma(const Real& q, const Real& arg) {
  if (q == 0 || on_gamma_pole(arg)) return Real(0);
  if constexpr (is_double_v<Real>) {
    if (std::fabs(q) < 1e100 && std::fabs(q) > 1e-100 && std::fabs(arg) < 160.0) {
      return q * recip_gamma_t(arg);
    }
    const double log_mag = std::log(std::fabs(q)) - std::lgamma(arg);
    const int sign = (q < 0 ? -1 : 1) * gamma_sign(arg);
    return sign * std::exp(log_mag);
  } else {
    return q * recip_gamma_t(arg);
  }
}

}  // namespace gsfpp::detail
