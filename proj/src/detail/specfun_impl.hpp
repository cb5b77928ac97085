#pragma once

// Special functions templated on the working precision. Shared by every
// translation unit that nests these series inside larger sums.

#include <cmath>
#include <limits>
#include <vector>

#include "detail/real.hpp"
#include "detail/series.hpp"
#include "gsfpp/errors.hpp"
#include "gsfpp/specfun.hpp"

namespace gsfpp::detail {

/// Products longer than this switch to the log-gamma route.
inline constexpr long kBinomProductLimit = 400;

template <class Real>
Real gen_binom_t(const Real& a, long k) {
  if (k < 0) return Real(0);
  if (k == 0) return Real(1);
  const bool a_negative_integer = on_gamma_pole(Real(a + 1));
  if (k <= kBinomProductLimit || a_negative_integer) {
    Real p(1);
    for (long j = 0; j < k && p != 0; ++j) p *= (a - Real(j)) / Real(j + 1);
    return p;
  }
  const Real tail = a - Real(k) + 1;
  if (on_gamma_pole(tail)) return Real(0);
  using std::exp;
  const Real log_mag =
      log_abs_gamma(Real(a + 1)) - log_abs_gamma(Real(k + 1)) - log_abs_gamma(tail);
  const int sign = gamma_sign(Real(a + 1)) * gamma_sign(tail);
  return Real(sign) * exp(log_mag);
}

inline int ml3_first_check(const specfun::MLArgs& args) {
  double first = 0;
  if (args.offset <= 0) first = std::ceil((1.0 - args.offset) / args.order);
  if (args.upper < 0) first = std::max(first, std::ceil(-args.upper) + 1.0);
  return static_cast<int>(std::min(first, 1e6));
}

/// Parameters are taken in Real so that families such as offset = b n + 1 are
/// formed without double rounding.
template <class Real>
Tracked<Real> ml3_t(const Real& order, const Real& offset, const Real& upper, const Real& x,
                    const TruncationRule& rule) {
  Real pochhammer_power(1);  // x^r (upper)_r / r!
  auto term = [&](int r) -> Tracked<Real> {
    if (r > 0) pochhammer_power *= x * (upper + Real(r - 1)) / Real(r);
    const Real v = times_recip_gamma(pochhammer_power, Real(order * Real(r) + offset));
    return {v, real_abs(v)};
  };
  TruncationRule local = rule;
  local.first_check = std::max(
      rule.first_check,
      ml3_first_check({to_double(order), to_double(offset), to_double(upper), to_double(x)}));
  return sum_series<Real>(term, local, "ml3");
}

template <class Real>
Tracked<Real> ml3_t(const specfun::MLArgs& args, const TruncationRule& rule) {
  return ml3_t<Real>(Real(args.order), Real(args.offset), Real(args.upper), Real(args.x), rule);
}

inline int psi11_first_check(const specfun::WrightArgs& w) {
  double first = 0;
  if (w.den_shift <= 0 && w.den_scale > 0) first = std::ceil((1.0 - w.den_shift) / w.den_scale);
  if (w.num_shift <= 0) first = std::max(first, std::ceil((1.0 - w.num_shift) / w.num_scale));
  return static_cast<int>(std::min(first, 1e6));
}

template <class Real>
Tracked<Real> wright_psi11_t(const specfun::WrightArgs& w, const TruncationRule& rule) {
  using std::abs;
  using std::exp;
  using std::log;
  const Real num_shift(w.num_shift), num_scale(w.num_scale);
  const Real den_shift(w.den_shift), den_scale(w.den_scale);
  auto ratio_at = [&](int r, const Real& scale_power, int power_sign,
                      const Real& log_power) -> Real {
    const Real a = num_shift + num_scale * Real(r);
    const Real b = den_shift + den_scale * Real(r);
    if (on_gamma_pole(a)) {
      throw InvalidParam("wright_psi11: numerator gamma has a pole at term " + std::to_string(r));
    }
    if (on_gamma_pole(b)) return Real(0);
    if constexpr (is_double_v<Real>) {
      if (std::fabs(a) < 150 && std::fabs(b) < 150 && log_power > -600 && log_power < 600) {
        return gamma_fn(a) * recip_gamma_t(b) * scale_power;
      }
      const Real log_mag = log_abs_gamma(a) - log_abs_gamma(b) + log_power;
      return Real(power_sign * gamma_sign(a) * gamma_sign(b)) * exp(log_mag);
    } else {
      (void)log_power;
      if (abs(a) < 1000 && abs(b) < 1000) return gamma_fn(a) * recip_gamma_t(b) * scale_power;
      const Real log_mag = log_abs_gamma(a) - log_abs_gamma(b) + log(abs(scale_power));
      return Real(power_sign * gamma_sign(a) * gamma_sign(b)) * exp(log_mag);
    }
  };

  if (w.z == 0) {
    const Real v = ratio_at(0, Real(1), 1, Real(0));
    return {v, real_abs(v)};
  }
  const Real z(w.z);
  const Real log_abs_z = log(real_abs(z));
  const int z_sign = w.z < 0 ? -1 : 1;
  Real power(1);      // z^r / r!
  Real log_power(0);  // log |z^r / r!|
  int power_sign = 1;
  auto term = [&](int r) -> Tracked<Real> {
    if (r > 0) {
      power *= z / Real(r);
      log_power += log_abs_z - log(Real(r));
      power_sign *= z_sign;
    }
    const Real v = ratio_at(r, power, power_sign, log_power);
    return {v, real_abs(v)};
  };
  TruncationRule local = rule;
  local.first_check = std::max(rule.first_check, psi11_first_check(w));
  return sum_series<Real>(term, local, "wright_psi11");
}

/// The rows psi_m = 1psi1[(1, scale); (1 - m, scale) | z] for m = 0, 1, 2, ...
/// evaluated together. The gamma ratio of term r obeys
///   Gamma(1 + scale r) / Gamma(-m + scale r)
///     = Gamma(1 + scale r) / Gamma(1 - m + scale r) * (scale r - m),
/// so advancing to the next row costs one multiplication per term instead of
/// two gamma evaluations. Terms are stored as log-magnitude and sign because
/// z^r / r! and the ratio can each leave the floating range while their
/// product does not.
template <class Real>
class WrightRows {
 public:
  WrightRows(double scale, double z) : scale_(scale), z_(z) {}

  int row() const { return m_; }

  Tracked<Real> current(const TruncationRule& rule) {
    using std::exp;
    if (z_ == 0) {
      extend_to(0);
      const Real v = terms_[0].zero ? Real(0) : Real(terms_[0].sign) * exp(terms_[0].log_mag);
      return {v, real_abs(v)};
    }
    auto term = [&](int r) -> Tracked<Real> {
      extend_to(r);
      const Entry& e = terms_[r];
      if (e.zero) return {Real(0), Real(0)};
      const Real v = Real(e.sign) * exp(e.log_mag);
      return {v, real_abs(v)};
    };
    TruncationRule local = rule;
    local.first_check = std::max(rule.first_check,
                                 static_cast<int>(std::ceil(m_ / scale_)));
    return sum_series<Real>(term, local, "wright_psi11 rows");
  }

  void advance() {
    for (std::size_t r = 0; r < terms_.size(); ++r) {
      Entry& e = terms_[r];
      if (e.zero) continue;
      const double nominal = scale_ * static_cast<double>(r) - m_;
      if (std::fabs(nominal) <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, double(m_))) {
        e.zero = true;
        continue;
      }
      using std::log;
      const Real factor = Real(scale_) * Real(static_cast<double>(r)) - Real(m_);
      e.log_mag += log(real_abs(factor));
      if (factor < 0) e.sign = -e.sign;
    }
    ++m_;
  }

 private:
  struct Entry {
    Real log_mag{0};
    int sign = 1;
    bool zero = false;
  };

  void extend_to(int r) {
    using std::log;
    while (static_cast<int>(terms_.size()) <= r) {
      const int j = static_cast<int>(terms_.size());
      Entry e;
      const Real den = Real(1 - m_) + Real(scale_) * Real(static_cast<double>(j));
      if (on_gamma_pole(den)) {
        e.zero = true;
      } else {
        const Real num = Real(1) + Real(scale_) * Real(static_cast<double>(j));
        e.log_mag = log_abs_gamma(num) - log_abs_gamma(den) - log_abs_gamma(Real(j + 1));
        if (j > 0) e.log_mag += Real(static_cast<double>(j)) * log(real_abs(Real(z_)));
        e.sign = gamma_sign(den) * ((z_ < 0 && j % 2) ? -1 : 1);
      }
      terms_.push_back(e);
    }
  }

  double scale_;
  double z_;
  int m_ = 0;
  std::vector<Entry> terms_;
};

}  // namespace gsfpp::detail
