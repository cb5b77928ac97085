#include "gsfpp/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "detail/specfun_impl.hpp"

namespace gsfpp::specfun {
namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidParam(std::string(name) + " must be finite");
}

void require_options(const SeriesOptions& o) {
  if (!(o.tol > 0)) throw InvalidParam("series tolerance must satisfy tol > 0");
  if (o.max_terms < 1) throw InvalidParam("series term cap must be positive");
}

}  // namespace

bool is_nonpositive_integer(double x) { return detail::near_nonpositive_integer(x); }

double recip_gamma(double x) { return detail::recip_gamma_t(x); }

double gen_binom(double a, long k) { return detail::gen_binom_t(a, k); }

SeriesEvaluation ml3_detailed(const MLArgs& args, const SeriesOptions& options) {
  require_options(options);
  if (!(args.order > 0)) throw InvalidParam("ml3: order must satisfy order > 0");
  require_finite(args.offset, "ml3 offset");
  require_finite(args.upper, "ml3 upper index");
  require_finite(args.x, "ml3 argument");
  const detail::TruncationRule rule{options.tol, 0, options.max_terms};
  return detail::evaluate_with_precision(
      options.precision, options.tol, std::numeric_limits<double>::min(),
      [&]<class Real>() { return detail::ml3_t<Real>(args, rule); });
}

double ml3(const MLArgs& args, const SeriesOptions& options) {
  return ml3_detailed(args, options).value;
}

double mittag_leffler(double order, double x, const SeriesOptions& options) {
  return ml3({order, 1.0, 1.0, x}, options);
}

SeriesEvaluation wright_psi11_detailed(const WrightArgs& args, const SeriesOptions& options) {
  require_options(options);
  if (!(args.num_scale > 0)) throw InvalidParam("wright_psi11: requires num_scale > 0");
  require_finite(args.num_shift, "wright_psi11 num_shift");
  require_finite(args.den_shift, "wright_psi11 den_shift");
  require_finite(args.den_scale, "wright_psi11 den_scale");
  require_finite(args.z, "wright_psi11 argument");
  const detail::TruncationRule rule{options.tol, 0, options.max_terms};
  return detail::evaluate_with_precision(
      options.precision, options.tol, std::numeric_limits<double>::min(),
      [&]<class Real>() { return detail::wright_psi11_t<Real>(args, rule); });
}

double wright_psi11(const WrightArgs& args, const SeriesOptions& options) {
  return wright_psi11_detailed(args, options).value;
}

}  // namespace gsfpp::specfun
