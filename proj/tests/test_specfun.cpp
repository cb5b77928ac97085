#include <doctest.h>

#include <cmath>

#include "gsfpp/errors.hpp"
#include "gsfpp/specfun.hpp"
#include "support/golden.hpp"

using namespace gsfpp::specfun;

TEST_CASE("recip_gamma values and poles") {
  CHECK(recip_gamma(1.0) == 1.0);
  CHECK(recip_gamma(0.0) == 0.0);
  CHECK(recip_gamma(-3.0) == 0.0);
  CHECK(recip_gamma(0.5) == doctest::Approx(golden::kRecipGammaHalf).epsilon(1e-15));
  CHECK(recip_gamma(150.0) > 0.0);
  CHECK(recip_gamma(200.0) == 0.0);  // underflows in double
  CHECK(std::isfinite(recip_gamma(-150.5)));
}

TEST_CASE("recip_gamma satisfies the gamma recurrence") {
  for (double x = -9.75; x < 60.0; x += 0.37) {
    if (is_nonpositive_integer(x)) continue;
    const double lhs = recip_gamma(x + 1.0);
    const double rhs = recip_gamma(x) / x;
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(rhs));
  }
}

TEST_CASE("generalized binomial coefficients") {
  CHECK(gen_binom(0.5, 2) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(gen_binom(3.0, 1) == 3.0);
  CHECK(gen_binom(0.5, 0) == 1.0);
  CHECK(gen_binom(3.0, 5) == 0.0);
  CHECK(gen_binom(10.0, 4) == 210.0);
  CHECK(gen_binom(-1.0, 7) == doctest::Approx(-1.0));
  // Long products and the log-gamma route agree around the switch point.
  const double direct = gen_binom(0.7, 400);
  const double via_logs = gen_binom(0.7, 401) * 401.0 / (0.7 - 400.0);
  CHECK(direct == doctest::Approx(via_logs).epsilon(1e-11));
}

TEST_CASE("ml3 examples") {
  CHECK(ml3({1, 1, 1, 1}) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
  CHECK(ml3({0.7, 1, 0, -3}) == 1.0);
  CHECK(ml3({1, 1, 2, 1}) == doctest::Approx(golden::kMl3UpperTwo).epsilon(1e-13));
  CHECK(mittag_leffler(0.7, -1.0) == doctest::Approx(golden::kMittagLeffler07AtMinus1).epsilon(1e-12));
  CHECK(mittag_leffler(0.5, -2.0) == doctest::Approx(golden::kMittagLeffler05AtMinus2).epsilon(1e-12));
  CHECK(ml3({0.4, 1.3, 0.7, -1.5}) == doctest::Approx(golden::kPrabhakarSample).epsilon(1e-12));
}

TEST_CASE("ml3 with unit parameters is the exponential on [-10, 10]") {
  for (double x = -10.0; x <= 10.0; x += 0.5) {
    const double expected = std::exp(x);
    CHECK(std::fabs(ml3({1, 1, 1, x}, {1e-13}) - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("ml3 with zero upper index is recip_gamma of the offset") {
  for (double offset : {-2.0, -0.5, 0.3, 1.0, 2.5, 7.0}) {
    CHECK(ml3({0.6, offset, 0.0, 4.2}) == recip_gamma(offset));
  }
}

TEST_CASE("truncation consistency under a tenfold tolerance reduction") {
  const MLArgs cases[] = {{0.5, 1, 1, -2}, {0.8, 1.5, 0.6, -3}, {1.2, 0.4, 2.0, 1.5},
                          {0.3, 2.0, 0.5, -0.8}};
  for (const auto& a : cases) {
    for (double tol : {1e-6, 1e-9, 1e-12}) {
      const double coarse = ml3(a, {tol});
      const double fine = ml3(a, {tol / 10});
      CHECK(std::fabs(coarse - fine) < tol * std::max(1.0, std::fabs(fine)));
    }
  }
  const WrightArgs w{1, 0.5, 0, 0.5, -1};
  CHECK(std::fabs(wright_psi11(w, {1e-8}) - wright_psi11(w, {1e-9})) < 1e-8);
}

TEST_CASE("extended precision rescues cancellation") {
  const MLArgs hard{0.5, 1, 1, -6};
  const auto automatic = ml3_detailed(hard);
  const auto extended = ml3_detailed(hard, {1e-13, Precision::extended});
  CHECK(automatic.extended);
  CHECK(automatic.value == doctest::Approx(extended.value).epsilon(1e-13));
  // Double alone loses every digit here: terms reach e^36.
  CHECK(std::fabs(ml3(hard, {1e-13, Precision::standard}) - extended.value) > 1e-6);
  // erfc-type closed form: E_{1/2}(-x) = exp(x^2) erfc(x).
  CHECK(extended.value == doctest::Approx(std::exp(36.0) * std::erfc(6.0)).epsilon(1e-12));
}

TEST_CASE("wright_psi11 examples") {
  CHECK(wright_psi11({1, 1, 1, 1, 0.5}) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
  CHECK(wright_psi11({1, 1, 1, 1, -1}) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(wright_psi11({1, 0.5, 0, 0.5, -1}) == doctest::Approx(golden::kPsi11HalfScale).epsilon(1e-12));
  for (double z = -8; z <= 8; z += 1.0) {
    CHECK(wright_psi11({1, 1, 1, 1, z}) == doctest::Approx(std::exp(z)).epsilon(1e-12));
  }
}

TEST_CASE("invalid arguments are rejected") {
  CHECK_THROWS_AS(ml3({0.0, 1, 1, 1}), gsfpp::InvalidParam);
  CHECK_THROWS_AS(ml3({1, 1, 1, 1}, {0.0}), gsfpp::InvalidParam);
  CHECK_THROWS_AS(wright_psi11({1, 0.0, 1, 1, 1}), gsfpp::InvalidParam);
  CHECK_THROWS_AS(wright_psi11({-1, 1, 1, 1, 1}), gsfpp::InvalidParam);
}

TEST_CASE("series outside the practical domain report non-convergence") {
  CHECK_THROWS_AS(ml3({0.1, 1, 1, -200}, {1e-13, Precision::standard, 200}), gsfpp::NonConvergence);
}
