#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <vector>

#include "gsfpp/errors.hpp"
#include "gsfpp/montecarlo.hpp"
#include "gsfpp/process.hpp"
#include "gsfpp/stats.hpp"
#include "gsfpp/subordinators.hpp"
#include "gsfpp/timefrac.hpp"
#include "support/golden.hpp"
#include "support/stat_tests.hpp"

using namespace gsfpp;

namespace {

const ProcessParams kSpace(0.5, 0.5, 1.0, 1.0);
const TimeFracParams kClock(0.4, 0.4, 0.5, 1.0);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  double m = 0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

std::vector<double> closed(const std::vector<double>& probs) {
  double kept = 0;
  for (double v : probs) kept += v;
  return stats::with_tail_bin(probs, 1.0 - kept);
}

// Regularized Prabhakar derivative by direct quadrature of its convolution
// form, for f(t) = t^(c-1) E^g_(alpha, c)(-omega t^alpha) with c > 1.
double prabhakar_by_quadrature(const TimeFracParams& q, double c, double g, double t) {
  const double scale = -q.omega();
  auto integrand = [&](double y, double t_minus_y) {
    if (y <= 0 || t_minus_y <= 0) return 0.0;
    const double kernel = std::pow(t_minus_y, -q.beta()) *
                          specfun::ml3({q.alpha(), 1.0 - q.beta(), -q.gamma(), scale * std::pow(t_minus_y, q.alpha())});
    const double derivative =
        std::pow(y, c - 2.0) * specfun::ml3({q.alpha(), c - 1.0, g, scale * std::pow(y, q.alpha())});
    return kernel * derivative;
  };
  boost::math::quadrature::tanh_sinh<double> quad;
  return quad.integrate(
      [&](double y, double complement) { return integrand(y, y > t / 2 ? complement : t - y); }, 0.0, t,
      1e-12);
}

}  // namespace

TEST_CASE("pgf_tf special values") {
  for (double t : {0.0, 0.3, 2.0}) CHECK(pgf_tf(kSpace, kClock, 1.0, t) == 1.0);
  CHECK(pgf_tf(kSpace, kClock, 0.2, 0.0) == 1.0);
  CHECK_THROWS_AS(pgf_tf(kSpace, kClock, 1.2, 1.0), InvalidParam);

  // Time-fractional Poisson: E_beta(-lambda (1 - u) t^beta); classical at beta = 1.
  const ProcessParams poisson(1.0, 1.0, 1.0, 1.6);
  for (double beta : {0.3, 0.7, 1.0}) {
    const TimeFracParams q(0.5, beta, 0.0, 1.0);
    for (double u : {-0.5, 0.0, 0.7}) {
      const double expected = specfun::mittag_leffler(beta, -1.6 * (1 - u) * std::pow(1.3, beta));
      CHECK(pgf_tf(poisson, q, u, 1.3) == doctest::Approx(expected).epsilon(1e-11));
    }
  }
  CHECK(pgf_tf(poisson, TimeFracParams(0.5, 1.0, 0.0, 1.0), 0.25, 0.8) ==
        doctest::Approx(std::exp(-1.6 * 0.75 * 0.8)).epsilon(1e-12));

  // Space-time fractional Poisson at gamma = 0, delta = 1.
  const ProcessParams space(0.6, 1.0, 1.0, 1.0);
  const TimeFracParams q(0.5, 0.8, 0.0, 1.0);
  const double x = std::pow(0.6, 0.6);
  CHECK(pgf_tf(space, q, 0.4, 1.1) ==
        doctest::Approx(specfun::mittag_leffler(0.8, -x * std::pow(1.1, 0.8))).epsilon(1e-11));
}

TEST_CASE("pgf_tf decreases in t and reaches a usable horizon") {
  double previous = 1.0;
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 18.0}) {
    const double g = pgf_tf(ProcessParams(0.5, 1.0), kClock, 0.3, t);
    CHECK(g < previous);
    CHECK(g > 0);
    previous = g;
  }
  CHECK_THROWS_AS(pgf_tf(ProcessParams(0.5, 1.0), kClock, 0.3, 40.0), NonConvergence);
}

TEST_CASE("pmf_tf example values") {
  const ProcessParams p(0.5, 1.0, 1.0, 1.0);
  const Pmf s = pmf_tf(p, kClock, 0.5, 10, PmfRoute::series);
  CHECK(s.method == PmfMethod::series);
  for (int k = 0; k <= 10; ++k) CHECK(std::fabs(s.probs[k] - golden::kPmfTfSample[k]) < 1e-13);
  const Pmf o = pmf_tf_oracle(p, kClock, 0.5, 10);
  CHECK(o.method == PmfMethod::oracle);
  for (int k = 0; k <= 10; ++k) CHECK(std::fabs(o.probs[k] - golden::kPmfTfSample[k]) < 1e-9);
  CHECK(s.probs[0] == doctest::Approx(pgf_tf(p, kClock, 0.0, 0.5)).epsilon(1e-12));
}

TEST_CASE("pmf_tf series agrees with the oracle") {
  struct Case {
    ProcessParams p;
    double t;
  };
  for (const Case& c : {Case{ProcessParams(0.6, 0.5, 2.0), 0.5}, Case{ProcessParams(0.6, 0.5, 2.0), 2.0},
                        Case{ProcessParams(0.3, 2.0, 1.0), 0.1}, Case{ProcessParams(0.3, 2.0, 1.0), 0.5},
                        Case{ProcessParams(0.3, 1.5, 1.5), 0.5}, Case{ProcessParams(0.5, 1.0), 3.0}}) {
    const Pmf s = pmf_tf(c.p, kClock, c.t, 30, PmfRoute::series);
    const Pmf o = pmf_tf_oracle(c.p, kClock, c.t, 30);
    CHECK_MESSAGE(max_abs_diff(s.probs, o.probs, 31) < 1e-9, c.p.describe() << " t = " << c.t);
  }
  // Non-integer delta with lambda^nu >= eta is out of reach of the series.
  const ProcessParams beyond(0.5, 0.5, 1.0, 1.0);
  CHECK_THROWS_AS(pmf_tf(beyond, kClock, 1.0, 5, PmfRoute::series), NonConvergence);
  CHECK(pmf_tf(beyond, kClock, 1.0, 5).method == PmfMethod::oracle);
}

TEST_CASE("pmf_tf reduction lattice") {
  const TimeFracParams classical(0.5, 1.0, 0.0, 1.0);
  for (const ProcessParams& p : {ProcessParams(0.9, 1.0), ProcessParams(0.5, 0.5, 2.0),
                                 ProcessParams(0.3, 1.5, 1.0), ProcessParams(0.45, 2.0, 0.5)}) {
    for (double t : {0.5, 1.0}) {
      const Pmf a = pmf_tf(p, classical, t, 10);
      const Pmf b = pmf(p, t, 10);
      CHECK_MESSAGE(max_abs_diff(a.probs, b.probs, 11) < 1e-8, p.describe());
    }
  }
  for (double beta : {0.3, 0.6, 0.9}) {
    for (double lambda : {0.5, 2.0}) {
      const double t = 1.4;
      const Pmf s = pmf_tf(ProcessParams(1.0, 1.0, 1.0, lambda), TimeFracParams(0.5, beta, 0.0, 1.0), t, 0);
      CHECK(std::fabs(s.probs[0] - specfun::mittag_leffler(beta, -lambda * std::pow(t, beta))) < 1e-10);
    }
  }
  for (double nu : {0.3, 0.8}) {
    const Pmf a = pmf_tf(ProcessParams(nu, 1.0, 1.0, 1.5), classical, 0.9, 15);
    const Pmf b = pmf_space_fractional(nu, 1.5, 0.9, 15);
    CHECK(max_abs_diff(a.probs, b.probs, 16) < 1e-8);
  }
}

TEST_CASE("pmf_tf values are probabilities") {
  for (const ProcessParams& p : {ProcessParams(0.5, 1.0), ProcessParams(0.3, 2.0, 0.5),
                                 ProcessParams(1.0, 0.7, 1.0, 2.0)}) {
    for (double t : {0.1, 1.0, 2.0}) {
      const Pmf r = pmf_tf(p, kClock, t, 100);
      for (double v : r.probs) CHECK((v >= 0 && v <= 1));
      CHECK(r.partial_sum() <= 1.0 + 1e-6);
    }
  }
  // Both routes lose every digit to cancellation beyond the usable horizon.
  CHECK_THROWS_AS(pmf_tf(ProcessParams(0.3, 2.0, 1.0), kClock, 3.0, 30), NonConvergence);
  const TimeFracParams q(0.4, 0.4, 0.5, 1.0);
  const Pmf zero = pmf_tf(kSpace, q, 0.0, 3);
  CHECK(zero.probs == std::vector<double>{1, 0, 0, 0});
}

TEST_CASE("Laplace transform of the pgf") {
  CHECK(pgf_tf_laplace(kSpace, kClock, 1.0, 2.5) == doctest::Approx(1 / 2.5).epsilon(1e-15));
  const ProcessParams poisson(1.0, 1.0, 1.0, 1.7);
  const TimeFracParams classical(0.5, 1.0, 0.0, 1.0);
  CHECK(pgf_tf_laplace(poisson, classical, 0.4, 3.0) ==
        doctest::Approx(1 / (3.0 + 1.7 * 0.6)).epsilon(1e-14));

  // Numerical time transform of the series on [0, T] plus the bound on the rest.
  for (double s : {2.0, 5.0}) {
    const double u = 0.5;
    const double horizon = std::log(1e8 / s) / s;
    boost::math::quadrature::tanh_sinh<double> quad;
    const double head = quad.integrate(
        [&](double t) { return std::exp(-s * t) * pgf_tf(kSpace, kClock, u, t); }, 0.0, horizon, 1e-10);
    CHECK(std::fabs(head - pgf_tf_laplace(kSpace, kClock, u, s)) < 1e-5 + std::exp(-s * horizon) / s);
  }
}

TEST_CASE("Prabhakar transform of kernel sums") {
  const MLSeriesFunction one{kClock.alpha(), -kClock.omega(), {{1.0, 1.0, 0.0}}};
  CHECK(prabhakar_transform(one, kClock).terms.empty());
  for (double t : {0.1, 1.0, 3.0}) CHECK(prabhakar_apply(one, kClock, t) == 0.0);

  // Caputo derivative of t.
  for (double beta : {0.3, 0.5, 0.9}) {
    const TimeFracParams caputo(0.7, beta, 0.0, 1.0);
    const MLSeriesFunction linear{0.7, -1.0, {{1.0, 2.0, 0.0}}};
    for (double t : {0.2, 1.0, 2.5}) {
      CHECK(prabhakar_apply(linear, caputo, t) ==
            doctest::Approx(std::pow(t, 1 - beta) / std::tgamma(2 - beta)).epsilon(1e-13));
    }
  }

  // Against the defining convolution integral.
  for (const auto& [c, g] : {std::pair{2.0, 0.0}, std::pair{1.7, 0.8}, std::pair{2.4, 1.5}}) {
    const MLSeriesFunction f{kClock.alpha(), -kClock.omega(), {{1.0, c, g}}};
    for (double t : {0.3, 1.0}) {
      CHECK_MESSAGE(std::fabs(prabhakar_apply(f, kClock, t) - prabhakar_by_quadrature(kClock, c, g, t)) < 1e-8,
                    "c = " << c << ", g = " << g << ", t = " << t);
    }
  }

  const MLSeriesFunction wrong_scale{kClock.alpha(), -2.0, {{1.0, 2.0, 0.0}}};
  CHECK_THROWS_AS(prabhakar_transform(wrong_scale, kClock), InvalidParam);
  const MLSeriesFunction singular{kClock.alpha(), -1.0, {{1.0, 0.5, 0.0}}};
  CHECK_THROWS_AS(prabhakar_transform(singular, kClock), InvalidParam);
}

TEST_CASE("pgf series solves the Cauchy problem") {
  const ProcessParams p(0.5, 1.0, 1.0, 1.0);
  for (double u : {0.0, 0.5, 0.9}) {
    const MLSeriesFunction g = pgf_tf_kernels(p, kClock, u, 60);
    CHECK(g.initial_value() == 1.0);
    for (double t : {0.1, 0.5, 1.0}) {
      CHECK(g(t) == doctest::Approx(pgf_tf(p, kClock, u, t)).epsilon(1e-12));
      const double residual = prabhakar_apply(g, kClock, t) + space_exponent(p, u) * g(t);
      CHECK(std::fabs(residual) < 1e-6);
    }
  }
}

TEST_CASE("inverse clock Laplace transform") {
  CHECK(inverse_clock_laplace(kClock, 0.0, 1.0) == 1.0);
  CHECK(inverse_clock_laplace(kClock, 2.0, 0.0) == 1.0);
  InverseClockSeries series(kClock, 0.7);
  for (double x : {0.1, 0.8, 2.0}) {
    CHECK(std::abs(series(x) - inverse_clock_laplace(kClock, x, 0.7)) < 1e-12);
  }
  CHECK(clock_laplace_exponent(TimeFracParams(0.5, 0.6, 0.0, 1.0), 4.0) ==
        doctest::Approx(std::pow(4.0, 0.6)).epsilon(1e-15));
}

TEST_CASE("inverse clock sampling") {
  RandomStream rng(21);
  const ClockGrid grid{1e-2};
  CHECK(inverse_clock_sample(kClock, 0.0, grid, rng) == 0.0);
  for (int rep = 0; rep < 200; ++rep) {
    const auto path = inverse_clock_path(kClock, {0.0, 0.1, 0.5, 1.0, 2.0}, grid, rng);
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i] >= path[i - 1]);
  }
  CHECK_THROWS_AS(inverse_clock_sample(kClock, 50.0, ClockGrid{1e-3, 100}, rng), GridExhausted);

  // The exact gamma = 0 draw and its grid path share the Mittag-Leffler law.
  const TimeFracParams stable(0.5, 0.6, 0.0, 1.0);
  const auto exact = mc::generate<double>(22, 20000, [&](RandomStream& r) {
    return inverse_clock_sample(stable, 1.0, grid, r);
  });
  const auto gridded = mc::generate<double>(23, 20000, [&](RandomStream& r) {
    return inverse_clock_path(stable, {1.0}, ClockGrid{1e-3}, r).front();
  });
  CHECK(testing::ks_two_sample(exact, gridded).p_value > 0.01);
  std::vector<double> transform(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) transform[i] = std::exp(-exact[i]);
  const auto m = stats::mean_with_error(transform);
  CHECK(std::fabs(m.mean - specfun::mittag_leffler(0.6, -1.0)) < 3 * m.std_error);
}

TEST_CASE("Laplace functional of the time-changed subordinator") {
  const double t = 1.0;
  for (double mu : {1.0, 2.0}) {
    const auto draws = mc::generate<double>(30 + static_cast<int>(mu), 20000, [&](RandomStream& r) {
      const double clock = inverse_clock_sample(kClock, t, ClockGrid{1e-2 * t}, r);
      return std::exp(-mu * subordinated_sample(kSpace, clock, r));
    });
    const auto m = stats::mean_with_error(draws);
    CHECK(std::fabs(m.mean - time_changed_laplace(kSpace, kClock, mu, t)) < 3 * m.std_error);
  }
}

TEST_CASE("time-fractional sampler") {
  RandomStream rng(40);
  CHECK(sample_tf(kSpace, kClock, 0.0, ClockGrid{1e-2}, rng).value == 0);

  // beta = 1, gamma = 0 leaves the clock at t.
  const ProcessParams p(1.0, 0.7, 1.0, 1.0);
  const TimeFracParams classical(0.5, 1.0, 0.0, 1.0);
  const auto a = mc::generate<std::int64_t>(41, 100000, [&](RandomStream& r) {
    return sample_tf(p, classical, 1.0, ClockGrid{1e-2}, r).value;
  });
  const Pmf reference = pmf(p, 1.0, 40);
  CHECK(stats::total_variation(stats::empirical_pmf(a, 40), closed(reference.probs)) < 0.01);

  const auto b = mc::generate<std::int64_t>(42, 100000, [&](RandomStream& r) {
    return sample_tf(p, kClock, 1.0, ClockGrid{1e-2}, r).value;
  });
  const Pmf target = pmf_tf(p, kClock, 1.0, 200);
  const int k_cut = stats::mass_quantile(target.probs, 0.999);
  REQUIRE(k_cut > 0);
  std::vector<double> kept(target.probs.begin(), target.probs.begin() + k_cut + 1);
  CHECK(stats::total_variation(stats::empirical_pmf(b, k_cut), closed(kept)) < 0.02);
}

TEST_CASE("time-fractional paths") {
  const ProcessParams p(0.4, 1.5, 1.0, 1.0);
  const ClockGrid grid{1e-2};
  RandomStream rng(50);
  for (int rep = 0; rep < 200; ++rep) {
    const auto path = sample_tf_path(p, kClock, {0.3, 1.0, 1.0, 2.0}, grid, rng);
    CHECK(path[1].t == 1.0);
    for (std::size_t i = 1; i < path.size(); ++i) {
      CHECK(path[i].value >= path[i - 1].value);
      CHECK(path[i].clock_value >= path[i - 1].clock_value);
    }
  }
  const auto ends = mc::generate<double>(51, 5000, [&](RandomStream& r) {
    return sample_tf_path(p, kClock, {0.5, 1.0}, grid, r).back().clock_value;
  });
  const auto singles = mc::generate<double>(52, 5000, [&](RandomStream& r) {
    return sample_tf(p, kClock, 1.0, grid, r).clock_value;
  });
  CHECK(testing::ks_two_sample(ends, singles).p_value > 0.01);
}

TEST_CASE("time-fractional parameter constraints") {
  CHECK_THROWS_AS(TimeFracParams(0.4, 0.6, 0.5, 1.0), InvalidParam);
  CHECK_THROWS_AS(TimeFracParams(0.4, 0.4, -0.1, 1.0), InvalidParam);
  CHECK_THROWS_AS(TimeFracParams(0.4, 0.4, 0.5, 0.0), InvalidParam);
  CHECK_NOTHROW(TimeFracParams(0.4, 0.6, 0.0, 1.0));
  CHECK_THROWS_AS(pmf_tf(kSpace, kClock, -1.0, 3), InvalidParam);
  CHECK_THROWS_AS(pgf_tf_kernels(kSpace, kClock, 0.5, 0), InvalidParam);
}
