#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "gsfpp/errors.hpp"
#include "gsfpp/montecarlo.hpp"
#include "gsfpp/stats.hpp"
#include "gsfpp/subordinators.hpp"
#include "support/stat_tests.hpp"

using namespace gsfpp;

namespace {

using Sampler = std::function<double(RandomStream&)>;

std::vector<double> draws(std::uint64_t seed, std::size_t count, const Sampler& s) {
  return mc::generate<double>(seed, count, s);
}

/// Monte Carlo estimate of E exp(-mu X) against exp(-exponent).
LaplaceProbe mc_probe(const std::vector<double>& xs, double mu, double exponent) {
  std::vector<double> transformed(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) transformed[i] = std::exp(-mu * xs[i]);
  const auto est = stats::mean_with_error(transformed);
  return {mu, std::exp(-exponent), est.mean, est.std_error};
}

}  // namespace

TEST_CASE("samplers start at zero") {
  RandomStream rng(1);
  const ProcessParams p(0.3, 2.5, 0.7);
  CHECK(stable_sample(0.5, 0.0, rng) == 0.0);
  CHECK(tempered_stable_sample({0.5, 1.0}, 0.0, rng) == 0.0);
  CHECK(composite_sample(p, 0.0, rng) == 0.0);
  CHECK(subordinated_sample(p, 0.0, rng) == 0.0);
}

TEST_CASE("stable sampler rejects indices outside (0, 1)") {
  RandomStream rng(1);
  CHECK_THROWS_AS(stable_sample(1.0, 1.0, rng), InvalidParam);
  CHECK_THROWS_AS(stable_sample(0.0, 1.0, rng), InvalidParam);
  CHECK_THROWS_AS(stable_sample(0.5, -1.0, rng), InvalidParam);
  CHECK(stable_or_drift_sample(1.0, 2.5, rng) == 2.5);
}

TEST_CASE("stable Laplace transform and self-similarity") {
  const auto xs = draws(11, 100000, [](RandomStream& r) { return stable_sample(0.5, 1.0, r); });
  CHECK(mc_probe(xs, 1.0, 1.0).within_bound(3.0));

  const auto at4 = draws(12, 10000, [](RandomStream& r) { return stable_sample(0.5, 4.0, r); });
  auto at1 = draws(13, 10000, [](RandomStream& r) { return stable_sample(0.5, 1.0, r); });
  for (double& x : at1) x *= 16.0;
  CHECK(testing::ks_two_sample(at4, at1).p_value > 0.01);
}

TEST_CASE("tempered stable Laplace transform and vanishing tempering") {
  const TemperedParams tp(0.5, 1.0);
  const auto xs = draws(21, 100000, [&](RandomStream& r) { return tempered_stable_sample(tp, 1.0, r); });
  const auto probe = mc_probe(xs, 1.0, std::sqrt(2.0) - 1.0);
  CHECK(probe.closed_form == doctest::Approx(std::exp(1.0 - std::sqrt(2.0))).epsilon(1e-15));
  CHECK(probe.within_bound(3.0));

  const TemperedParams weak(0.5, 1e-6);
  const auto tempered = draws(22, 10000, [&](RandomStream& r) { return tempered_stable_sample(weak, 1.0, r); });
  const auto stable = draws(23, 10000, [](RandomStream& r) { return stable_sample(0.5, 1.0, r); });
  CHECK(testing::ks_two_sample(tempered, stable).p_value > 0.01);
}

TEST_CASE("tempered sampler splits long horizons") {
  const TemperedParams tp(0.7, 3.0);
  const auto xs = draws(24, 50000, [&](RandomStream& r) { return tempered_stable_sample(tp, 20.0, r); });
  const auto probe = mc_probe(xs, 0.5, 20.0 * tempered_laplace_exponent(tp, 0.5));
  CHECK(probe.within_bound(3.0));
}

TEST_CASE("tempered sampler honours its restart cap") {
  RandomStream rng(5);
  auto many = [&] {
    for (int i = 0; i < 200; ++i) tempered_stable_sample({0.5, 1.0}, 1.0, rng, {1, 10});
  };
  CHECK_THROWS_AS(many(), RestartCapExceeded);
  CHECK_THROWS_AS(tempered_stable_sample({0.5, 1.0}, 1000.0, rng, {100, 10}), RestartCapExceeded);
}

TEST_CASE("composite process Laplace transform") {
  const ProcessParams p(0.25, 2.0, 1.0);
  CHECK(composite_laplace_exponent(p, 1.0) == doctest::Approx(3.0));
  const auto xs = draws(31, 100000, [&](RandomStream& r) { return composite_sample(p, 1.0, r); });
  const auto probe = mc_probe(xs, 1.0, 3.0);
  CHECK(probe.closed_form == doctest::Approx(0.049787).epsilon(1e-4));
  CHECK(probe.within_bound(3.0));
}

TEST_CASE("single-component processes reduce to the stable subordinator") {
  const ProcessParams p(0.6, 0.8, 2.0);
  const ProcessParams unit(0.6, 1.0, 2.0);
  const auto stable = draws(41, 10000, [](RandomStream& r) { return stable_sample(0.6, 1.0, r); });
  const auto composite = draws(42, 10000, [&](RandomStream& r) { return composite_sample(p, 1.0, r); });
  const auto subordinated = draws(43, 10000, [&](RandomStream& r) { return subordinated_sample(unit, 1.0, r); });
  CHECK(testing::ks_two_sample(stable, composite).p_value > 0.01);
  CHECK(testing::ks_two_sample(stable, subordinated).p_value > 0.01);
}

TEST_CASE("unit stability factor gives a tempered delta-stable law") {
  const ProcessParams p(1.0, 0.6, 1.5);
  const TemperedParams tp(0.6, 1.5);
  const auto a = draws(51, 10000, [&](RandomStream& r) { return subordinated_sample(p, 1.0, r); });
  const auto b = draws(52, 10000, [&](RandomStream& r) { return tempered_stable_sample(tp, 1.0, r); });
  CHECK(testing::ks_two_sample(a, b).p_value > 0.01);
  RandomStream rng(3);
  CHECK(subordinated_sample(ProcessParams(1.0, 1.0), 2.5, rng) == 2.5);
}

TEST_CASE("laplace exponent examples") {
  CHECK(laplace_exponent(ProcessParams(0.5, 0.5, 1.0), 1.0) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(laplace_exponent(ProcessParams(1.0, 1.0), 3.7) == doctest::Approx(3.7).epsilon(1e-15));
  CHECK(laplace_exponent(ProcessParams(0.3, 2.5, 0.5), 1e-300) < 1e-80);
  double previous = 0;
  for (double mu = 0.01; mu < 50; mu *= 1.7) {
    const double v = laplace_exponent(ProcessParams(0.3, 1.7, 0.8), mu);
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("subordinated process Laplace transform over mu and t") {
  const ProcessParams p(0.3, 0.5, 1.0);
  {
    const auto xs = draws(61, 100000, [&](RandomStream& r) { return subordinated_sample(p, 1.0, r); });
    const auto probe = mc_probe(xs, 1.0, laplace_exponent(p, 1.0));
    CHECK(probe.closed_form == doctest::Approx(std::exp(1.0 - std::sqrt(2.0))).epsilon(1e-15));
    CHECK(probe.within_bound(3.0));
  }
  const ProcessParams q(0.3, 2.5, 0.8);
  for (double t : {0.5, 1.0}) {
    const auto xs = draws(62, 100000, [&](RandomStream& r) { return subordinated_sample(q, t, r); });
    for (double mu : {0.5, 1.0, 2.0}) {
      CHECK(mc_probe(xs, mu, t * laplace_exponent(q, mu)).within_bound(3.0));
    }
  }
}

TEST_CASE("Levy measure quadrature reproduces the Laplace exponent") {
  const auto probe = levy_identity_check(ProcessParams(0.5, 0.5, 1.0), 1.0, 1e-8);
  CHECK(probe.closed_form == doctest::Approx(0.414214).epsilon(1e-6));
  CHECK(probe.error() < 1e-8);
  const auto stable = levy_identity_check(ProcessParams(0.7, 1.0, 1.0), 2.0, 1e-8);
  CHECK(stable.closed_form == doctest::Approx(std::pow(2.0, 0.7)).epsilon(1e-14));
  CHECK(stable.error() < 1e-8);
  const auto tiny = levy_identity_check(ProcessParams(0.4, 0.9, 1.0), 1e-9, 1e-8);
  CHECK(tiny.closed_form < 1e-3);
  CHECK(tiny.error() < 1e-8);

  int checked = 0;
  for (double nu : {0.1, 0.2, 0.3}) {
    for (double delta : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
      for (double eta : {0.5, 2.0}) {
        for (double mu : {0.5, 3.0}) {
          const ProcessParams p(nu, delta, eta);
          const auto pr = levy_identity_check(p, mu, 1e-6);
          CHECK_MESSAGE(pr.error() < 1e-6, p.describe());
          ++checked;
        }
      }
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("coupled paths are monotone and increments add up in law") {
  const ProcessParams p(0.3, 1.5, 1.0);
  RandomStream rng(71);
  const std::vector<double> times{0.1, 0.2, 0.5, 0.5, 1.0, 3.0};
  for (int rep = 0; rep < 1000; ++rep) {
    const auto path = subordinated_path(p, times, rng);
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i] >= path[i - 1]);
  }

  const auto whole = draws(72, 10000, [&](RandomStream& r) { return subordinated_sample(p, 1.0, r); });
  for (int k : {2, 4}) {
    const auto summed = draws(73 + k, 10000, [&](RandomStream& r) {
      double s = 0;
      for (int i = 0; i < k; ++i) s += subordinated_sample(p, 1.0 / k, r);
      return s;
    });
    CHECK(testing::ks_two_sample(whole, summed).p_value > 0.01);
  }
}

TEST_CASE("equal seeds give bit-identical sequences") {
  const ProcessParams p(0.2, 2.3, 0.9);
  auto run = [&] {
    return mc::generate<double>(99, 10000, [&](RandomStream& r) { return subordinated_sample(p, 1.3, r); },
                                {3});
  };
  const auto a = run();
  const auto b = mc::generate<double>(99, 10000,
                                      [&](RandomStream& r) { return subordinated_sample(p, 1.3, r); }, {1});
  CHECK(a == b);
  CHECK(a == run());
}
