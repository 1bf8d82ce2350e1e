#include <cmath>
#include <numbers>
#include <random>

#include "causal/errors.hpp"
#include "causal/qft.hpp"
#include "doctest.h"

using namespace causal;
using namespace causal::qft;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {
testfunc::SrtfParams params(double mu2) {
  testfunc::SrtfParams s;
  s.mu2 = mu2;
  return s;
}
}  // namespace

TEST_CASE("Euclidean propagator at coincident points") {
  for (double mu2 : {1.5, 2.0, 4.0}) {
    const auto r = delta0_euclid(4, 1.0, params(mu2));
    REQUIRE(r.closed_form);
    CHECK(r.value.real() == Approx((mu2 - 1.0 - std::log(mu2)) / (16.0 * kPi * kPi)).epsilon(1e-5));
    CHECK(*r.rel_deviation < 1e-5);
  }
  CHECK(delta0_euclid(4, 1.0, params(2.0)).value.real() ==
        Approx(0.00194316817935457).epsilon(1e-10));
  CHECK(delta0_euclid(2, 1.0, params(2.0)).value.real() ==
        Approx(0.0551589000381629).epsilon(1e-10));
  CHECK(delta0_euclid(2, 1.0, params(2.0)).value.real() ==
        Approx(std::log(2.0) / (4.0 * kPi)).epsilon(1e-6));
  CHECK(std::abs(delta0_euclid(4, 1.0, params(1.0001)).value) < 1e-9);
  CHECK(std::abs(delta0_euclid(2, 1.0, params(1.0001)).value) < 1e-5);
  CHECK_THROWS_AS(delta0_euclid(3, 1.0, params(2.0)), InputError);
}

TEST_CASE("p0 Plemelj split") {
  auto s = params(2.0);
  s.alpha_limit = true;
  for (double p : {0.0, 0.5, 3.0}) {
    for (int sign : {1, -1}) {
      const auto r = pv_lemma_minkowski(p, 1.0, s, sign);
      CHECK(std::abs(r.principal) < 1e-6);
      CHECK(std::abs(std::abs(r.total.imag()) - kPi) < 1e-6);
    }
  }
  auto finite = params(2.0);
  finite.alpha = 0.9;
  const double beyond = 2.0 * std::sqrt(finite.x_max());
  const auto z = pv_lemma_minkowski(beyond, 1.0, finite, 1);
  CHECK(std::abs(z.total) < 1e-12);
}

TEST_CASE("Minkowski propagator") {
  const auto d2 = delta0_minkowski(2, 1.0, params(2.0));
  CHECK(d2.value.imag() == Approx(-4.3551721806).epsilon(1e-9));
  CHECK(d2.value.imag() == Approx(-2.0 * kPi * std::log(2.0)).epsilon(1e-6));
  const auto d4 = delta0_minkowski(4, 1.0, params(2.0));
  CHECK(d4.value.imag() == Approx(-3.02851593723).epsilon(1e-9));
  const auto e4 = delta0_euclid(4, 1.0, params(2.0));
  CHECK(std::abs(d4.value / e4.value - minkowski_euclid_ratio()) <
        1e-4 * std::abs(minkowski_euclid_ratio()));
  const auto pv = delta0_minkowski_pv_form(1.0, 2.0);
  CHECK(std::abs(pv.value - d2.value) < 1e-6 * std::abs(d2.value));
}

TEST_CASE("Pauli-Villars decomposition") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double m = u(rng);
    const std::vector<double> lambdas{m + u(rng), m + 3.0 + u(rng)};
    const auto [prod, frac] = pv_decomposition(m, lambdas, u(rng));
    CHECK(prod == Approx(frac).epsilon(1e-10));
  }
  CHECK_THROWS_AS(pv_decomposition(1.0, {1.0, 2.0}, 1.0), InputError);
  // Fall-off p^-6 for two regulators.
  const auto a = pv_decomposition(1.0, {2.0, 3.0}, 1e6).first;
  const auto b = pv_decomposition(1.0, {2.0, 3.0}, 1e7).first;
  CHECK(std::log(b / a) / std::log(10.0) == Approx(-3.0).epsilon(1e-3));
}

TEST_CASE("two-regulator bracket") {
  const double m = 1.0, l1 = 2.0, l2 = 3.0;
  const auto c = pv_coefficients(m, l1, l2);
  const double big = 1e5, bigger = 1e6;
  const double slope = std::log(pv_bracket(c, m, l1, l2, bigger) / pv_bracket(c, m, l1, l2, big)) /
                       std::log(10.0);
  CHECK(slope == Approx(-3.0).epsilon(1e-3));
  CHECK(pv_confluent(1.0, 0.0) == Approx(1.0));
  CHECK(pv_confluent(2.0, 4.0) == Approx(16.0 / 512.0));
}

TEST_CASE("one-loop four-point function") {
  auto s = params(2.0);
  const double pref = 1.0 / (16.0 * kPi * kPi);
  CHECK(one_loop_I(0.0, 1.0, s).value.real() == Approx(std::log(2.0) * pref).epsilon(1e-8));
  CHECK(one_loop_I(0.5, 1.0, s).value.real() == Approx(0.00388633635870686).epsilon(1e-9));
  CHECK(one_loop_I(1.0, 1.0, s).value.real() == Approx(0.00342657145711054).epsilon(1e-9));
  CHECK(one_loop_I(10.0, 1.0, s).value.real() == Approx(-0.00151177730981111).epsilon(1e-9));
  const double hi = one_loop_I(1e4, 1.0, s).value.real();
  const double higher = one_loop_I(1e5, 1.0, s).value.real();
  CHECK((hi - higher) == Approx(std::log(10.0) * pref).epsilon(1e-3));
  CHECK(log_feynman_integral(0.0) == 0.0);
  CHECK(log_feynman_integral(1e-4) == Approx(1e-4 / 6.0).epsilon(1e-4));
}

TEST_CASE("Schwinger representation") {
  const auto r = schwinger_delta0(1.0, params(2.0));
  CHECK(r.value.real() == Approx(delta0_euclid(4, 1.0, params(2.0)).value.real()).epsilon(1e-4));
  CHECK(std::abs(schwinger_delta0(1.0, params(1.0001)).value) < 1e-9);
  auto s = params(2.0);
  s.alpha = 0.9;
  for (int i = 0; i <= 12; ++i) {
    const double u = std::pow(10.0, -6.0 + 0.5 * i);
    CHECK(std::isfinite(schwinger_rewritten_integrand(1.0, u, s)));
  }
}

TEST_CASE("sunset grows as the cutoff is removed") {
  const auto s = params(2.0);
  const double a = sunset_qualitative(1.0, s, 1e-2).value.real();
  const double b = sunset_qualitative(1.0, s, 1e-3).value.real();
  const double c = sunset_qualitative(1.0, s, 1e-4).value.real();
  CHECK(std::isfinite(c));
  CHECK(a < b);
  CHECK(b < c);
  // Regression values at relative tolerance 1e-3.
  CHECK(a == Approx(0.00237).epsilon(1e-2));
  CHECK(b == Approx(0.0320).epsilon(1e-2));
  CHECK(c == Approx(0.341).epsilon(1e-2));
  CHECK(sunset_qualitative(1.0, s, 60.0, 50.0).value == 0.0);
}
