#include <cmath>
#include <numbers>

#include "causal/errors.hpp"
#include "causal/quadrature.hpp"
#include "causal/testfunc.hpp"
#include "doctest.h"

using namespace causal;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

TEST_CASE("integrate_1d on finite and semi-infinite ranges") {
  const auto a = quad::integrate_1d([](double x) { return x; }, 0.0, 1.0);
  CHECK(a.converged);
  CHECK(a.value == Approx(0.5).epsilon(1e-14));
  const auto b = quad::integrate_1d([](double x) { return std::exp(-x); }, 0.0, quad::kInf);
  CHECK(b.converged);
  CHECK(b.value == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mollifier norm integral") {
  // Oracle from 30-digit adaptive quadrature.
  const auto r = quad::integrate_1d(
      [](double x) { return std::abs(x) < 1.0 ? std::exp(1.0 / (x * x - 1.0)) : 0.0; }, -1.0,
      1.0);
  CHECK(r.value == Approx(0.443993816168079437823).epsilon(1e-12));
  CHECK(1.0 / testfunc::mollifier_norm() == Approx(0.443993816168079437823).epsilon(1e-12));
}

TEST_CASE("non-convergence is reported, not thrown") {
  quad::QuadratureConfig cfg;
  cfg.max_subdivisions = 2;
  cfg.rel_tol = 1e-15;
  cfg.abs_tol = 0.0;
  const auto r = quad::integrate_1d([](double x) { return std::sin(1.0 / x); }, 1e-3, 1.0, cfg);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(quad::require_converged(r, "test"), NumericFailure);
}

TEST_CASE("principal values") {
  CHECK(std::abs(quad::integrate_pv([](double) { return 1.0; }, 0.0, -1.0, 1.0).value) < 1e-12);
  CHECK(std::abs(quad::integrate_pv([](double) { return 1.0; }, 1.0, 0.0, 2.0).value) < 1e-12);
  // PV ∫ dx / ((x - 2)(x^2 + 1)) over the line equals -2 pi / 5 by residues.
  const auto r = quad::integrate_pv([](double x) { return 1.0 / (x * x + 1.0); }, 2.0,
                                    -quad::kInf, quad::kInf);
  CHECK(r.value == Approx(-2.0 * kPi / 5.0).epsilon(1e-8));
  CHECK_THROWS_AS(quad::integrate_pv([](double) { return 1.0; }, 3.0, 0.0, 2.0), InputError);
}

TEST_CASE("nested and box integration") {
  const std::pair<double, double> cube[] = {{0, 1}, {0, 1}, {0, 1}};
  const auto v = quad::integrate_box([](std::span<const double>) { return 1.0; }, cube);
  CHECK(v.value == Approx(1.0).epsilon(1e-12));
  const std::pair<double, double> plane[] = {{-quad::kInf, quad::kInf}, {-quad::kInf, quad::kInf}};
  const auto g = quad::integrate_box(
      [](std::span<const double> x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); }, plane);
  CHECK(g.value == Approx(kPi).epsilon(1e-7));
  const auto s = quad::integrate_simplex([](std::span<const double>) { return 1.0; }, 2);
  CHECK(s.value == Approx(0.5).epsilon(1e-10));
}

TEST_CASE("x,t double integral of the one-loop function at mu2 = 2, k2 = m2") {
  // ∫_0^1 dx ∫_1^{mu2/(x(1-x)+1)} dt/t against the closed form
  // log mu2 - ∫_0^1 log(1 + x(1-x)) dx.
  const double mu2 = 2.0;
  std::vector<quad::LevelLimits> lim{
      [](std::span<const double>) { return std::pair{0.0, 1.0}; },
      [mu2](std::span<const double> x) {
        return std::pair{1.0, mu2 / (x[0] * (1.0 - x[0]) + 1.0)};
      }};
  const auto r = quad::integrate_nested([](std::span<const double> x) { return 1.0 / x[1]; }, lim);
  CHECK(r.value / (16.0 * kPi * kPi) == Approx(0.00342657145711053571).epsilon(1e-8));
}

TEST_CASE("differentiate") {
  CHECK(quad::differentiate([](double x) { return x * x; }, 3.0, 1) == Approx(6.0).epsilon(1e-9));
  CHECK(quad::differentiate([](double x) { return std::exp(x); }, 0.0, 2) ==
        Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(quad::differentiate([](double x) { return x; }, 0.0, 5), UnsupportedOrder);
}

TEST_CASE("config validation") {
  quad::QuadratureConfig c;
  c.rel_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  CHECK(quad::transform_from_string(quad::to_string(quad::Transform::semi_infinite)) ==
        quad::Transform::semi_infinite);
}
