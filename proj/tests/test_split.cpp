#include <array>
#include <cmath>
#include <numbers>

#include "causal/errors.hpp"
#include "causal/split.hpp"
#include "doctest.h"

using namespace causal;
using namespace causal::split;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

TEST_CASE("step-function transform") {
  const auto t4 = theta_v_fourier(1.5, 4);
  const auto t2 = theta_v_fourier(1.5, 2);
  CHECK(t4.prefactor / t2.prefactor == Approx(2.0 * kPi).epsilon(1e-15));
  const auto m = theta_v_fourier(-1.5, 4);
  CHECK(std::abs(m.coefficient(0.1) - std::conj(t4.coefficient(0.1))) < 1e-15);
  const auto [via_pole, direct] = theta_smeared_check(1.3, 0.8);
  CHECK(std::abs(via_pole - direct) < 1e-10 * std::abs(direct));
  const std::array<double, 3> v{0.3, 0.2, 0.1};
  const auto [a, b] = theta_smeared_check(1.3, 0.8, v);
  CHECK(std::abs(a - via_pole) < 1e-12);
  CHECK(std::abs(b - direct) < 1e-12);
  const std::array<double, 3> fast{0.9, 0.5, 0.0};
  CHECK_THROWS_AS(theta_v_fourier(1.0, 4, fast), InputError);
}

TEST_CASE("t integral against its closed form") {
  const auto a = t_integral_closed(1.0, 5.0, 0, 2.0);
  CHECK(a.first == Approx(a.second).epsilon(1e-9));
  const auto b = t_integral_closed(0.8, -0.3, 1, 3.0);
  CHECK(b.first == Approx(b.second).epsilon(1e-8));
  const auto c = t_integral_closed(1.0, 0.7, 1, 2.0);
  CHECK(c.first == Approx(10.41666).epsilon(1e-5));
  const auto e = t_integral_closed(1.0, 5.0, 0, 1.0);
  CHECK(e.first == 0.0);
  CHECK(e.second == 0.0);
}

TEST_CASE("retarded extension") {
  const auto lor = model("lorentz", 0);
  const auto r = retarded_extension(lor, 1.0, 2.0);
  CHECK(std::isfinite(r.real()));
  CHECK(std::isfinite(r.imag()));
  CHECK(std::abs(r - extension_by_contour(lor, 1.0, 2.0, true)) < 1e-10);
  CHECK(std::abs(advanced_extension(lor, 1.0, 2.0) - extension_by_contour(lor, 1.0, 2.0, false)) <
        1e-10);

  CausalModelDistribution zero;
  zero.name = "zero";
  zero.fourier = [](const ModelJet& p) { return 0.0 * p; };
  zero.analytic = [](std::complex<double>) { return std::complex<double>(0.0); };
  CHECK(std::abs(retarded_extension(zero, 1.0, 2.0)) == 0.0);

  CHECK(retarded_prefactor(1, 1e12) == Approx(1.0).epsilon(1e-11));
  CHECK(std::abs(subtraction_point(1.0, 1e12)) < 1e-11);
  CHECK_THROWS_AS(retarded_extension(model("p4_lorentz", 0), 1.0, 2.0), NonIntegrable);
}

TEST_CASE("retarded minus advanced is the Taylor remainder") {
  for (const auto& name : model_names()) {
    const auto m = model(name);
    for (double p : {-2.0, 0.5, 1.0, 3.0}) {
      const auto r = splitting_difference_check(m, p, 2.0);
      CAPTURE(name);
      CAPTURE(p);
      CHECK(std::abs(r.difference - r.bphz_remainder) < 1e-8 * (1.0 + std::abs(r.bphz_remainder)));
    }
    const auto z = splitting_difference_check(m, 0.0, 2.0);
    CHECK(std::abs(z.difference) < 1e-14);
  }
  const auto g = model("gaussian", 1);
  const auto r = splitting_difference_check(g, 1.0, 2.0);
  CHECK(r.difference.real() == Approx(taylor_remainder_route(g, 1.0, 2.0)).epsilon(1e-4));
  CHECK_THROWS_AS(model("cubic"), InputError);
}
