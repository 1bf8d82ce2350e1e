#include <cmath>
#include <numbers>

#include "causal/errors.hpp"
#include "causal/quadrature.hpp"
#include "causal/testfunc.hpp"
#include "doctest.h"

using namespace causal;
using namespace causal::testfunc;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {
PartitionParams convolution() {
  PartitionParams p;
  p.variant = Variant::mollifier_convolution;
  return p;
}
}  // namespace

TEST_CASE("mollifier") {
  CHECK(mollifier_rho(1.0) == 0.0);
  CHECK(mollifier_rho(-1.0) == 0.0);
  CHECK(mollifier_rho(0.0) == Approx(mollifier_norm() * std::exp(-1.0)).epsilon(1e-15));
  CHECK(mollifier_cumulative(1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(mollifier_cumulative(0.0) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("elementary u: edges, midpoint and complement identity") {
  for (const auto& p : {PartitionParams{}, convolution()}) {
    CAPTURE(to_string(p.variant));
    // Middle of the edge: h/2 for the nu construction, the cell end for the convolution.
    const double mid = p.variant == Variant::nu_integral ? 0.5 * p.h : p.h;
    CHECK(elementary_u(mid, p) == Approx(0.5).epsilon(1e-12));
    for (int i = 0; i <= 100; ++i) {
      const double x = p.h * i / 100.0;
      CHECK(complement_sum(x, p) == Approx(1.0).epsilon(1e-12));
    }
  }
  PartitionParams nu;
  CHECK(elementary_u(nu.h, nu) == 0.0);
  CHECK(elementary_u(-nu.h, nu) == 0.0);
  const auto c = convolution();
  CHECK(elementary_u(c.h + c.epsilon, c) == 0.0);
  CHECK(elementary_u(-c.epsilon, c) == 0.0);
}

TEST_CASE("partition sums and their powers") {
  for (const auto& p : {PartitionParams{}, convolution()}) {
    for (int i = 0; i <= 50; ++i) {
      const double x = -3.0 + 6.0 * i / 50.0;
      const double s = partition_sum(x, p, -10, 10);
      CHECK(s == Approx(1.0).epsilon(1e-12));
      CHECK(s * s == Approx(1.0).epsilon(1e-12));
      CHECK(s * s * s == Approx(1.0).epsilon(1e-12));
    }
    CHECK(partition_sum(20.5, p, -10, 10) < 1.0);
  }
}

TEST_CASE("srtf shape") {
  SrtfParams s;
  s.mu2 = 1.15;
  s.alpha = 0.95;
  CHECK(s.x_max() == Approx(std::pow(1.15, 20.0)).epsilon(1e-14));
  CHECK(srtf_f(0.5, s) == 1.0);
  CHECK(srtf_f(1.0, s) == 1.0);
  CHECK(srtf_f(s.x_max(), s) == 0.0);
  CHECK(srtf_f(2.0 * s.x_max(), s) == 0.0);
  const double half = 1.0 + 0.5 * (s.x_max() - 1.0);
  CHECK(srtf_f(half, s) > 0.0);
  CHECK(srtf_f(half, s) < 1.0);
  double prev = 1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double X = 1.0 + (s.x_max() - 1.0) * i / 1000.0;
    const double v = srtf_f(X, s);
    CHECK(v <= prev);
    prev = v;
  }
  CHECK_THROWS_AS(srtf_f(-1.0, s), InputError);
  CHECK(srtf_uv(0.0, s) == 1.0);
}

TEST_CASE("super-regularity at both ends") {
  SrtfParams s;
  for (int n = 1; n <= 4; ++n) {
    CHECK(std::abs(srtf_derivative(1e-9, n, s)) < 1e-12);
    CHECK(std::abs(srtf_derivative(s.x_max(), n, s)) < 1e-12);
  }
}

TEST_CASE("t bound") {
  SrtfParams s;
  s.mu2 = 2.0;
  s.alpha = 0.9;
  CHECK(t_max(1.0, s) == Approx(2.0).epsilon(1e-15));
  CHECK(t_max(s.x_max(), s) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(t_max(0.0, s), InputError);
  s.alpha_limit = true;
  CHECK(t_max(123.0, s) == 2.0);
}

TEST_CASE("Fourier transform of a partition member") {
  PartitionParams p;
  CHECK(std::abs(fourier_gamma_j(0.0, 0, p) - p.h) < 1e-12);
  for (int n = 1; n <= 2; ++n) {
    CHECK(std::abs(fourier_gamma_j(2.0 * kPi * n / p.h, 0, p)) < 1e-12);
  }
  // Regression value.
  CHECK(fourier_gamma_j(kPi / p.h, 0, p).real() == Approx(0.57878244873754003).epsilon(1e-10));
  // Convolution variant: indicator transform times the mollifier transform.
  const auto c = convolution();
  const auto rho_hat = quad::integrate_1d(
      [&](double u) { return mollifier_rho(u) * std::cos(kPi * c.epsilon * u); }, -1.0, 1.0);
  const std::complex<double> chi_hat = 2.0 / (std::complex<double>(0.0, 1.0) * kPi);
  CHECK(std::abs(fourier_gamma_j(kPi, 0, c) - chi_hat * rho_hat.value) < 1e-10);
}

TEST_CASE("parameter validation") {
  PartitionParams p;
  p.h = -1.0;
  CHECK_THROWS_AS(p.validate(), InputError);
  auto c = convolution();
  c.epsilon = 0.6;
  CHECK_THROWS_AS(c.validate(), InputError);
  SrtfParams s;
  s.mu2 = 0.5;
  CHECK_THROWS_AS(s.validate(), InputError);
  CHECK(variant_from_string("convolution") == Variant::mollifier_convolution);
  CHECK_THROWS_AS(variant_from_string("spline"), InputError);
}
