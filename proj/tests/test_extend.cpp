#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>

#include "causal/errors.hpp"
#include "causal/extend.hpp"
#include "doctest.h"

using namespace causal;
using namespace causal::extend;
using doctest::Approx;

namespace {

testfunc::SrtfParams limit(double mu2) {
  testfunc::SrtfParams s;
  s.mu2 = mu2;
  s.alpha_limit = true;
  return s;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  return quad::require_converged(quad::integrate_1d(f, a, b), "test").value;
}

}  // namespace

TEST_CASE("scaling orders of the built-in distributions") {
  CHECK(scaling_order(builtin("euclid_prop_d4"), Region::UV) == 1);
  CHECK(scaling_order(builtin("inv_omega"), Region::UV) == 0);
  CHECK(scaling_order(builtin("inv_x2"), Region::IR) == 1);
  CHECK(scaling_order(builtin("inv_x"), Region::IR) == 0);
  SingularDistribution wobbly;
  wobbly.name = "wobbly";
  wobbly.evaluate = [](double X) { return (1.5 + std::sin(3.0 * std::log(X))) / X; };
  CHECK_THROWS_AS(fit_scaling(wobbly, Region::IR), IndeterminateOrder);
  CHECK_THROWS_AS(builtin("inv_x3"), InputError);
}

TEST_CASE("H_k equals gamma + digamma(k + 1)") {
  CHECK(harmonic_h(1) == Approx(1.0).epsilon(1e-15));
  for (int k = 1; k <= 4; ++k) {
    const double expect =
        boost::math::constants::euler<double>() + boost::math::digamma(static_cast<double>(k + 1));
    CHECK(harmonic_h(k) == Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("IR extension of 1/X matches the homogeneous form") {
  const auto T = builtin("inv_x");
  const auto e = extend_ir(T, 0, 0.5);
  const auto h = extend_ir_homogeneous(T, 0, 0.5);
  for (double X : {1e-3, 0.01, 0.1, 0.5, 1.5}) {
    CHECK(e(X) == Approx(h.smooth(X)).epsilon(1e-7));
  }
  const auto T2 = builtin("inv_x2");
  const auto h2 = extend_ir_homogeneous(T2, 1, 0.5);
  CHECK(h2.sphere_moment == Approx(0.0));
  const auto h0 = extend_ir_homogeneous(T, 0, 0.5);
  CHECK(h0.sphere_moment == Approx(2.0 * T(1.0)).epsilon(1e-15));
}

TEST_CASE("IR extension is finite down to the origin") {
  const auto e = extend_ir(builtin("inv_x2"), 1, 0.5);
  for (int i = 0; i <= 60; ++i) {
    const double X = std::pow(10.0, -6.0 + 6.0 * i / 60.0);
    CHECK(std::isfinite(e(X)));
  }
}

TEST_CASE("pairings") {
  // Regular T: the extension pairs like T itself.
  SingularDistribution reg;
  reg.name = "exp";
  reg.evaluate = [](double X) { return std::exp(-X); };
  lagrange::SmoothFn phi;
  phi.value = [](double X) {
    const double z = (X - 1.0) / 0.5;
    return std::abs(z) < 1.0 ? std::exp(1.0 / (z * z - 1.0)) : 0.0;
  };
  phi.derivative = [phi](double X, int n) {
    const double z = (X - 1.0) / 0.5;
    if (n != 1) return quad::differentiate(phi.value, X, n);
    if (std::abs(z) >= 1.0) return 0.0;
    const double w = z * z - 1.0;
    return phi.value(X) * (-2.0 * z / (w * w)) / 0.5;
  };
  phi.breakpoints = {0.5, 1.5};
  phi.support_upper = 1.5;
  const auto e = extend_ir(reg, 0, 0.5);
  const double direct = integrate([&](double X) { return reg(X) * phi(X); }, 0.5, 1.5);
  CHECK(pair_ir(e, phi) == Approx(direct).epsilon(1e-7));

  // <T~, f> = <T, f> for a test function and T = 1/X, at two IR scales.
  testfunc::SrtfParams s;
  const auto f = lagrange::SmoothFn::from_srtf(s);
  const double bare = integrate([&](double X) { return X > 0.0 ? f(X) / X : 0.0; }, 0.0, s.rise()) +
                      integrate([&](double X) { return f(X) / X; }, s.rise(), s.x_max());
  const double a = pair_ir(extend_ir(builtin("inv_x"), 0, 0.05), f);
  const double b = pair_ir(extend_ir(builtin("inv_x"), 0, 0.04), f);
  CHECK(a == Approx(bare).epsilon(1e-6));
  CHECK(a == Approx(b).epsilon(1e-6));
}

TEST_CASE("UV extension reproduces mu2 - 1 - log mu2") {
  for (double mu2 : {1.5, 2.0, 4.0}) {
    const auto e = extend_uv(builtin("euclid_prop_d4"), 1, limit(mu2));
    const double v = pair_unity(e).value;
    CHECK(v == Approx(mu2 - 1.0 - std::log(mu2)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(extend_uv(builtin("euclid_prop_d4"), 0, limit(2.0)), NonIntegrable);
  const auto empty = extend_uv_fixed(builtin("euclid_prop_d4"), 1, 1.0);
  CHECK(empty(0.7) == 0.0);
}

TEST_CASE("d-dimensional UV form is a Pauli-Villars subtraction") {
  const double mu2 = 2.0;
  const auto e = extend_uv_alt(builtin("euclid_prop_d2"), 0, 1, mu2);
  for (double X : {0.1, 1.0, 7.0, 50.0}) {
    CHECK(e(X) == Approx(1.0 / (X + 1.0) - 1.0 / (X + mu2)).epsilon(1e-10));
  }
  CHECK(pair_unity(e).value == Approx(std::log(mu2)).epsilon(1e-8));
  const auto a = extend_uv_alt(builtin("euclid_prop_d4"), 1, 2, mu2);
  const auto b = extend_uv(builtin("euclid_prop_d4"), 1, limit(mu2));
  CHECK(pair_unity(a).value == Approx(pair_unity(b).value).epsilon(1e-6));
}

TEST_CASE("Fourier-space subtraction") {
  testfunc::SrtfParams s;
  for (const char* name : {"inv_x", "euclid_prop_d2"}) {
    const auto r = bphz_correspondence(builtin(name), s, 0, 0.0, 1.3);
    CAPTURE(name);
    CHECK(std::abs(r.extended - r.subtracted) < 1e-5 * std::abs(r.subtracted));
  }
  const auto same = bphz_correspondence(builtin("inv_x"), s, 1, 0.7, 0.7);
  CHECK(std::abs(same.extended) < 1e-12);
}
