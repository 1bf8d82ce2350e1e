#include <cmath>
#include <numbers>

#include "causal/errors.hpp"
#include "causal/lagrange.hpp"
#include "doctest.h"

using namespace causal;
using namespace causal::lagrange;
using doctest::Approx;

namespace {

SmoothFn from(std::function<double(double)> f) {
  SmoothFn s;
  s.value = std::move(f);
  return s;
}

SmoothFn exp_fn() {
  SmoothFn s;
  s.value = [](double x) { return std::exp(x); };
  s.derivative = [](double x, int) { return std::exp(x); };
  return s;
}

SmoothFn sin_fn() {
  SmoothFn s;
  s.value = [](double x) { return std::sin(x); };
  s.derivative = [](double x, int n) { return std::sin(x + n * std::numbers::pi / 2.0); };
  return s;
}

}  // namespace

TEST_CASE("direct Taylor remainder") {
  CHECK(std::abs(taylor_remainder_direct(from([](double x) { return x * x; }), 0.7, 2)) < 1e-8);
  CHECK(taylor_remainder_direct(exp_fn(), 1.0, 1) == Approx(std::exp(1.0) - 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(taylor_remainder_direct(exp_fn(), 1.0, 5), UnsupportedOrder);
  CHECK_THROWS_AS(taylor_remainder_direct(exp_fn(), 1.0, -1), InputError);
}

TEST_CASE("integral IR remainder") {
  CHECK(lagrange_remainder_ir(exp_fn(), 1.0, 0) == Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  const auto s = sin_fn();
  CHECK(lagrange_remainder_ir(s, 0.7, 2) ==
        Approx(taylor_remainder_direct(s, 0.7, 2)).epsilon(1e-10));
  CHECK(lagrange_remainder_measure(s, 0.7, 2) ==
        Approx(taylor_remainder_direct(s, 0.7, 2)).epsilon(1e-10));
}

TEST_CASE("test function is its own remainder") {
  testfunc::SrtfParams p;
  const auto f = SmoothFn::from_srtf(p);
  for (double X : {0.3, 0.8, 1.0, 1.5}) {
    for (int k = 0; k <= 4; ++k) {
      CHECK(taylor_remainder_direct(f, X, k) == Approx(f(X)).epsilon(1e-12));
    }
    for (int k = 0; k <= 3; ++k) {
      CHECK(lagrange_remainder_ir(f, X, k) == Approx(f(X)).epsilon(1e-8));
    }
  }
}

TEST_CASE("UV remainder") {
  testfunc::SrtfParams p;
  const auto f = SmoothFn::from_srtf(p, true);
  CHECK(lagrange_uv(f, 0.6, 1) == Approx(1.0).epsilon(1e-8));
  CHECK(lagrange_uv(f, 2.0 * p.x_max(), 1) == 0.0);
  SmoothFn g;
  g.value = [](double x) { return std::exp(-x * x); };
  CHECK(lagrange_uv(g, 1.0, 0) == Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK_THROWS_AS(lagrange_uv(f, 0.0, 1), InputError);
}

TEST_CASE("radial forms and the t -> 1/s image") {
  testfunc::SrtfParams p;
  const auto f = SmoothFn::from_srtf(p, true);
  const double X = 1.2;
  const auto d1 = lagrange_alt_check(f, X, 0, 1);
  CHECK(d1.first == Approx(f(X)).epsilon(1e-9));
  CHECK(d1.second == Approx(f(X)).epsilon(1e-9));
  const auto d3 = lagrange_alt_check(f, X, 1, 3);
  CHECK(d3.first == Approx(f(X)).epsilon(1e-7));
  CHECK(d3.second == Approx(f(X)).epsilon(1e-7));
  const auto beyond = lagrange_alt_check(f, 2.0 * p.x_max(), 1, 3);
  CHECK(beyond.first == 0.0);
  CHECK(beyond.second == 0.0);
  const auto inv = inversion_pair(f, X, 2);
  CHECK(inv.first == Approx(inv.second).epsilon(1e-7));
}
