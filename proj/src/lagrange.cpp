#include "causal/lagrange.hpp"

#include <algorithm>
#include <cmath>

namespace causal::lagrange {

namespace {

void check_order(int k) {
  if (k < 0) throw InputError("lagrange: k must be >= 0");
  if (k > 4) throw UnsupportedOrder("lagrange: k > 4 is not supported");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// d^i/dy^i y^m.
double power_derivative(double y, int m, int i) {
  if (i > m) return 0.0;
  return factorial(m) / factorial(m - i) * std::pow(y, m - i);
}

// ∫_a^b g split at the interior points; throws on non-convergence.
double integrate_split(const quad::RealFn& g, double a, double b, std::vector<double> cuts,
                       const quad::QuadratureConfig& cfg, const char* what) {
  if (a == b) return 0.0;
  std::vector<double> pts{a};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts) {
    if (std::isfinite(c) && c > a && c < b) pts.push_back(c);
  }
  pts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    total += quad::require_converged(quad::integrate_1d(g, pts[i], pts[i + 1], cfg), what).value;
  }
  return total;
}

// Breakpoints of f mapped through x = X t (scale = X) or x = X / s.
std::vector<double> scaled_cuts(const SmoothFn& f, double X, bool inverse) {
  std::vector<double> cuts;
  auto add = [&](double b) {
    if (b > 0.0 && std::isfinite(b)) cuts.push_back(inverse ? X / b : b / X);
  };
  for (double b : f.breakpoints) add(b);
  add(f.support_upper);
  return cuts;
}

}  // namespace

double SmoothFn::deriv(double x, int n) const {
  if (n == 0) return value(x);
  if (derivative) return derivative(x, n);
  quad::DerivativeOptions opt;
  opt.domain_lower = domain_lower;
  opt.domain_upper = domain_upper;
  return quad::differentiate(value, x, n, opt);
}

SmoothFn SmoothFn::from_srtf(const testfunc::SrtfParams& s, bool uv) {
  s.validate();
  SmoothFn f;
  f.value = [s, uv](double x) { return uv ? testfunc::srtf_uv(x, s) : testfunc::srtf_f(x, s); };
  f.derivative = [s, uv](double x, int n) {
    return testfunc::srtf_derivative(x, n, s, uv);
  };
  f.domain_lower = 0.0;
  f.support_upper = s.x_max();
  if (!uv) f.breakpoints.push_back(s.rise());
  f.breakpoints.push_back(1.0);
  return f;
}

double taylor_remainder_direct(const SmoothFn& f, double X, int k) {
  check_order(k);
  double jet = 0.0;
  double term = 1.0;
  for (int n = 0; n <= k; ++n) {
    jet += term * f.deriv(0.0, n);
    term *= X / (n + 1);
  }
  return f(X) - jet;
}

double lagrange_remainder_ir(const SmoothFn& f, double X, int k,
                             const quad::QuadratureConfig& cfg) {
  check_order(k);
  if (X == 0.0) return 0.0;
  auto g = [&](double t) { return std::pow(1.0 - t, k) * f.deriv(t * X, k + 1); };
  const double integral = integrate_split(g, 0.0, 1.0, scaled_cuts(f, std::abs(X), false), cfg,
                                          "lagrange_remainder_ir");
  return std::pow(X, k + 1) / factorial(k) * integral;
}

double lagrange_remainder_measure(const SmoothFn& f, double X, int k,
                                  const quad::QuadratureConfig& cfg) {
  check_order(k);
  if (X == 0.0) return 0.0;
  auto g = [&](double t) {
    if (t == 0.0) return 0.0;
    // d^(k+1)/dX^(k+1) f(Xt) by the chain rule.
    const double dx = std::pow(t, k + 1) * f.deriv(t * X, k + 1);
    return std::pow(1.0 - t, k) / std::pow(t, k + 1) * dx;
  };
  const double integral = integrate_split(g, 0.0, 1.0, scaled_cuts(f, std::abs(X), false), cfg,
                                          "lagrange_remainder_measure");
  return std::pow(X, k + 1) / factorial(k) * integral;
}

double lagrange_uv(const SmoothFn& f, double X, int k, const quad::QuadratureConfig& cfg) {
  check_order(k);
  if (!(X > 0.0)) throw InputError("lagrange_uv: X must be > 0");
  if (X >= f.support_upper) return 0.0;
  const double upper = f.support_upper / X;
  auto g = [&](double t) {
    const double y = X * t;
    double phi = 0.0;  // (y^k f(y))^(k+1) by Leibniz
    for (int i = 0; i <= k; ++i) {
      phi += binomial(k + 1, i) * power_derivative(y, k, i) * f.deriv(y, k + 1 - i);
    }
    return std::pow(1.0 - t, k) * phi;
  };
  const double integral =
      integrate_split(g, 1.0, upper, scaled_cuts(f, X, false), cfg, "lagrange_uv");
  return -X / factorial(k) * integral;
}

std::pair<double, double> lagrange_alt_check(const SmoothFn& f, double p, int k, int d,
                                             const quad::QuadratureConfig& cfg) {
  check_order(k);
  if (d < 1) throw InputError("lagrange_alt_check: d must be >= 1");
  if (!(p > 0.0)) throw InputError("lagrange_alt_check: p must be > 0");
  if (p >= f.support_upper) return {0.0, 0.0};
  const double upper = f.support_upper / p;
  const auto cuts = scaled_cuts(f, p, false);

  auto g1 = [&](double t) { return std::pow(1.0 - t, k) * f.deriv(p * t, k + 1); };
  const double one_d = -std::pow(p, k + 1) / factorial(k) *
                       integrate_split(g1, 1.0, upper, cuts, cfg, "lagrange_alt_check");

  auto g2 = [&](double t) {
    // d^(k+1)/dp^(k+1) [p^(k+d) f(pt)]
    double inner = 0.0;
    for (int i = 0; i <= k + 1; ++i) {
      inner += binomial(k + 1, i) * power_derivative(p, k + d, i) * std::pow(t, k + 1 - i) *
               f.deriv(p * t, k + 1 - i);
    }
    return std::pow(1.0 - t, k) * std::pow(t, d - 1) * inner;
  };
  const double radial = -std::pow(p, 1 - d) / factorial(k) *
                        integrate_split(g2, 1.0, upper, cuts, cfg, "lagrange_alt_check");
  return {one_d, radial};
}

std::pair<double, double> inversion_pair(const SmoothFn& f, double p, int k,
                                         const quad::QuadratureConfig& cfg) {
  check_order(k);
  if (!(p > 0.0)) throw InputError("inversion_pair: p must be > 0");
  if (p >= f.support_upper) return {0.0, 0.0};
  const double upper = f.support_upper / p;
  auto gt = [&](double t) { return std::pow(1.0 - t, k) * f.deriv(p * t, k + 1); };
  const double direct =
      integrate_split(gt, 1.0, upper, scaled_cuts(f, p, false), cfg, "inversion_pair");
  auto gs = [&](double s) {
    return std::pow(s - 1.0, k) / std::pow(s, k + 2) * f.deriv(p / s, k + 1);
  };
  const double inverted =
      integrate_split(gs, 1.0 / upper, 1.0, scaled_cuts(f, p, true), cfg, "inversion_pair");
  return {direct, inverted};
}

}  // namespace causal::lagrange
