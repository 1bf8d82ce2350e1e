#include "causal/qft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "causal/extend.hpp"

namespace causal::qft {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const C kI(0.0, 1.0);

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_mass(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InputError("mass must be > 0");
}

void check_dimension(int D) {
  if (D != 2 && D != 4) throw InputError("dimension must be 2 or 4");
}

testfunc::SrtfParams limit_mode(testfunc::SrtfParams s) {
  s.alpha_limit = true;
  s.validate();
  return s;
}

double total_value(const quad::QuadratureEstimate& e, const char* what) {
  return quad::require_converged(e, what).value;
}

}  // namespace

void ObservableResult::finish() {
  if (closed_form && std::abs(*closed_form) > 0.0) {
    rel_deviation = std::abs(value - *closed_form) / std::abs(*closed_form);
  } else if (closed_form) {
    rel_deviation = std::abs(value);
  }
}

ObservableResult delta0_euclid(int D, double m, const testfunc::SrtfParams& s) {
  check_dimension(D);
  check_mass(m);
  const auto lim = limit_mode(s);
  const double mu2 = lim.mu2;
  const double m2 = m * m;
  ObservableResult r;
  r.metadata = {{"D", std::to_string(D)}, {"m", num(m)}, {"mu2", num(mu2)}, {"mode", "alpha_limit"}};
  // With Lambda = m, T(X) = 1/(X Lambda^2 + m^2) = 1/(m^2 (X + 1)).
  auto T = extend::builtin(D == 4 ? "euclid_prop_d4" : "euclid_prop_d2", 1.0);
  const auto base_eval = T.evaluate;
  const auto base_jet = T.jet;
  T.evaluate = [base_eval, m2](double x) { return base_eval(x) / m2; };
  T.jet = [base_jet, m2](const extend::JetX& x) { return base_jet(x) * (1.0 / m2); };
  if (D == 4) {
    const auto ext = extend::extend_uv(T, 1, lim);
    const auto pair = extend::pair_unity(ext);
    const double pref = m2 * m2 / (16.0 * kPi * kPi);
    r.value = pref * total_value(pair, "delta0_euclid");
    r.error = pref * pair.error;
    r.closed_form = m2 / (16.0 * kPi * kPi) * (mu2 - 1.0 - std::log(mu2));
  } else {
    const auto ext = extend::extend_uv_alt(T, 0, 1, mu2);
    const auto pair = extend::pair_unity(ext);
    const double pref = m2 / (4.0 * kPi);
    r.value = pref * total_value(pair, "delta0_euclid");
    r.error = pref * pair.error;
    r.closed_form = std::log(mu2) / (4.0 * kPi);
  }
  r.finish();
  return r;
}

PvLemma pv_lemma_minkowski(double p, double m, const testfunc::SrtfParams& s, int sign) {
  check_mass(m);
  s.validate();
  if (sign != 1 && sign != -1) throw InputError("pv_lemma_minkowski: sign must be +1 or -1");
  const double m2 = m * m;
  const double omega = std::sqrt(p * p + m2);
  auto f2 = [&](double p0) {
    const double v = testfunc::srtf_uv((p0 * p0 + p * p) / m2, s);
    return v * v;
  };
  const double pole = -sign * omega;
  // f^2 is even in p0, so fold the two half-lines; the folded integrand
  // decays like p0^-2 even when f^2 tends to a constant.
  double reach = quad::kInf;
  if (!s.alpha_limit) {
    const double x_end = s.x_max() * m2 - p * p;
    reach = x_end > 0.0 ? std::sqrt(x_end) : 0.0;
  }
  PvLemma out;
  auto folded = [&](double p0) { return f2(p0) * 2.0 * pole / (p0 + omega); };
  if (reach == 0.0) {
    out.principal = 0.0;
  } else if (omega < reach) {
    out.principal = total_value(quad::integrate_pv(folded, omega, 0.0, reach), "pv_lemma_minkowski");
  } else {
    auto g = [&](double p0) { return folded(p0) / (p0 - omega); };
    out.principal = total_value(quad::integrate_1d(g, 0.0, reach), "pv_lemma_minkowski");
  }
  out.total = out.principal + static_cast<double>(sign) * kI * kPi * f2(omega);
  return out;
}

ObservableResult delta0_minkowski(int D, double m, const testfunc::SrtfParams& s) {
  check_dimension(D);
  check_mass(m);
  const auto lim = limit_mode(s);
  const double mu2 = lim.mu2;
  const double m2 = m * m;
  ObservableResult r;
  r.metadata = {{"D", std::to_string(D)}, {"m", num(m)}, {"mu2", num(mu2)}, {"mode", "alpha_limit"}};
  // The p0 integral of each pole term is ±i pi f^2, leaving -i pi ∫ d^(D-1)p f^2 / omega.
  if (D == 2) {
    const auto T = extend::builtin("inv_omega", m2);
    const auto ext = extend::extend_uv_alt(T, 0, 1, mu2);
    const auto pair = extend::pair_unity(ext);
    r.value = -kI * kPi * 2.0 * total_value(pair, "delta0_minkowski");
    r.error = 2.0 * kPi * pair.error;
    r.closed_form = -2.0 * kI * kPi * std::log(mu2);
  } else {
    // 4 pi p^2 dp / omega with X = p^2/Lambda^2 gives (Lambda^3/2) X dX / sqrt(X (X Lambda^2 + m^2)).
    extend::SingularDistribution T;
    T.name = "inv_sqrt_x_prop";
    T.d = 2;
    T.uv_power = 0.0;
    T.evaluate = [m](double x) { return 1.0 / (m * std::sqrt(x * (x + 1.0))); };
    T.jet = [m](const extend::JetX& x) { return (1.0 / m) * pow(x * (x + 1.0), -0.5); };
    const auto ext = extend::extend_uv_alt(T, 1, 2, mu2);
    const auto pair = extend::pair_unity(ext);
    const double pref = 2.0 * kPi * kPi * m * m2;
    r.value = -kI * pref * total_value(pair, "delta0_minkowski");
    r.error = pref * pair.error;
    r.closed_form = -kI * kPi * kPi * m2 * (mu2 - 1.0 - std::log(mu2));
  }
  r.finish();
  return r;
}

ObservableResult delta0_minkowski_pv_form(double m, double mu2) {
  check_mass(m);
  if (!(mu2 > 1.0)) throw InputError("mu2 must be > 1");
  const double m2 = m * m;
  // ∫ dp0 / (p0^2 - w^2 + i eps) = (PV_+ - PV_-)/(2w) - i pi / w.
  auto propagator = [](double w) {
    auto one = [](double) { return 1.0; };
    const double upper = quad::integrate_pv(one, w, -quad::kInf, quad::kInf).value;
    const double lower = quad::integrate_pv(one, -w, -quad::kInf, quad::kInf).value;
    return C((upper - lower) / (2.0 * w), -kPi / w);
  };
  auto g = [&](double p) {
    const double w1 = std::sqrt(p * p + m2);
    const double w2 = std::sqrt(p * p + m2 * mu2 * mu2);
    return propagator(w1) - propagator(w2);
  };
  const auto est = quad::integrate_1d_complex(g, -quad::kInf, quad::kInf);
  ObservableResult r;
  r.metadata = {{"D", "2"}, {"m", num(m)}, {"mu2", num(mu2)}, {"mode", "pv_difference"}};
  r.value = quad::require_converged(est, "delta0_minkowski_pv_form").value;
  r.error = est.error;
  r.closed_form = -2.0 * kI * kPi * std::log(mu2);
  r.finish();
  return r;
}

std::complex<double> minkowski_euclid_ratio() { return -kI * std::pow(2.0 * kPi, 4); }

std::pair<double, double> pv_decomposition(double m, const std::vector<double>& lambdas,
                                           double p2) {
  check_mass(m);
  if (lambdas.empty()) throw InputError("pv_decomposition: need at least one regulator");
  const double m2 = m * m;
  std::vector<double> l2;
  for (double l : lambdas) {
    if (!(l > 0.0)) throw InputError("pv_decomposition: regulator masses must be > 0");
    l2.push_back(l * l);
  }
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); };
  for (std::size_t i = 0; i < l2.size(); ++i) {
    if (close(l2[i], m2)) throw InputError("pv_decomposition: degenerate (regulator equals m)");
    for (std::size_t j = i + 1; j < l2.size(); ++j) {
      if (close(l2[i], l2[j])) throw InputError("pv_decomposition: degenerate (equal regulators)");
    }
  }
  double lhs = 1.0 / (p2 + m2);
  for (double L : l2) lhs *= (L - m2) / (p2 + L);
  double rhs = 1.0 / (p2 + m2);
  for (std::size_t j = 0; j < l2.size(); ++j) {
    double num_ = 1.0;
    double den = 1.0;
    for (std::size_t i = 0; i < l2.size(); ++i) {
      if (i == j) continue;
      num_ *= l2[i] - m2;
      den *= l2[i] - l2[j];
    }
    rhs -= num_ / den / (p2 + l2[j]);
  }
  return {lhs, rhs};
}

PvCoefficients pv_coefficients(double m, double lambda1, double lambda2) {
  check_mass(m);
  if (!(lambda1 > 0.0 && lambda2 > 0.0)) throw InputError("pv_coefficients: masses must be > 0");
  const double m2 = m * m;
  const double a = lambda1 * lambda1;
  const double b = lambda2 * lambda2;
  PvCoefficients c;
  c.alpha = 1.0 + (m2 - a) * (m2 - b) / (b * b);
  c.gamma = c.alpha - 1.0;
  c.beta = a + (1.0 - c.alpha) * b;
  c.A = b * b * (c.alpha - 1.0);
  return c;
}

double pv_bracket(const PvCoefficients& c, double m, double lambda1, double lambda2, double X) {
  const double a = lambda1 * lambda1;
  const double b = lambda2 * lambda2;
  const double inner =
      1.0 - (c.alpha * X + c.beta) / (X + a) + c.gamma * X * X / ((X + a) * (X + b));
  return inner / (X + m * m);
}

double pv_confluent(double m, double X) {
  check_mass(m);
  const double m2 = m * m;
  return m2 * m2 / std::pow(X + m2, 3);
}

double log_feynman_integral(double a) {
  if (a < 0.0) throw InputError("log_feynman_integral: a must be >= 0");
  if (a < 1e-3) return a / 6.0 - a * a / 60.0 + a * a * a / 420.0;
  const double beta = std::sqrt(1.0 + 4.0 / a);
  return -2.0 + beta * std::log((beta + 1.0) / (beta - 1.0));
}

ObservableResult one_loop_I(double k2, double m, const testfunc::SrtfParams& s) {
  check_mass(m);
  if (!(k2 >= 0.0)) throw InputError("one_loop_I: k^2 must be >= 0");
  const auto lim = limit_mode(s);
  const double mu2 = lim.mu2;
  const double a = k2 / (m * m);
  extend::SingularDistribution T;
  T.name = "loop_y";
  T.d = 1;
  T.uv_power = 0.0;
  T.evaluate = [](double y) { return y / ((y + 1.0) * (y + 1.0)); };
  T.jet = [](const extend::JetX& y) { return y / ((y + 1.0) * (y + 1.0)); };
  auto inner = [&](double x) {
    const double t_bound = mu2 / (a * x * (1.0 - x) + 1.0);
    const auto ext = extend::extend_uv_fixed(T, 0, t_bound);
    return total_value(extend::pair_unity(ext), "one_loop_I");
  };
  const auto est = quad::integrate_1d(inner, 0.0, 1.0);
  const double pref = 1.0 / (16.0 * kPi * kPi);
  ObservableResult r;
  r.metadata = {{"k2", num(k2)}, {"m", num(m)}, {"mu2", num(mu2)}, {"mode", "alpha_limit"}};
  r.value = pref * total_value(est, "one_loop_I");
  r.error = pref * est.error;
  r.closed_form = pref * (std::log(mu2) - log_feynman_integral(a));
  r.finish();
  return r;
}

ObservableResult schwinger_delta0(double m, const testfunc::SrtfParams& s) {
  check_mass(m);
  const auto lim = limit_mode(s);
  const double mu2 = lim.mu2;
  // After two partial integrations in u only e^-u f survives, and f = 1 in
  // the limit mode with the t-range cut at mu2.
  auto integrand = [](std::span<const double> v) {
    const double t = v[0];
    const double y = v[1];
    const double u = v[2];
    return -y * std::exp(-y) * std::exp(-u) * (1.0 - t) / t;
  };
  const std::pair<double, double> box[] = {{1.0, mu2}, {0.0, quad::kInf}, {0.0, quad::kInf}};
  auto cfg = quad::QuadratureConfig::nd_default();
  cfg.rel_tol = 1e-8;
  const auto est = quad::integrate_box(integrand, box, cfg);
  const double pref = m * m / (16.0 * kPi * kPi);
  ObservableResult r;
  r.metadata = {{"D", "4"}, {"m", num(m)}, {"mu2", num(mu2)}, {"mode", "alpha_limit"}};
  if (!est.converged) throw NumericFailure("schwinger_delta0: nested quadrature did not converge");
  r.value = pref * est.value;
  r.error = pref * est.error;
  r.closed_form = pref * (mu2 - 1.0 - std::log(mu2));
  r.finish();
  return r;
}

double schwinger_rewritten_integrand(double y, double u, const testfunc::SrtfParams& s) {
  s.validate();
  if (s.alpha_limit) throw InputError("schwinger_rewritten_integrand: needs finite alpha");
  if (!(y > 0.0 && u > 0.0)) throw InputError("schwinger_rewritten_integrand: y, u must be > 0");
  const double x_end = s.x_max();
  // f(yt/u) has non-zero derivatives only while 1 < yt/u < X_max.
  const double lo = std::max(1.0, u / y);
  const double hi = std::max(1.0, x_end * u / y);
  if (hi <= lo) return 0.0;
  auto g = [&](double t) {
    const double c = y * t;
    const double x = c / u;
    const auto d = testfunc::srtf_derivatives(x, s, true);
    const double second = 2.0 * c / (u * u * u) * d[1] + c * c / (u * u * u * u) * d[2];
    return (1.0 - t) / t * second;
  };
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  const double integral = total_value(quad::integrate_1d(g, lo, hi, cfg), "schwinger");
  return -std::exp(-u) * integral;
}

ObservableResult sunset_qualitative(double m, const testfunc::SrtfParams& s, double cutoff,
                                    double upper) {
  check_mass(m);
  s.validate();
  const double m2 = m * m;
  const double lo = cutoff > 0.0 ? cutoff : 1.0 / (s.mu2 * m2);
  const double hi = upper > 0.0 ? upper : 50.0 / m2;
  ObservableResult r;
  r.metadata = {{"m", num(m)}, {"mu2", num(s.mu2)}, {"cutoff", num(lo)}, {"upper", num(hi)}};
  if (lo >= hi) {
    r.value = 0.0;
    return r;
  }
  // alpha_i = e^(s_i); Jacobian alpha_1 alpha_2 alpha_3.
  auto integrand = [m2](std::span<const double> v) {
    const double a1 = std::exp(v[0]);
    const double a2 = std::exp(v[1]);
    const double a3 = std::exp(v[2]);
    const double U = a1 * a2 + a2 * a3 + a1 * a3;
    return std::exp(-m2 * (a1 + a2 + a3)) * a1 * a2 * a3 / (U * U);
  };
  const std::pair<double, double> range{std::log(lo), std::log(hi)};
  const std::pair<double, double> box[] = {range, range, range};
  auto cfg = quad::QuadratureConfig::nd_default();
  cfg.rel_tol = 1e-3;
  cfg.max_subdivisions = 100;
  const auto est = quad::integrate_box(integrand, box, cfg);
  const double pref = 1.0 / std::pow(16.0 * kPi * kPi, 2);
  r.value = pref * est.value;
  r.error = pref * est.error;
  if (!est.converged) r.metadata.emplace_back("warning", "tolerance not reached");
  return r;
}

}  // namespace causal::qft
