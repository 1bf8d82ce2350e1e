#include "causal/extend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace causal::extend {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

double root(double x) { return std::sqrt(x); }
JetX root(const JetX& x) { return pow(x, 0.5); }

template <class F>
SingularDistribution make(std::string name, int d, F f) {
  SingularDistribution T;
  T.name = std::move(name);
  T.d = d;
  T.evaluate = [f](double x) { return f(x); };
  T.jet = [f](const JetX& x) { return f(x); };
  return T;
}

void check_k(int k, const char* what) {
  if (k < 0) throw InputError(std::string(what) + ": k must be >= 0");
  if (k > 4) throw UnsupportedOrder(std::string(what) + ": k > 4 is not supported");
}

// d^n/dX^n of g at X, exact when g is built from a jet.
double nth_derivative(const std::function<JetX(const JetX&)>& g_jet,
                      const std::function<double(double)>& g, double X, int n) {
  if (g_jet) return g_jet(JetX::variable(X)).derivative(n);
  quad::DerivativeOptions opt;
  opt.domain_lower = 0.0;
  return quad::differentiate(g, X, n, opt);
}

}  // namespace

void SingularDistribution::validate() const {
  if (!evaluate) throw InputError("distribution: missing evaluate");
  if (d < 1) throw InputError("distribution: d must be >= 1");
  if (homogeneity) {
    const double a = *homogeneity;
    for (double X : {0.3, 0.7, 1.9}) {
      for (double t : {2.0, 3.5}) {
        const double lhs = evaluate(X / t);
        const double rhs = std::pow(t, -a) * evaluate(X);
        if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) {
          throw InputError("distribution '" + name + "': declared homogeneity violated");
        }
      }
    }
  }
}

SingularDistribution builtin(const std::string& name, double m2) {
  if (!(m2 > 0.0)) throw InputError("builtin: m^2 must be > 0");
  if (name == "inv_x") {
    auto T = make(name, 1, [](auto x) { return 1.0 / x; });
    T.homogeneity = -1.0;
    return T;
  }
  if (name == "inv_x2") {
    auto T = make(name, 1, [](auto x) { return 1.0 / (x * x); });
    T.homogeneity = -2.0;
    return T;
  }
  if (name == "euclid_prop_d2" || name == "euclid_prop_d4") {
    auto T = make(name, name == "euclid_prop_d2" ? 1 : 2, [m2](auto x) { return 1.0 / (x + m2); });
    T.uv_power = 0.0;
    return T;
  }
  if (name == "inv_omega") {
    auto T = make(name, 1, [m2](auto x) { return 1.0 / root(x * x + m2); });
    T.uv_power = 0.0;
    return T;
  }
  throw InputError("unknown distribution '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"inv_x", "inv_x2", "euclid_prop_d2", "euclid_prop_d4", "inv_omega"};
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::IR: return "IR";
    case Mode::UV: return "UV";
    case Mode::UV_alt: return "UV_alt";
  }
  return "IR";
}

OrderFit fit_scaling(const SingularDistribution& T, Region region) {
  T.validate();
  constexpr int kPoints = 50;
  const double lo = region == Region::IR ? -6.0 : 3.0;
  const double hi = region == Region::IR ? -3.0 : 6.0;
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i < kPoints; ++i) {
    const double lx = (lo + (hi - lo) * i / (kPoints - 1)) * std::numbers::ln10;
    const double v = std::abs(T(std::exp(lx)));
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw IndeterminateOrder("scaling_order: T vanishes or is not finite in the fit window");
    }
    xs.push_back(lx);
    ys.push_back(std::log(v));
  }
  double mx = 0.0;
  double my = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= kPoints;
  my /= kPoints;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.r_squared = syy < 1e-20 ? 1.0 : (sxy * sxy) / (sxx * syy);
  // R^2 says nothing when log|T| is nearly flat; judge that case by the residual.
  const double rms = std::sqrt(std::max(0.0, syy - fit.slope * sxy) / kPoints);
  if (fit.r_squared < 0.999 && rms > 1e-3) {
    throw IndeterminateOrder("scaling_order: no power law (R^2 = " +
                             std::to_string(fit.r_squared) + ")");
  }
  auto snap = [](double v) {
    const double r = std::round(v);
    return std::abs(v - r) < 1e-2 ? r : v;
  };
  if (region == Region::IR) {
    fit.k = static_cast<int>(std::ceil(snap(-fit.slope))) - T.d;
  } else {
    const double omega = -fit.slope - 1.0;
    fit.k = std::max(0, static_cast<int>(std::ceil(snap(T.d - omega - 1.0))));
  }
  return fit;
}

int scaling_order(const SingularDistribution& T, Region region) {
  return fit_scaling(T, region).k;
}

ExtendedDistribution extend_ir(const SingularDistribution& T, int k, double mu_tilde,
                               LowerBound bound, double mu2) {
  T.validate();
  check_k(k, "extend_ir");
  if (!(mu_tilde > 0.0 && mu_tilde < 1.0)) throw InputError("extend_ir: mu_tilde must lie in (0, 1)");
  if (bound == LowerBound::inverse_mu2 && !(mu2 > 1.0)) {
    throw InputError("extend_ir: the 1/mu2 bound needs mu2 > 1");
  }
  const int d = T.d;
  ExtendedDistribution ext;
  ext.k = k;
  ext.d = d;
  ext.scale = mu_tilde;
  ext.mode = Mode::IR;
  ext.delta_coefficients.assign(k + 1, 0.0);

  const quad::QuadratureConfig cfg;
  if (bound == LowerBound::mu_tilde_x) {
    const double end = 1.0 / mu_tilde;
    ext.support_end = end;
    // G(X) = ∫_X^end (s - X)^k s^(d-1) T(s) ds, integrated in log s.
    ext.primitive = [T, k, d, end, cfg](double X) {
      if (!(X > 0.0)) throw InputError("extend_ir: primitive needs X > 0");
      if (X >= end) return 0.0;
      auto g = [&](double u) {
        const double s = std::exp(u);
        return std::pow(s - X, k) * std::pow(s, d) * T(s);
      };
      return quad::require_converged(quad::integrate_1d(g, std::log(X), std::log(end), cfg),
                                     "extend_ir")
          .value;
    };
    // Away from the origin the extension coincides with T.
    ext.evaluate = [T](double X) {
      if (!(X > 0.0)) throw InputError("extend_ir: pointwise values need X > 0");
      return T(X);
    };
    return ext;
  }

  // Coarse bound: G(X) = X^(k+d) ∫_1^mu2 (u - 1)^k u^(d-1) T(X u) du.
  ext.support_end = quad::kInf;
  ext.primitive = [T, k, d, mu2, cfg](double X) {
    auto g = [&](double u) { return std::pow(u - 1.0, k) * std::pow(u, d - 1) * T(X * u); };
    return std::pow(X, k + d) *
           quad::require_converged(quad::integrate_1d(g, 1.0, mu2, cfg), "extend_ir").value;
  };
  ext.evaluate = [T, k, d, mu2, cfg](double X) {
    if (!(X > 0.0)) throw InputError("extend_ir: pointwise values need X > 0");
    auto g = [&](double u) {
      double inner = 0.0;
      if (T.jet) {
        const auto x = JetX::variable(X);
        inner = (pow(x, k + d) * T.jet(x * u)).derivative(k + 1);
      } else {
        inner = quad::differentiate([&](double y) { return std::pow(y, k + d) * T(y * u); }, X,
                                    k + 1, {0.0, 0.0, quad::kInf});
      }
      return std::pow(u - 1.0, k) * std::pow(u, d - 1) * inner;
    };
    const double integral =
        quad::require_converged(quad::integrate_1d(g, 1.0, mu2, cfg), "extend_ir").value;
    return sign_pow(k + 1) / factorial(k) * std::pow(X, 1 - d) * integral;
  };
  return ext;
}

double pair_ir(const ExtendedDistribution& ext, const lagrange::SmoothFn& phi,
               const quad::QuadratureConfig& cfg) {
  if (ext.mode != Mode::IR || !ext.primitive) throw InputError("pair_ir: needs an IR extension");
  const double end = std::min(ext.support_end, phi.support_upper);
  if (!std::isfinite(end)) throw InputError("pair_ir: test function needs bounded support");
  if (phi.support_upper > ext.support_end) {
    throw InputError("pair_ir: test function must vanish beyond the IR patch");
  }
  const int k = ext.k;
  auto g = [&](double X) { return ext.primitive(X) * phi.deriv(X, k + 1); };
  std::vector<double> pts{0.0};
  for (double b : phi.breakpoints) {
    if (b > 0.0 && b < end) pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.push_back(end);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    total += quad::require_converged(quad::integrate_1d(g, pts[i], pts[i + 1], cfg), "pair_ir")
                 .value;
  }
  return total / factorial(k);
}

double harmonic_h(int k) {
  if (k < 0) throw InputError("harmonic_h: k must be >= 0");
  double h = 0.0;
  for (int p = 1; p <= k; ++p) h += sign_pow(p + 1) * binomial(k, p) / p;
  return h;
}

HomogeneousExtension extend_ir_homogeneous(const SingularDistribution& T, int k,
                                           double mu_tilde) {
  check_k(k, "extend_ir_homogeneous");
  if (!(mu_tilde > 0.0 && mu_tilde < 1.0)) {
    throw InputError("extend_ir_homogeneous: mu_tilde must lie in (0, 1)");
  }
  SingularDistribution probe = T;
  probe.homogeneity = -static_cast<double>(k + T.d);
  probe.validate();  // throws unless T(X/t) = t^(k+d) T(X)
  const int d = T.d;

  HomogeneousExtension out;
  auto& ext = out.smooth;
  ext.k = k;
  ext.d = d;
  ext.scale = mu_tilde;
  ext.mode = Mode::IR;
  ext.support_end = 1.0 / mu_tilde;
  ext.delta_coefficients.assign(k + 1, 0.0);
  ext.primitive = [T, k, d, mu_tilde](double X) {
    return -std::pow(X, k + d) * T(X) * std::log(mu_tilde * X);
  };
  ext.evaluate = [T, k, d, mu_tilde](double X) {
    if (!(X > 0.0)) throw InputError("extend_ir_homogeneous: X must be > 0");
    std::function<JetX(const JetX&)> gj;
    if (T.jet) {
      gj = [&](const JetX& x) { return pow(x, k + d) * T.jet(x) * log(mu_tilde * x); };
    }
    auto g = [&](double x) { return std::pow(x, k + d) * T(x) * std::log(mu_tilde * x); };
    return sign_pow(k) / factorial(k) * std::pow(X, 1 - d) * nth_derivative(gj, g, X, k + 1);
  };
  const double c = T(1.0);
  out.delta_coefficient = sign_pow(k) * harmonic_h(k) * c / factorial(k);
  out.sphere_moment = c * (1.0 + sign_pow(k));
  ext.delta_coefficients[k] = out.delta_coefficient;
  return out;
}

double uv_weight(int k, double tau) {
  double w = std::log(tau);
  for (int p = 1; p <= k; ++p) w += binomial(k, p) * sign_pow(p) * (std::pow(tau, p) - 1.0) / p;
  return w;
}

namespace {

JetX uv_weight_jet(int k, const JetX& tau) {
  JetX w = log(tau);
  for (int p = 1; p <= k; ++p) w += (binomial(k, p) * sign_pow(p) / p) * (pow(tau, p) - 1.0);
  return w;
}

void check_uv_order(const SingularDistribution& T, int k, int d) {
  const double omega =
      T.uv_power ? *T.uv_power : -fit_scaling(T, Region::UV).slope - 1.0;
  if (k + 1e-9 < d - omega - 1.0) {
    throw NonIntegrable("UV extension: k = " + std::to_string(k) +
                        " is below d - omega - 1; the extension is not integrable");
  }
}

// T~(X) = (-1)^k/k! X^(k-d+1) d^(k+1)/dX^(k+1) [X^d T(X) L(tau(X))].
ExtendedDistribution uv_extension(const SingularDistribution& T, int k,
                                  std::function<JetX(const JetX&)> tau, double x_end,
                                  double scale) {
  const int d = T.d;
  ExtendedDistribution ext;
  ext.k = k;
  ext.d = d;
  ext.scale = scale;
  ext.mode = Mode::UV;
  ext.support_end = x_end;
  ext.delta_coefficients.assign(k + 1, 0.0);
  ext.evaluate = [T, k, d, tau, x_end](double X) {
    if (!(X > 0.0)) throw InputError("extend_uv: X must be > 0");
    if (X >= x_end) return 0.0;
    std::function<JetX(const JetX&)> gj;
    if (T.jet) {
      gj = [&](const JetX& x) { return pow(x, d) * T.jet(x) * uv_weight_jet(k, tau(x)); };
    }
    auto g = [&](double x) {
      return std::pow(x, d) * T(x) * uv_weight(k, tau(JetX::constant(x)).value());
    };
    return sign_pow(k) / factorial(k) * std::pow(X, k - d + 1) * nth_derivative(gj, g, X, k + 1);
  };
  return ext;
}

}  // namespace

ExtendedDistribution extend_uv(const SingularDistribution& T, int k,
                               const testfunc::SrtfParams& s) {
  T.validate();
  s.validate();
  check_k(k, "extend_uv");
  check_uv_order(T, k, T.d);
  const double mu2 = s.mu2;
  if (s.alpha_limit) {
    return uv_extension(T, k, [mu2](const JetX&) { return JetX::constant(mu2); }, quad::kInf, mu2);
  }
  const double a = s.alpha;
  return uv_extension(T, k, [mu2, a](const JetX& x) { return mu2 * pow(x, a - 1.0); }, s.x_max(),
                      mu2);
}

ExtendedDistribution extend_uv_fixed(const SingularDistribution& T, int k, double t_upper) {
  T.validate();
  check_k(k, "extend_uv_fixed");
  // A bound below 1 reverses the t-range; the weight log(t_upper) turns negative.
  if (!(t_upper > 0.0)) throw InputError("extend_uv_fixed: t bound must be > 0");
  check_uv_order(T, k, T.d);
  return uv_extension(T, k, [t_upper](const JetX&) { return JetX::constant(t_upper); },
                      quad::kInf, t_upper);
}

ExtendedDistribution extend_uv_alt(const SingularDistribution& T, int k, int d, double mu2) {
  T.validate();
  check_k(k, "extend_uv_alt");
  if (d < 1) throw InputError("extend_uv_alt: d must be >= 1");
  if (!(mu2 >= 1.0)) throw InputError("extend_uv_alt: mu2 must be >= 1");
  check_uv_order(T, k, d);
  ExtendedDistribution ext;
  ext.k = k;
  ext.d = d;
  ext.scale = mu2;
  ext.mode = Mode::UV_alt;
  ext.delta_coefficients.assign(k + 1, 0.0);
  ext.evaluate = [T, k, d, mu2](double X) {
    if (!(X > 0.0)) throw InputError("extend_uv_alt: X must be > 0");
    auto g = [&](double t) {
      double inner = 0.0;  // d^(k+1)/dX^(k+1) [X^d T(X/t)]
      if (T.jet) {
        const auto x = JetX::variable(X);
        inner = (pow(x, d) * T.jet(x / t)).derivative(k + 1);
      } else {
        inner = quad::differentiate([&](double y) { return std::pow(y, d) * T(y / t); }, X, k + 1,
                                    {0.0, 0.0, quad::kInf});
      }
      return std::pow(1.0 - t, k) / std::pow(t, d + 1) * inner;
    };
    const double integral =
        quad::require_converged(quad::integrate_1d(g, 1.0, mu2), "extend_uv_alt").value;
    return sign_pow(k) / factorial(k) * std::pow(X, k - d + 1) * integral;
  };
  return ext;
}

quad::QuadratureEstimate pair_unity(const ExtendedDistribution& ext,
                                    const quad::QuadratureConfig& cfg) {
  if (ext.mode == Mode::IR) throw InputError("pair_unity: needs a UV extension");
  const int d = ext.d;
  auto g = [&](double X) { return std::pow(X, d - 1) * ext(X); };
  std::vector<double> pts{0.0, 1.0};
  if (std::isfinite(ext.support_end) && ext.support_end > 1.0) pts.push_back(ext.support_end);
  pts.push_back(std::isfinite(ext.support_end) ? ext.support_end : quad::kInf);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  quad::QuadratureEstimate total;
  total.converged = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto e = quad::integrate_1d(g, pts[i], pts[i + 1], cfg);
    total.value += e.value;
    total.error += e.error;
    total.evaluations += e.evaluations;
    total.converged = total.converged && e.converged;
  }
  return total;
}

BphzPair bphz_correspondence(const SingularDistribution& T, const testfunc::SrtfParams& f,
                             int k, double q, double p, double mu_tilde, double window) {
  T.validate();
  f.validate();
  if (k < 0 || k > 2) throw UnsupportedOrder("bphz_correspondence: k must lie in 0..2");
  if (f.alpha_limit) throw InputError("bphz_correspondence: window needs compact support");
  if (!(window > 0.0)) throw InputError("bphz_correspondence: window must be > 0");
  if (!(mu_tilde > 0.0)) throw InputError("bphz_correspondence: mu_tilde must be > 0");
  using C = std::complex<double>;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double reach = window * f.x_max();
  auto weight = [&](double X) { return T(std::abs(X)) * testfunc::srtf_uv(std::abs(X) / window, f); };

  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.max_subdivisions = 4000;
  // T(|X|) is even, so X and -X are folded together: g(X) + g(-X) = 2 Re g(X)
  // for every integrand below. This also cancels the odd 1/X pieces.
  auto integrate = [&](const std::function<double(double)>& g) {
    std::vector<double> pts{0.0, reach, window, 1.0 / mu_tilde};
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size() && pts[i] < reach; ++i) {
      total += quad::require_converged(quad::integrate_1d(g, pts[i], std::min(pts[i + 1], reach), cfg),
                                       "bphz_correspondence")
                   .value;
    }
    return C(2.0 * norm * total, 0.0);
  };

  // Jet of the transform at q subtracted under the integral.
  auto subtracted = [&](double X) {
    C jet = 0.0;
    C term = 1.0;
    const C step(0.0, -(p - q) * X);
    for (int n = 0; n <= k; ++n) {
      jet += term;
      term *= step / static_cast<double>(n + 1);
    }
    return weight(X) * (std::exp(C(0.0, -p * X)) - std::exp(C(0.0, -q * X)) * jet).real();
  };

  // Transform of the origin-cut distribution, then Taylor subtraction at q
  // with the transform's derivatives taken as moments.
  auto cut_transform = [&](double pp) {
    return integrate([&](double X) {
      const double theta = (mu_tilde * X < 1.0) ? 1.0 : 0.0;
      return weight(X) * (std::cos(pp * X) - theta);
    });
  };
  auto moment = [&](int n) {
    return integrate([&](double X) {
      return weight(X) * (std::pow(C(0.0, -X), n) * std::exp(C(0.0, -q * X))).real();
    });
  };
  C extended = cut_transform(p) - cut_transform(q);
  double fact = 1.0;
  for (int n = 1; n <= k; ++n) {
    fact *= n;
    extended -= std::pow(p - q, n) / fact * moment(n);
  }
  return {extended, integrate(subtracted)};
}

}  // namespace causal::extend
