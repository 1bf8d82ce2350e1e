#include "causal/split.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "causal/errors.hpp"
#include "causal/quadrature.hpp"

namespace causal::split {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const C kI(0.0, 1.0);

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void check_mu2(double mu2) {
  if (!(mu2 > 1.0) || !std::isfinite(mu2)) throw InputError("mu2 must be > 1");
}

// Derivatives of s -> T̄(s p): g^(n)(s) = p^n T̄^(n)(s p).
struct Scaled {
  const CausalModelDistribution& Tm;
  double p;
  double operator()(double s, int n) const { return std::pow(p, n) * Tm.derivative(s * p, n); }
};

using Deriv = std::function<double(double, int)>;

// Hadamard finite part of ∫_L^U g(s) / (s - a)^j ds for L < a < U, lowered to
// a principal value by j - 1 integrations by parts.
double finite_part(const Deriv& g, int shift, double a, int j, double L, double U) {
  if (j == 1) {
    auto f = [&](double s) { return g(s, shift); };
    return quad::require_converged(quad::integrate_pv(f, a, L, U), "finite part").value;
  }
  const double m = j - 1;
  const double boundary =
      (g(U, shift) * std::pow(U - a, -m) - g(L, shift) * std::pow(L - a, -m)) / (-m);
  return boundary + finite_part(g, shift + 1, a, j - 1, L, U) / m;
}

// Growth exponent of |T̄| between |p| = 1e4 and 1e5, either sign.
double tail_growth(const CausalModelDistribution& Tm) {
  double worst = -quad::kInf;
  for (double sign : {1.0, -1.0}) {
    const double a = std::abs(Tm(sign * 1e4));
    const double b = std::abs(Tm(sign * 1e5));
    if (a < 1e-300 || b < 1e-300) continue;
    worst = std::max(worst, std::log(b / a) / std::log(10.0));
  }
  return worst;
}

struct Parts {
  double finite = 0.0;  // finite part of ∫ g K
  double delta = 0.0;   // coefficient of i pi in the retarded kernel
  double prefactor = 0.0;
};

// K(s) = 1 / ((s - a)^n (1 - s)) with a = 1/mu2, n = omega + 1. With b = 1 - a,
// K = sum_j (s - a)^-j / b^(n-j+1) + 1 / (b^n (1 - s)).
Parts kernel_parts(const CausalModelDistribution& Tm, double p, double mu2) {
  Tm.validate();
  check_mu2(mu2);
  const int n = Tm.omega + 1;
  if (p != 0.0 && tail_growth(Tm) > Tm.omega + 0.5) {
    throw NonIntegrable("dispersion integral diverges: " + Tm.name + " grows faster than |p|^" +
                        std::to_string(Tm.omega) + "; raise omega");
  }
  const double a = 1.0 / mu2;
  const double b = 1.0 - a;
  const Scaled gs{Tm, p};
  const Deriv g = gs;
  auto K = [&](double s) { return 1.0 / (std::pow(s - a, n) * (1.0 - s)); };
  auto outer_f = [&](double s) { return g(s, 0) * K(s); };
  const double L = a - b;
  const double U = 1.0 + b;
  Parts r;
  r.finite = quad::require_converged(quad::integrate_1d(outer_f, -quad::kInf, L), "retarded tail").value +
             quad::require_converged(quad::integrate_1d(outer_f, U, quad::kInf), "retarded tail").value;
  for (int j = 1; j <= n; ++j) {
    const double w = std::pow(b, -(n - j + 1));
    r.finite += w * finite_part(g, 0, a, j, L, U);
    r.delta += w * g(a, j - 1) / factorial(j - 1);
  }
  auto g0 = [&](double s) { return g(s, 0); };
  r.finite -= std::pow(b, -n) *
              quad::require_converged(quad::integrate_pv(g0, 1.0, L, U), "retarded pole").value;
  r.delta -= std::pow(b, -n) * g(1.0, 0);
  r.prefactor = std::pow(b, n);
  return r;
}

C assemble(const Parts& r, double sign) {
  return kI / (2.0 * kPi) * r.prefactor * (r.finite + sign * kI * kPi * r.delta);
}

}  // namespace

double CausalModelDistribution::operator()(double p) const {
  return fourier(ModelJet::constant(p)).value();
}

double CausalModelDistribution::derivative(double p, int n) const {
  if (n < 0 || n > kMaxOmega + 1) throw UnsupportedOrder("model derivative order out of range");
  return fourier(ModelJet::variable(p)).derivative(n);
}

void CausalModelDistribution::validate() const {
  if (!fourier) throw InputError("model distribution has no Fourier transform");
  if (omega < 0 || omega > kMaxOmega) {
    throw UnsupportedOrder("omega must be in [0, " + std::to_string(kMaxOmega) + "]");
  }
}

CausalModelDistribution model(const std::string& name, int omega) {
  CausalModelDistribution m;
  m.name = name;
  int natural = 0;
  if (name == "gaussian") {
    m.fourier = [](const ModelJet& p) { return exp(p * p * -1.0); };
    m.analytic = [](C p) { return std::exp(-p * p); };
  } else if (name == "lorentz") {
    m.fourier = [](const ModelJet& p) { return 1.0 / (p * p + 1.0); };
    m.analytic = [](C p) { return 1.0 / (p * p + 1.0); };
  } else if (name == "p2_lorentz") {
    m.fourier = [](const ModelJet& p) { return p * p / (p * p + 1.0); };
    m.analytic = [](C p) { return p * p / (p * p + 1.0); };
  } else if (name == "p4_lorentz") {
    m.fourier = [](const ModelJet& p) { return p * p * p * p / (p * p + 1.0); };
    m.analytic = [](C p) { return p * p * p * p / (p * p + 1.0); };
    natural = 2;
  } else {
    throw InputError("unknown model distribution: " + name);
  }
  m.omega = omega < 0 ? natural : omega;
  m.validate();
  return m;
}

std::vector<std::string> model_names() { return {"gaussian", "lorentz", "p2_lorentz", "p4_lorentz"}; }

C ThetaVFourier::coefficient(double eps) const { return prefactor * kI / C(p0, eps); }

ThetaVFourier theta_v_fourier(double p0, int D, std::span<const double> v) {
  if (D < 2) throw InputError("theta_v_fourier: D must be >= 2");
  if (!v.empty() && static_cast<int>(v.size()) != D - 1) {
    throw InputError("theta_v_fourier: v must have D - 1 spatial components");
  }
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (norm2 >= 1.0) throw InputError("theta_v_fourier: |v| must be < 1");
  ThetaVFourier r;
  r.D = D;
  r.p0 = p0;
  r.prefactor = std::pow(2.0 * kPi, D / 2.0 - 1.0);
  r.direction.assign(D - 1, 0.0);
  if (norm2 > 0.0) {
    for (int i = 0; i < D - 1; ++i) r.direction[i] = v[i] / std::sqrt(norm2);
  } else {
    r.direction[0] = 1.0;
  }
  return r;
}

std::pair<C, C> theta_smeared_check(double p0, double sigma, std::span<const double> v) {
  if (!(sigma > 0.0)) throw InputError("theta_smeared_check: sigma must be > 0");
  // D = 2 makes the prefactor 1; v only fixes the direction record.
  const auto rec = theta_v_fourier(p0, 2, v.empty() ? std::span<const double>{} : v.first(1));
  auto ghat = [sigma](double q) {
    return sigma * std::sqrt(2.0 * kPi) * std::exp(-0.5 * sigma * sigma * q * q);
  };
  // i / (k + i0) = i PV(1/k) + pi delta(k).
  auto shifted = [&](double k) { return ghat(rec.p0 - k); };
  const double pv = quad::require_converged(quad::integrate_pv(shifted, 0.0, -quad::kInf, quad::kInf),
                                            "theta smeared")
                        .value;
  const C via_pole = rec.prefactor / (2.0 * kPi) * (kI * pv + kPi * ghat(rec.p0));
  auto direct_f = [&](double t) {
    return std::exp(-0.5 * t * t / (sigma * sigma)) * std::exp(kI * p0 * t);
  };
  const C direct =
      quad::require_converged(quad::integrate_1d_complex(direct_f, 0.0, quad::kInf), "theta direct")
          .value;
  return {via_pole, direct};
}

std::pair<double, double> t_integral_closed(double p0, double k0, int omega, double mu2) {
  if (omega < 0) throw InputError("t_integral_closed: omega must be >= 0");
  if (!(mu2 >= 1.0)) throw InputError("t_integral_closed: mu2 must be >= 1");
  const double lo = 1.0 / mu2;
  if (mu2 == 1.0) return {0.0, 0.0};
  const int n = omega + 2;
  const double closed = std::pow(mu2 - 1.0, omega + 1) /
                        ((omega + 1) * (p0 - k0) * std::pow(p0 - k0 * mu2, omega + 1));
  const bool on_path = p0 != 0.0 && k0 / p0 >= lo && k0 / p0 <= 1.0;
  if (!on_path) {
    auto f = [&](double t) { return std::pow(1.0 - t, omega) / std::pow(p0 * t - k0, n); };
    quad::QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    const double num = quad::require_converged(quad::integrate_1d(f, lo, 1.0, cfg), "t-integral").value;
    return {num, closed};
  }
  const double t0 = k0 / p0;
  if (t0 == lo || t0 == 1.0) throw InputError("t_integral_closed: pole at an endpoint");
  // (p0 t - k0)^-n = p0^-n (t - t0)^-n.
  Deriv g = [&](double t, int k) {
    if (k > omega) return 0.0;
    double fall = 1.0;
    for (int i = 0; i < k; ++i) fall *= omega - i;
    return fall * std::pow(-1.0, k) * std::pow(1.0 - t, omega - k) / std::pow(p0, n);
  };
  return {finite_part(g, 0, t0, n, lo, 1.0), closed};
}

double retarded_prefactor(int omega, double mu2) {
  check_mu2(mu2);
  return std::pow((mu2 - 1.0) / mu2, omega + 1);
}

double subtraction_point(double p, double mu2) {
  check_mu2(mu2);
  return p / mu2;
}

C retarded_extension(const CausalModelDistribution& Tm, double p, double mu2) {
  return assemble(kernel_parts(Tm, p, mu2), 1.0);
}

C advanced_extension(const CausalModelDistribution& Tm, double p, double mu2) {
  return assemble(kernel_parts(Tm, p, mu2), -1.0);
}

C extension_by_contour(const CausalModelDistribution& Tm, double p, double mu2, bool retarded) {
  Tm.validate();
  check_mu2(mu2);
  if (!Tm.analytic) throw InputError("extension_by_contour: model has no complex continuation");
  const int n = Tm.omega + 1;
  const double a = 1.0 / mu2;
  const double b = 1.0 - a;
  // Retarded poles sit just above the axis, so the path dips below; T̄(sp)
  // must stay clear of its own singularities at |Im(sp)| = 1.
  const double depth = (retarded ? -1.0 : 1.0) * std::min(0.3 * b, 0.4 / std::max(1.0, std::abs(p)));
  const double centre = 0.5 * (a + 1.0);
  const double width = b + 0.5;
  auto integrand = [&](double x) {
    const double z = (x - centre) / width;
    const double bump = std::exp(-z * z);
    const C s(x, depth * bump);
    const C ds(1.0, depth * bump * (-2.0 * z / width));
    const C K = 1.0 / (std::pow(s - a, n) * (1.0 - s));
    return Tm.analytic(s * p) * K * ds;
  };
  std::vector<double> cuts = {-quad::kInf, a - b, a, 1.0, 1.0 + b, quad::kInf};
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  C total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += quad::require_converged(quad::integrate_1d_complex(integrand, cuts[i], cuts[i + 1], cfg),
                                     "contour")
                 .value;
  }
  return kI / (2.0 * kPi) * std::pow(b, n) * total;
}

double taylor_remainder_route(const CausalModelDistribution& Tm, double p, double mu2) {
  Tm.validate();
  check_mu2(mu2);
  const double q = p / mu2;
  const double step = p * (mu2 - 1.0) / mu2;
  double sum = 0.0;
  for (int n = 0; n <= Tm.omega; ++n) sum += std::pow(step, n) / factorial(n) * Tm.derivative(q, n);
  return Tm(p) - sum;
}

SplitResult splitting_difference_check(const CausalModelDistribution& Tm, double p, double mu2) {
  const auto parts = kernel_parts(Tm, p, mu2);
  SplitResult r;
  r.retarded = assemble(parts, 1.0);
  r.advanced = assemble(parts, -1.0);
  r.difference = r.retarded - r.advanced;
  r.bphz_remainder = taylor_remainder_route(Tm, p, mu2);
  return r;
}

}  // namespace causal::split
