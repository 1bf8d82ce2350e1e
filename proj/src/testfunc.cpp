#include "causal/testfunc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "causal/jet.hpp"
#include "causal/quadrature.hpp"

namespace causal::testfunc {

namespace {

quad::QuadratureConfig fine_config() {
  quad::QuadratureConfig c;
  c.rel_tol = 1e-14;
  c.abs_tol = 1e-18;
  c.max_subdivisions = 200;
  return c;
}

// Running integral of g from lo, backed by prefix sums over fixed panels.
class Cumulative {
 public:
  Cumulative(quad::RealFn g, double lo, double hi, int panels)
      : g_(std::move(g)), lo_(lo), width_((hi - lo) / panels), prefix_(panels + 1, 0.0) {
    const auto cfg = fine_config();
    for (int i = 0; i < panels; ++i) {
      const double a = lo_ + i * width_;
      prefix_[i + 1] = prefix_[i] + quad::integrate_1d(g_, a, a + width_, cfg).value;
    }
  }

  double operator()(double x) const {
    const int panels = static_cast<int>(prefix_.size()) - 1;
    if (x <= lo_) return 0.0;
    const double rel = (x - lo_) / width_;
    if (rel >= panels) return prefix_.back();
    const int i = static_cast<int>(rel);
    const double a = lo_ + i * width_;
    if (x == a) return prefix_[i];
    return prefix_[i] + quad::integrate_1d(g_, a, x, fine_config()).value;
  }

  double total() const { return prefix_.back(); }

 private:
  quad::RealFn g_;
  double lo_;
  double width_;
  std::vector<double> prefix_;
};

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(1.0 / (x * x - 1.0)) : 0.0; }

const Cumulative& bump_cumulative() {
  static const Cumulative c(bump, -1.0, 0.0, 32);
  return c;
}

// Kernel exp(-(s(1-s))^-nu) of the nu construction on the unit interval.
double nu_kernel(double s, double nu) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double arg = -std::pow(s * (1.0 - s), -nu);
  return arg < -745.0 ? 0.0 : std::exp(arg);
}

const Cumulative& nu_cumulative(double nu) {
  static std::mutex guard;
  static std::map<double, std::unique_ptr<Cumulative>> cache;
  std::lock_guard lock(guard);
  auto& slot = cache[nu];
  if (!slot) {
    slot = std::make_unique<Cumulative>([nu](double s) { return nu_kernel(s, nu); }, 0.0,
                                        0.5, 32);
  }
  return *slot;
}

// U(z) = ∫_z^1 k / ∫_0^1 k, evaluated from the nearer end so that
// U(z) + U(1 - z) = 1 holds to rounding.
double u_profile(double z, double nu) {
  if (z <= 0.0) return 1.0;
  if (z >= 1.0) return 0.0;
  const auto& c = nu_cumulative(nu);
  const double full = 2.0 * c.total();
  if (z <= 0.5) return 1.0 - c(z) / full;
  return c(1.0 - z) / full;
}

double rho_cumulative(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const auto& c = bump_cumulative();
  const double norm = 2.0 * c.total();
  if (x <= 0.0) return c(x) / norm;
  return 1.0 - c(-x) / norm;
}

template <int N>
Jet<N> u_profile_jet(const Jet<N>& z, double nu, bool with_value) {
  const double z0 = z.value();
  if (z0 <= 0.0) return Jet<N>::constant(1.0);
  if (z0 >= 1.0) return Jet<N>::constant(0.0);
  std::array<double, N + 1> g{};
  if (with_value) g[0] = u_profile(z0, nu);
  if constexpr (N > 0) {
    const auto s = Jet<N - 1>::variable(z0);
    const auto arg = -pow(s * (1.0 - s), -nu);
    if (arg.value() > -700.0) {
      const auto k = exp(arg);
      const double full = 2.0 * nu_cumulative(nu).total();
      for (int n = 1; n <= N; ++n) g[n] = -k.c[n - 1] / (n * full);
    }
  }
  return compose<N>(g, z);
}

template <int N>
Jet<N> rho_cumulative_jet(const Jet<N>& y, bool with_value) {
  const double y0 = y.value();
  if (y0 <= -1.0) return Jet<N>::constant(0.0);
  if (y0 >= 1.0) return Jet<N>::constant(1.0);
  std::array<double, N + 1> g{};
  if (with_value) g[0] = rho_cumulative(y0);
  if constexpr (N > 0) {
    const auto s = Jet<N - 1>::variable(y0);
    const auto arg = 1.0 / (s * s - 1.0);
    if (arg.value() > -700.0) {
      const auto r = mollifier_norm() * exp(arg);
      for (int n = 1; n <= N; ++n) g[n] = r.c[n - 1] / n;
    }
  }
  return compose<N>(g, y);
}

// Falling edge over y in [0, h]: 1 at y = 0, 0 at y = h. Without
// `with_value` the constant term is left unset (derivatives only).
template <int N>
Jet<N> falling_edge(const Jet<N>& y, const Jet<N>& h, const PartitionParams& p,
                    bool with_value) {
  if (p.variant == Variant::nu_integral) return u_profile_jet<N>(y / h, p.nu, with_value);
  const Jet<N> eps = (p.epsilon / p.h) * h;
  return 1.0 - rho_cumulative_jet<N>((y - 0.5 * h) / eps, with_value);
}

template <int N>
Jet<N> srtf_jet(double X, const SrtfParams& s, bool uv, bool with_value = true) {
  s.validate();
  if (!(X >= 0.0)) throw InputError("srtf: X must be >= 0");
  const auto x = Jet<N>::variable(X);
  if (!uv) {
    const double w = s.rise();
    if (X == 0.0) return Jet<N>::constant(0.0);
    if (X < w) return 1.0 - falling_edge<N>(x, Jet<N>::constant(w), s.partition, with_value);
  }
  if (X <= 1.0 || s.alpha_limit) return Jet<N>::constant(1.0);
  if (X >= s.x_max()) return Jet<N>::constant(0.0);
  const Jet<N> h = s.mu2 * pow(x, s.alpha) - 1.0;
  return falling_edge<N>(x - 1.0, h, s.partition, with_value);
}

}  // namespace

std::string to_string(Variant v) {
  return v == Variant::nu_integral ? "nu_integral" : "mollifier_convolution";
}

Variant variant_from_string(const std::string& s) {
  if (s == "nu_integral" || s == "nu") return Variant::nu_integral;
  if (s == "mollifier_convolution" || s == "convolution") return Variant::mollifier_convolution;
  throw InputError("unknown partition variant '" + s + "'");
}

void PartitionParams::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("partition: h must be > 0");
  if (variant == Variant::mollifier_convolution && !(epsilon > 0.0 && epsilon < 0.5 * h)) {
    throw InputError("partition: epsilon must lie in (0, h/2)");
  }
  if (variant == Variant::nu_integral && !(nu > 0.0) ) {
    throw InputError("partition: nu must be > 0");
  }
}

void SrtfParams::validate() const {
  if (!(mu2 > 1.0) || !std::isfinite(mu2)) throw InputError("srtf: mu2 must be > 1");
  if (!alpha_limit && !(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("srtf: alpha must lie in (0, 1)");
  }
  if (rise_width > 1.0) throw InputError("srtf: rise width must not exceed 1");
  partition.validate();
}

double SrtfParams::x_max() const {
  if (alpha_limit) return std::numeric_limits<double>::infinity();
  return std::pow(mu2, 1.0 / (1.0 - alpha));
}

double SrtfParams::rise() const {
  return rise_width > 0.0 ? rise_width : std::min(mu2 - 1.0, 0.5);
}

double SrtfParams::roll_width(double X) const { return mu2 * std::pow(X, alpha) - 1.0; }

double mollifier_norm() {
  static const double n = 1.0 / (2.0 * bump_cumulative().total());
  return n;
}

double mollifier_rho(double x) { return mollifier_norm() * bump(x); }

double mollifier_cumulative(double x) { return rho_cumulative(x); }

double elementary_u(double x, const PartitionParams& p) {
  p.validate();
  if (p.variant == Variant::nu_integral) {
    const double y = std::abs(x - p.j * p.h);
    return y >= p.h ? 0.0 : u_profile(y / p.h, p.nu);
  }
  return rho_cumulative((x - p.j * p.h) / p.epsilon) -
         rho_cumulative((x - (p.j + 1) * p.h) / p.epsilon);
}

double partition_sum(double x, const PartitionParams& p, int j_lo, int j_hi) {
  double sum = 0.0;
  PartitionParams q = p;
  for (int j = j_lo; j <= j_hi; ++j) {
    q.j = j;
    sum += elementary_u(x, q);
  }
  return sum;
}

double complement_sum(double x, const PartitionParams& p) {
  p.validate();
  if (p.variant == Variant::nu_integral) {
    PartitionParams base = p;
    base.j = 0;
    return elementary_u(x - p.j * p.h, base) + elementary_u((p.j + 1) * p.h - x, base);
  }
  // Cells overlap only across their shared endpoints.
  const int left = (x - p.j * p.h < 0.5 * p.h) ? p.j - 1 : p.j;
  return partition_sum(x, p, left, left + 1);
}

double srtf_f(double X, const SrtfParams& s) { return srtf_jet<0>(X, s, false).value(); }

double srtf_uv(double X, const SrtfParams& s) { return srtf_jet<0>(X, s, true).value(); }

Derivatives srtf_derivatives(double X, const SrtfParams& s, bool uv) {
  const auto j = srtf_jet<kMaxJetOrder>(X, s, uv);
  Derivatives d{};
  for (int n = 0; n <= kMaxJetOrder; ++n) d[n] = j.derivative(n);
  return d;
}

double srtf_derivative(double X, int n, const SrtfParams& s, bool uv) {
  if (n < 0 || n > kMaxJetOrder) throw UnsupportedOrder("srtf_derivative: order out of range");
  if (n == 0) return uv ? srtf_uv(X, s) : srtf_f(X, s);
  return srtf_jet<kMaxJetOrder>(X, s, uv, false).derivative(n);
}

double t_max(double X, const SrtfParams& s) {
  s.validate();
  if (!(X > 0.0)) throw InputError("t_max: X must be > 0");
  if (s.alpha_limit) return s.mu2;
  return s.mu2 * std::pow(X, s.alpha - 1.0);
}

std::complex<double> fourier_gamma_j(double kfreq, int j, const PartitionParams& p) {
  PartitionParams q = p;
  q.j = j;
  q.validate();
  double lo = 0.0;
  double hi = 0.0;
  if (q.variant == Variant::nu_integral) {
    lo = (j - 1) * q.h;
    hi = (j + 1) * q.h;
  } else {
    lo = j * q.h - q.epsilon;
    hi = (j + 1) * q.h + q.epsilon;
  }
  auto integrand = [&](double x) {
    return elementary_u(x, q) * std::exp(std::complex<double>(0.0, -kfreq * x));
  };
  auto cfg = fine_config();
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-15;
  const auto est = quad::integrate_1d_complex(integrand, lo, hi, cfg);
  return est.value;
}

}  // namespace causal::testfunc
