#include "causal/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace causal::quad {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525456052, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Value paired with the integrated error of an inner nesting level.
struct Vec2 {
  double v = 0.0;
  double e = 0.0;
  Vec2& operator+=(const Vec2& o) {
    v += o.v;
    e += o.e;
    return *this;
  }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return {a.v - b.v, a.e - b.e}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.v, s * a.e}; }
};

double magnitude(double x) { return std::abs(x); }
double magnitude(const std::complex<double>& z) { return std::abs(z); }
double magnitude(const Vec2& p) { return std::abs(p.v); }

template <class V>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  V result{};
  double error = 0.0;
  bool at_floor = false;  // error is the rounding floor, splitting cannot help
};

template <class V, class F>
Panel<V> gauss_kronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const V fc = f(center);
  V resk = kWgk[10] * fc;
  V resg{};
  double resabs = kWgk[10] * magnitude(fc);
  std::array<V, 10> f1{};
  std::array<V, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const V sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (magnitude(f1[j]) + magnitude(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const V reskh = 0.5 * resk;
  double resasc = kWgk[10] * magnitude(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (magnitude(f1[j] - reskh) + magnitude(f2[j] - reskh));
  }
  const double scale = std::abs(half);
  resasc *= scale;
  resabs *= scale;
  double err = magnitude(resk - resg) * scale;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  bool at_floor = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps) &&
      50.0 * kEps * resabs >= err) {
    err = 50.0 * kEps * resabs;
    at_floor = true;
  }
  return {a, b, half * resk, err, at_floor};
}

template <class V, class F>
Estimate<V> adaptive(const F& f, double a, double b, const QuadratureConfig& cfg) {
  auto cmp = [](const Panel<V>& x, const Panel<V>& y) { return x.error < y.error; };
  std::priority_queue<Panel<V>, std::vector<Panel<V>>, decltype(cmp)> heap(cmp);
  auto first = gauss_kronrod<V>(f, a, b);
  long evals = 21;
  V total = first.result;
  double total_err = first.error;
  heap.push(first);
  std::vector<Panel<V>> frozen;  // panels too small to split further
  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * magnitude(total)); };
  int splits = 0;
  while (total_err > tolerance() && splits < cfg.max_subdivisions && !heap.empty()) {
    Panel<V> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    if (worst.at_floor ||
        !(std::abs(width) > 1e3 * kEps * std::max(std::abs(mid), 1e-300)) ||
        mid == worst.a || mid == worst.b) {
      frozen.push_back(worst);
      continue;
    }
    auto left = gauss_kronrod<V>(f, worst.a, mid);
    auto right = gauss_kronrod<V>(f, mid, worst.b);
    evals += 42;
    ++splits;
    total = total - worst.result + left.result + right.result;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (splits % 64 == 0) {
      // Re-sum to stop the running totals from drifting.
      V t{};
      double e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        t += copy.top().result;
        e += copy.top().error;
        copy.pop();
      }
      for (const auto& p : frozen) {
        t += p.result;
        e += p.error;
      }
      total = t;
      total_err = e;
    }
  }
  V t{};
  double e = 0.0;
  double floor_err = 0.0;
  while (!heap.empty()) {
    t += heap.top().result;
    e += heap.top().error;
    if (heap.top().at_floor) floor_err += heap.top().error;
    heap.pop();
  }
  for (const auto& p : frozen) {
    t += p.result;
    e += p.error;
    if (p.at_floor) floor_err += p.error;
  }
  Estimate<V> out;
  out.value = t;
  out.error = e;
  out.evaluations = evals;
  // Panels whose error is pure rounding are accepted as they stand.
  out.converged = std::isfinite(magnitude(t)) &&
                  e - floor_err <= std::max(cfg.abs_tol, cfg.rel_tol * magnitude(t));
  return out;
}

// Maps an integral over [a, b] (possibly unbounded) onto a finite interval.
template <class V, class F>
Estimate<V> integrate_any(const F& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (std::isnan(a) || std::isnan(b)) throw InputError("integrate_1d: NaN bound");
  if (a == b) return {V{}, 0.0, 0, true};
  if (a > b) {
    auto r = integrate_any<V>(f, b, a, cfg);
    r.value = -1.0 * r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return adaptive<V>(f, a, b, cfg);
  if (lo_inf && hi_inf) {
    auto g = [&f](double t) {
      const double d = 1.0 - t * t;
      return ((1.0 + t * t) / (d * d)) * f(t / d);
    };
    return adaptive<V>(g, -1.0, 1.0, cfg);
  }
  if (hi_inf) {
    auto g = [&f, a](double t) {
      const double d = 1.0 - t;
      return (1.0 / (d * d)) * f(a + t / d);
    };
    return adaptive<V>(g, 0.0, 1.0, cfg);
  }
  auto g = [&f, b](double t) {
    const double d = 1.0 - t;
    return (1.0 / (d * d)) * f(b - t / d);
  };
  return adaptive<V>(g, 0.0, 1.0, cfg);
}

}  // namespace

std::string to_string(Transform t) {
  switch (t) {
    case Transform::none: return "none";
    case Transform::semi_infinite: return "semi_infinite";
    case Transform::doubly_infinite: return "doubly_infinite";
  }
  return "none";
}

Transform transform_from_string(const std::string& s) {
  if (s == "none") return Transform::none;
  if (s == "semi_infinite") return Transform::semi_infinite;
  if (s == "doubly_infinite") return Transform::doubly_infinite;
  throw InputError("unknown transform '" + s + "'");
}

QuadratureDefaults& quadrature_defaults() {
  static QuadratureDefaults d;
  return d;
}

QuadratureConfig QuadratureConfig::nd_default() {
  QuadratureConfig c;
  c.rel_tol = 1e-6;
  c.abs_tol = 1e-12;
  c.max_subdivisions = 200;
  return c;
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw InputError("QuadratureConfig: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw InputError("QuadratureConfig: abs_tol must be >= 0");
  if (max_subdivisions < 1) throw InputError("QuadratureConfig: max_subdivisions must be >= 1");
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
  QuadratureConfig c = *this;
  c.rel_tol *= factor;
  c.abs_tol *= factor;
  return c;
}

QuadratureEstimate integrate_1d(const RealFn& f, double a, double b,
                                const QuadratureConfig& cfg) {
  auto est = integrate_any<double>(f, a, b, cfg);
  return est;
}

ComplexEstimate integrate_1d_complex(const ComplexFn& f, double a, double b,
                                     const QuadratureConfig& cfg) {
  return integrate_any<std::complex<double>>(f, a, b, cfg);
}

QuadratureEstimate integrate_pv(const RealFn& f, double pole, double a, double b,
                                const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a < pole && pole < b)) {
    throw InputError("integrate_pv: pole must lie strictly inside (a, b)");
  }
  const double left = pole - a;
  const double right = b - pole;
  const double reach = std::min(left, right);  // may be +inf

  QuadratureEstimate out;
  out.converged = true;
  auto absorb = [&out](const QuadratureEstimate& e, double sign = 1.0) {
    out.value += sign * e.value;
    out.error += e.error;
    out.evaluations += e.evaluations;
    out.converged = out.converged && e.converged;
  };

  auto direct = [&f, pole](double x) { return f(x) / (x - pole); };
  if (left > reach) absorb(integrate_1d(direct, a, pole - reach, cfg));
  if (right > reach) absorb(integrate_1d(direct, pole + reach, b, cfg));

  // Odd part about the pole; smooth and finite once the window is excised.
  auto paired = [&f, pole](double u) { return (f(pole + u) - f(pole - u)) / u; };

  const double delta0 = std::isfinite(reach) ? 0.5 * reach : 0.5;
  const auto outer = integrate_1d(paired, delta0, reach, cfg);
  absorb(outer);
  const double base = out.value;
  out.value = 0.0;

  // Missing piece ∫_0^δ paired(u) du = c1 δ + c3 δ³ + ...: extrapolate δ -> 0.
  constexpr int kLevels = 7;
  std::array<std::array<double, kLevels>, kLevels> table{};
  double partial = 0.0;
  double delta = delta0;
  table[0][0] = base;
  for (int i = 1; i < kLevels; ++i) {
    const double next = 0.5 * delta;
    const auto piece = integrate_1d(paired, next, delta, cfg);
    out.error += piece.error;
    out.evaluations += piece.evaluations;
    out.converged = out.converged && piece.converged;
    partial += piece.value;
    delta = next;
    table[i][0] = base + partial;
    for (int j = 1; j <= i; ++j) {
      const double factor = std::pow(2.0, 2 * j - 1) - 1.0;
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor;
    }
  }
  out.value = table[kLevels - 1][kLevels - 1];
  const double extrap_err =
      std::abs(table[kLevels - 1][kLevels - 1] - table[kLevels - 1][kLevels - 2]);
  out.error += extrap_err;
  out.converged = out.converged &&
                  extrap_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value)) * 10.0;
  return out;
}

NdEstimate integrate_nested(const NdFn& f, const std::vector<LevelLimits>& limits,
                            const QuadratureConfig& cfg) {
  cfg.validate();
  const int dim = static_cast<int>(limits.size());
  if (dim < 1 || dim > 4) throw InputError("integrate_nested: dimension must be 1..4");
  NdEstimate out;
  out.level_failures.assign(dim, 0);
  std::array<double, 4> x{};
  long evals = 0;

  std::function<Vec2(int)> level = [&](int depth) -> Vec2 {
    const auto outer = std::span<const double>(x.data(), depth);
    const auto [lo, hi] = limits[depth](outer);
    const QuadratureConfig c = cfg.tightened(std::pow(0.1, depth));
    auto integrand = [&](double xi) -> Vec2 {
      x[depth] = xi;
      if (depth + 1 == dim) {
        ++evals;
        return {f(std::span<const double>(x.data(), dim)), 0.0};
      }
      return level(depth + 1);
    };
    auto est = integrate_any<Vec2>(integrand, lo, hi, c);
    if (!est.converged) ++out.level_failures[depth];
    return {est.value.v, est.error + std::abs(est.value.e)};
  };

  const Vec2 total = level(0);
  out.value = total.v;
  out.error = total.e;
  out.evaluations = evals;
  out.converged = std::all_of(out.level_failures.begin(), out.level_failures.end(),
                              [](int n) { return n == 0; }) &&
                  out.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value)) * 10.0;
  return out;
}

NdEstimate integrate_box(const NdFn& f, std::span<const std::pair<double, double>> box,
                         const QuadratureConfig& cfg) {
  std::vector<LevelLimits> limits;
  for (const auto& b : box) {
    limits.push_back([b](std::span<const double>) { return b; });
  }
  return integrate_nested(f, limits, cfg);
}

NdEstimate integrate_simplex(const NdFn& f, int dim, const QuadratureConfig& cfg) {
  if (dim < 1 || dim > 4) throw InputError("integrate_simplex: dimension must be 1..4");
  std::vector<LevelLimits> limits;
  for (int i = 0; i < dim; ++i) {
    limits.push_back([](std::span<const double> outer) {
      double used = 0.0;
      for (double v : outer) used += v;
      return std::pair{0.0, std::max(0.0, 1.0 - used)};
    });
  }
  return integrate_nested(f, limits, cfg);
}

namespace {

enum class Stencil { central, forward, backward };

// Finite-difference estimate of the n-th derivative at step h.
double stencil(const RealFn& f, double x, int n, double h, Stencil s) {
  if (s == Stencil::central) {
    switch (n) {
      case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
      case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
      case 3:
        return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) /
               (2.0 * h * h * h);
      case 4:
        return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) +
                f(x - 2 * h)) /
               (h * h * h * h);
      default: break;
    }
  }
  // n-th forward (or backward) difference.
  const double dir = (s == Stencil::forward) ? 1.0 : -1.0;
  double acc = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= n; ++i) {
    const double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom * f(x + dir * i * h);
    binom = binom * (n - i) / (i + 1);
  }
  return acc * std::pow(dir, n) / std::pow(h, n);
}

}  // namespace

DerivativeEstimate differentiate_with_error(const RealFn& f, double x, int order,
                                            const DerivativeOptions& opt) {
  if (order < 0) throw InputError("differentiate: negative order");
  if (order > 4) throw UnsupportedOrder("differentiate: order > 4 is not supported");
  if (order == 0) return {f(x), 0.0};
  if (x < opt.domain_lower || x > opt.domain_upper) {
    throw InputError("differentiate: point outside the function domain");
  }

  double h = opt.initial_step > 0.0 ? opt.initial_step : 0.1 * (1.0 + std::abs(x));
  const int reach = (order <= 2) ? 1 : 2;
  const double room_lo = (x - opt.domain_lower) / reach;
  const double room_hi = (opt.domain_upper - x) / reach;
  Stencil kind = Stencil::central;
  if (std::min(room_lo, room_hi) < h) {
    if (std::min(room_lo, room_hi) > 0.0) {
      h = 0.9 * std::min(room_lo, room_hi);
    } else if (room_hi >= room_lo) {
      kind = Stencil::forward;
      h = std::min(h, 0.999 * (opt.domain_upper - x) / order);
    } else {
      kind = Stencil::backward;
      h = std::min(h, 0.999 * (x - opt.domain_lower) / order);
    }
  }
  if (!(h > 0.0)) throw InputError("differentiate: no room for a stencil inside the domain");

  // Ridders' polynomial extrapolation of the stencil in the step size.
  constexpr int kTab = 12;
  constexpr double kShrink = 1.4;
  constexpr double kSafe = 2.0;
  const int power = (kind == Stencil::central) ? 2 : 1;
  const double shrink_p = std::pow(kShrink, power);
  std::array<std::array<double, kTab>, kTab> a{};
  a[0][0] = stencil(f, x, order, h, kind);
  DerivativeEstimate best{a[0][0], std::numeric_limits<double>::max()};
  for (int i = 1; i < kTab; ++i) {
    h /= kShrink;
    a[0][i] = stencil(f, x, order, h, kind);
    double fac = shrink_p;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= shrink_p;
      const double errt = std::max(std::abs(a[j][i] - a[j - 1][i]),
                                   std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= best.error) {
        best.error = errt;
        best.value = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * best.error) break;
  }
  return best;
}

double differentiate(const RealFn& f, double x, int order, const DerivativeOptions& opt) {
  return differentiate_with_error(f, x, order, opt).value;
}

}  // namespace causal::quad
