#pragma once

#include <array>
#include <cmath>

namespace causal {

/// Truncated Taylor expansion to order N: c[n] = f^(n)(x0) / n!.
template <int N>
struct Jet {
  std::array<double, N + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  /// The identity x -> x expanded about x0.
  static Jet variable(double x0) {
    Jet j;
    j.c[0] = x0;
    if constexpr (N >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }

  /// n-th derivative at the expansion point.
  double derivative(int n) const {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return c[n] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i <= N; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i <= N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) {
    a.c[0] += s;
    return a;
  }
  friend Jet operator+(double s, Jet a) { return a + s; }
  friend Jet operator-(Jet a, double s) { return a + (-s); }
  friend Jet operator-(double s, const Jet& a) { return (-a) + s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i <= N; ++i) {
      for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int n = 0; n <= N; ++n) {
      double s = a.c[n];
      for (int j = 1; j <= n; ++j) s -= b.c[j] * r.c[n - j];
      r.c[n] = s / b.c[0];
    }
    return r;
  }
  friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
  friend Jet operator/(double s, const Jet& b) { return constant(s) / b; }
};

/// Composition g(a(x)) given the Taylor coefficients of g about a.value().
template <int N>
Jet<N> compose(const std::array<double, N + 1>& g, const Jet<N>& a) {
  Jet<N> d = a;
  d.c[0] = 0.0;
  Jet<N> r = Jet<N>::constant(g[N]);
  for (int n = N - 1; n >= 0; --n) r = r * d + g[n];
  return r;
}

template <int N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = std::exp(a.c[0]);
  for (int n = 1; n <= N; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * a.c[k] * r.c[n - k];
    r.c[n] = s / n;
  }
  return r;
}

template <int N>
Jet<N> log(const Jet<N>& a) {
  Jet<N> r;
  r.c[0] = std::log(a.c[0]);
  for (int n = 1; n <= N; ++n) {
    double s = n * a.c[n];
    for (int k = 1; k < n; ++k) s -= k * r.c[k] * a.c[n - k];
    r.c[n] = s / (n * a.c[0]);
  }
  return r;
}

/// a^p for a.value() > 0 (or integral p).
template <int N>
Jet<N> pow(const Jet<N>& a, double p) {
  Jet<N> r;
  r.c[0] = std::pow(a.c[0], p);
  for (int n = 1; n <= N; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += (p * k - (n - k)) * a.c[k] * r.c[n - k];
    r.c[n] = s / (n * a.c[0]);
  }
  return r;
}

}  // namespace causal
