#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "causal/quadrature.hpp"
#include "causal/testfunc.hpp"

namespace causal::lagrange {

/// Real function of one variable with optional exact derivatives.
///
/// Without `derivative`, derivatives come from quad::differentiate and are
/// limited to order 4. `support_upper` lets the UV forms stop the t-integral
/// where the function is known to vanish identically.
struct SmoothFn {
  std::function<double(double)> value;
  std::function<double(double, int)> derivative;
  double domain_lower = -quad::kInf;
  double domain_upper = quad::kInf;
  double support_upper = quad::kInf;
  /// Points where f or its derivatives change rapidly; used to split ranges.
  std::vector<double> breakpoints;

  double operator()(double x) const { return value(x); }
  double deriv(double x, int n) const;

  static SmoothFn from_srtf(const testfunc::SrtfParams& s, bool uv = false);
};

/// f(X) minus its k-jet at the origin.
double taylor_remainder_direct(const SmoothFn& f, double X, int k);

/// Integral form X^(k+1)/k! ∫_0^1 (1-t)^k f^(k+1)(tX) dt of the same remainder.
double lagrange_remainder_ir(const SmoothFn& f, double X, int k,
                             const quad::QuadratureConfig& cfg = {});

/// Same remainder written with the measure (1-t)^k / t^(k+1) and the
/// derivative taken in X of f(Xt).
double lagrange_remainder_measure(const SmoothFn& f, double X, int k,
                                  const quad::QuadratureConfig& cfg = {});

/// -(X/k!) ∫_1^∞ (1-t)^k φ^(k+1)(Xt) dt with φ(y) = y^k f(y); reproduces f(X)
/// for f vanishing with all derivatives at large argument. X > 0.
double lagrange_uv(const SmoothFn& f, double X, int k,
                   const quad::QuadratureConfig& cfg = {});

/// Two representations of f(p) from the UV side: the one-dimensional form and
/// the radial form in d dimensions.
std::pair<double, double> lagrange_alt_check(const SmoothFn& f, double p, int k, int d,
                                             const quad::QuadratureConfig& cfg = {});

/// ∫_1^∞ (1-t)^k f^(k+1)(pt) dt and its image under t -> 1/s,
/// ∫_0^1 (s-1)^k / s^(k+2) f^(k+1)(p/s) ds.
std::pair<double, double> inversion_pair(const SmoothFn& f, double p, int k,
                                         const quad::QuadratureConfig& cfg = {});

}  // namespace causal::lagrange
