#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causal/errors.hpp"

namespace causal::quad {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

enum class Transform { none, semi_infinite, doubly_infinite };

std::string to_string(Transform t);
Transform transform_from_string(const std::string& s);

/// Process-wide defaults picked up by every default-constructed config.
/// Set them before starting work on other threads.
struct QuadratureDefaults {
  double rel_tol = 1e-9;
  int max_subdivisions = 1000;
};
QuadratureDefaults& quadrature_defaults();

/// Tolerances and limits for the adaptive integrators.
///
/// `transform` records the variable change applied to unbounded ranges; it is
/// chosen from the bounds when left at `none`.
struct QuadratureConfig {
  double rel_tol = quadrature_defaults().rel_tol;
  double abs_tol = 1e-14;
  int max_subdivisions = quadrature_defaults().max_subdivisions;
  Transform transform = Transform::none;

  /// Defaults for nested multi-dimensional integration.
  static QuadratureConfig nd_default();

  /// Throws InputError when an invariant is violated.
  void validate() const;

  /// Same config with both tolerances scaled by `factor`.
  QuadratureConfig tightened(double factor) const;
};

template <class V>
struct Estimate {
  V value{};
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

using QuadratureEstimate = Estimate<double>;
using ComplexEstimate = Estimate<std::complex<double>>;

/// Multi-dimensional estimate; `level_failures[i]` counts non-converged
/// integrations at nesting depth i (0 = outermost).
struct NdEstimate {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
  std::vector<int> level_failures;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Adaptive 21-point Gauss-Kronrod integration of f over [a, b]. Either bound
/// may be infinite. Non-convergence is reported through `converged`, never
/// thrown.
QuadratureEstimate integrate_1d(const RealFn& f, double a, double b,
                                const QuadratureConfig& cfg = {});

ComplexEstimate integrate_1d_complex(const ComplexFn& f, double a, double b,
                                     const QuadratureConfig& cfg = {});

/// Cauchy principal value of  ∫_a^b f(x) / (x - pole) dx  for f smooth at the
/// pole. A symmetric window around the pole is excised and the excision
/// radius is extrapolated to zero. With both bounds infinite the value is
/// the limit symmetric about the pole at infinity as well.
QuadratureEstimate integrate_pv(const RealFn& f, double pole, double a,
                                double b, const QuadratureConfig& cfg = {});

/// Integration limits of one nesting level as a function of the outer
/// coordinates x[0..level).
using LevelLimits =
    std::function<std::pair<double, double>(std::span<const double>)>;
using NdFn = std::function<double(std::span<const double>)>;

/// Nested adaptive integration, at most 4 levels. Inner errors are integrated
/// alongside the values and added to the outer error.
NdEstimate integrate_nested(const NdFn& f, const std::vector<LevelLimits>& limits,
                            const QuadratureConfig& cfg = QuadratureConfig::nd_default());

/// Box [lo_i, hi_i]; bounds may be infinite.
NdEstimate integrate_box(const NdFn& f,
                         std::span<const std::pair<double, double>> box,
                         const QuadratureConfig& cfg = QuadratureConfig::nd_default());

/// Unit simplex {x_i >= 0, sum x_i <= 1} in `dim` dimensions.
NdEstimate integrate_simplex(const NdFn& f, int dim,
                             const QuadratureConfig& cfg = QuadratureConfig::nd_default());

struct DerivativeOptions {
  /// 0 selects 0.1 * (1 + |x|).
  double initial_step = 0.0;
  /// f is only evaluated inside [domain_lower, domain_upper]; one-sided
  /// stencils are used near the edges.
  double domain_lower = -kInf;
  double domain_upper = kInf;
};

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// n-th derivative (n <= 4) from finite-difference stencils with Ridders'
/// extrapolation; the step sequence is shrunk until the error estimate stops
/// improving.
DerivativeEstimate differentiate_with_error(const RealFn& f, double x, int order,
                                            const DerivativeOptions& opt = {});

double differentiate(const RealFn& f, double x, int order,
                     const DerivativeOptions& opt = {});

/// Throws NumericFailure naming `what` when the estimate did not converge.
template <class E>
const E& require_converged(const E& est, const std::string& what) {
  if (!est.converged) {
    throw NumericFailure(what + ": quadrature did not converge (error estimate " +
                         std::to_string(est.error) + ")");
  }
  return est;
}

}  // namespace causal::quad
