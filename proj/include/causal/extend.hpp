#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causal/jet.hpp"
#include "causal/lagrange.hpp"
#include "causal/quadrature.hpp"
#include "causal/testfunc.hpp"

namespace causal::extend {

constexpr int kJetOrder = 5;
using JetX = Jet<kJetOrder>;

/// Radial distribution T(X) defined away from the origin.
///
/// `homogeneity` is the degree a with T(lambda X) = lambda^a T(X).
/// `uv_power` is omega with T(X) ~ X^-(omega+1) at large X. `jet`, when
/// present, gives exact derivatives; otherwise finite differences are used.
struct SingularDistribution {
  std::function<double(double)> evaluate;
  std::function<JetX(const JetX&)> jet;
  int d = 1;
  std::optional<double> homogeneity;
  std::optional<double> uv_power;
  std::string name;

  double operator()(double X) const { return evaluate(X); }
  void validate() const;
};

/// Built-in distributions, Lambda = m = 1 unless given:
/// inv_x (1/X), inv_x2 (1/X^2), euclid_prop_d2 (1/(X + m^2), d = 1),
/// euclid_prop_d4 (1/(X + m^2), d = 2), inv_omega (1/sqrt(X^2 + m^2), d = 1).
SingularDistribution builtin(const std::string& name, double m2 = 1.0);
std::vector<std::string> builtin_names();

enum class Mode { IR, UV, UV_alt };
std::string to_string(Mode m);

/// Which lower bound the IR t-integral uses: t > mu_tilde X (fine), or the
/// coarser t > 1/mu2.
enum class LowerBound { mu_tilde_x, inverse_mu2 };

struct ExtendedDistribution {
  std::function<double(double)> evaluate;
  int k = 0;
  int d = 1;
  double scale = 0.0;  // mu_tilde for IR, mu2 for UV
  Mode mode = Mode::IR;
  /// IR only: G with T~ = (-1)^(k+1)/k! X^(1-d) d^(k+1)G/dX^(k+1).
  std::function<double(double)> primitive;
  /// IR: G is built on [0, support_end). UV: T~ vanishes beyond it.
  double support_end = quad::kInf;
  /// Coefficients c_n of sum c_n delta^(n) at the origin (zero unless known).
  std::vector<double> delta_coefficients;

  double operator()(double X) const { return evaluate(X); }
};

enum class Region { IR, UV };

struct OrderFit {
  int k = 0;
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares power-law fit of |T| on 50 log-spaced points of
/// [1e-6, 1e-3] (IR) or [1e3, 1e6] (UV). Throws IndeterminateOrder when
/// R^2 < 0.999 (nearly flat fits are judged by their residual instead).
/// A negative IR order means T is already locally integrable.
OrderFit fit_scaling(const SingularDistribution& T, Region region);
int scaling_order(const SingularDistribution& T, Region region);

ExtendedDistribution extend_ir(const SingularDistribution& T, int k, double mu_tilde,
                               LowerBound bound = LowerBound::mu_tilde_x,
                               double mu2 = 0.0);

/// ⟨T~, phi⟩ = (1/k!) ∫ G phi^(k+1) dX for phi supported in (0, support_end).
double pair_ir(const ExtendedDistribution& ext, const lagrange::SmoothFn& phi,
               const quad::QuadratureConfig& cfg = {});

/// H_k = sum_{p=1..k} (-1)^(p+1) C(k,p) / p.
double harmonic_h(int k);

struct HomogeneousExtension {
  ExtendedDistribution smooth;
  /// Coefficient of delta^(k) in the radial pairing, (-1)^k H_k T(1) / k!.
  double delta_coefficient = 0.0;
  /// Endpoint sum T(1) X^k over X = +-1 (the d = 1 sphere).
  double sphere_moment = 0.0;
};

HomogeneousExtension extend_ir_homogeneous(const SingularDistribution& T, int k,
                                           double mu_tilde);

/// ∫_1^tau (1-t)^k / t dt.
double uv_weight(int k, double tau);

ExtendedDistribution extend_uv(const SingularDistribution& T, int k,
                               const testfunc::SrtfParams& s);

/// Same with a fixed t upper bound.
ExtendedDistribution extend_uv_fixed(const SingularDistribution& T, int k, double t_upper);

ExtendedDistribution extend_uv_alt(const SingularDistribution& T, int k, int d, double mu2);

/// ∫_0^∞ X^(d-1) T~(X) dX.
quad::QuadratureEstimate pair_unity(const ExtendedDistribution& ext,
                                    const quad::QuadratureConfig& cfg = {});

struct BphzPair {
  std::complex<double> extended;    // Fourier transform of the extension
  std::complex<double> subtracted;  // Taylor-subtracted transform of T
};

/// Both sides of the Fourier-space subtraction at momentum q, with T windowed
/// by the UV test function stretched to length `window`.
BphzPair bphz_correspondence(const SingularDistribution& T, const testfunc::SrtfParams& f,
                             int k, double q, double p, double mu_tilde = 0.5,
                             double window = 40.0);

}  // namespace causal::extend
