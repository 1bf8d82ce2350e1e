#pragma once

#include <array>
#include <complex>
#include <string>

#include "causal/errors.hpp"

namespace causal::testfunc {

enum class Variant { mollifier_convolution, nu_integral };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// Building block of the partition of unity on the line.
///
/// nu_integral: beta_j is supported on [(j-1)h, (j+1)h].
/// mollifier_convolution: indicator of [jh, (j+1)h] smoothed by rho_eps,
/// supported on [jh - eps, (j+1)h + eps].
struct PartitionParams {
  double h = 1.0;
  Variant variant = Variant::nu_integral;
  double epsilon = 0.25;
  double nu = 1.0;
  int j = 0;

  void validate() const;
};

/// Super-regular test function with roll-off width h(X) = mu2 X^alpha - 1.
///
/// In `alpha_limit` mode the plateau extends to infinity and the t-bound is
/// mu2 for every X. `rise_width` <= 0 picks min(mu2 - 1, 0.5).
struct SrtfParams {
  double mu2 = 1.15;
  double alpha = 0.95;
  PartitionParams partition{};
  bool alpha_limit = false;
  double rise_width = 0.0;

  void validate() const;
  /// (mu2)^(1/(1-alpha)); infinite in alpha_limit mode.
  double x_max() const;
  /// Width of the rise from the origin.
  double rise() const;
  /// h(X) = mu2 X^alpha - 1.
  double roll_width(double X) const;
};

/// Schwartz mollifier N exp(1/(x^2-1)) on (-1, 1), normalised to unit mass.
double mollifier_rho(double x);
/// The normalisation constant N.
double mollifier_norm();
/// Integral of rho from -1 to x.
double mollifier_cumulative(double x);

/// beta_j(x) for the cell index carried by p.
double elementary_u(double x, const PartitionParams& p);

/// Sum of beta_j(x) for j in [j_lo, j_hi].
double partition_sum(double x, const PartitionParams& p, int j_lo, int j_hi);

/// The two members of the partition that overlap at x in [jh, (j+1)h].
/// For nu_integral this is u(x - jh) + u((j+1)h - x).
double complement_sum(double x, const PartitionParams& p);

/// Test function with a rise from the origin, a plateau up to 1 and the
/// roll-off ending at X_max.
double srtf_f(double X, const SrtfParams& s);

/// UV form: 1 on [0, 1], then the same roll-off as srtf_f.
double srtf_uv(double X, const SrtfParams& s);

constexpr int kMaxJetOrder = 6;
using Derivatives = std::array<double, kMaxJetOrder + 1>;

/// Exact derivatives 0..6 of srtf_f (or srtf_uv when `uv` is set) at X.
Derivatives srtf_derivatives(double X, const SrtfParams& s, bool uv = false);

/// Single derivative of order n <= 6; cheaper than srtf_derivatives for n > 0.
double srtf_derivative(double X, int n, const SrtfParams& s, bool uv = false);

/// Upper bound of the t-integral: mu2 X^(alpha-1), or mu2 in alpha_limit mode.
double t_max(double X, const SrtfParams& s);

/// Integral of beta_j(x) exp(-i k x) over its support.
std::complex<double> fourier_gamma_j(double kfreq, int j, const PartitionParams& p);

}  // namespace causal::testfunc
