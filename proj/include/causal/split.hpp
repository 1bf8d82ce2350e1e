#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causal/jet.hpp"

namespace causal::split {

constexpr int kMaxOmega = 3;
using ModelJet = Jet<kMaxOmega + 1>;

/// Smooth one-dimensional model T̄(p) of a retarded distribution's Fourier
/// transform, with omega + 1 subtractions.
struct CausalModelDistribution {
  std::string name;
  /// T̄ and its derivatives up to order kMaxOmega + 1.
  std::function<ModelJet(const ModelJet&)> fourier;
  /// Continuation to complex momenta; optional, used by the contour check.
  std::function<std::complex<double>(std::complex<double>)> analytic;
  int omega = 0;

  double operator()(double p) const;
  /// n-th derivative at p.
  double derivative(double p, int n) const;
  void validate() const;
};

/// Model corpus: gaussian exp(-p^2), lorentz 1/(1+p^2), p2_lorentz
/// p^2/(1+p^2), p4_lorentz p^4/(1+p^2). omega < 0 picks the smallest order
/// that makes the dispersion integral converge.
CausalModelDistribution model(const std::string& name, int omega = -1);
std::vector<std::string> model_names();

/// Fourier transform of theta(v.X) in the reduced frame p = (p0, 0, ..., 0).
struct ThetaVFourier {
  int D = 4;
  double p0 = 0.0;
  /// (2 pi)^(D/2 - 1).
  double prefactor = 1.0;
  /// Unit vector the spatial momentum is pinned to by the delta factor.
  std::vector<double> direction;

  /// prefactor * i / (p0 + i eps).
  std::complex<double> coefficient(double eps) const;
};

/// `v` holds the spatial part of v = (1, v⃗) with |v⃗| < 1; empty means v⃗ = 0.
ThetaVFourier theta_v_fourier(double p0, int D, std::span<const double> v = {});

/// ∫ theta(t) g(t) e^(i p0 t) dt for g(t) = exp(-t^2 / (2 sigma^2)), once
/// through the pole coefficient paired with ĝ and once directly.
std::pair<std::complex<double>, std::complex<double>> theta_smeared_check(
    double p0, double sigma, std::span<const double> v = {});

/// ∫_{1/mu2}^1 (1-t)^omega / (p0 t - k0)^(omega+2) dt: (quadrature, closed form).
/// A pole on the path is taken as a Hadamard finite part.
std::pair<double, double> t_integral_closed(double p0, double k0, int omega, double mu2);

/// ((mu2 - 1)/mu2)^(omega+1).
double retarded_prefactor(int omega, double mu2);
/// p / mu2.
double subtraction_point(double p, double mu2);

/// (i/2pi) ((mu2-1)/mu2)^(omega+1) ∫ ds T̄(sp) / ((s - 1/mu2 ∓ i eps)^(omega+1) (1 - s ± i eps)),
/// upper signs retarded. Both poles are split exactly into finite part and
/// delta terms. Throws NonIntegrable when T̄ grows too fast for omega.
std::complex<double> retarded_extension(const CausalModelDistribution& Tm, double p, double mu2);
std::complex<double> advanced_extension(const CausalModelDistribution& Tm, double p, double mu2);

/// Same integrals along a contour pushed off the real axis, away from both
/// poles. Needs `analytic`.
std::complex<double> extension_by_contour(const CausalModelDistribution& Tm, double p, double mu2,
                                          bool retarded);

struct SplitResult {
  std::complex<double> retarded;
  std::complex<double> advanced;
  std::complex<double> difference;      // retarded - advanced
  std::complex<double> bphz_remainder;  // Taylor remainder of T̄ at p / mu2
};

/// T̄(p) - sum_{n <= omega} [p (mu2-1)/mu2]^n / n! T̄^(n)(p/mu2).
double taylor_remainder_route(const CausalModelDistribution& Tm, double p, double mu2);

SplitResult splitting_difference_check(const CausalModelDistribution& Tm, double p, double mu2);

}  // namespace causal::split
