#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causal/quadrature.hpp"
#include "causal/testfunc.hpp"

namespace causal::qft {

/// Numeric observable next to its closed form, when one exists.
struct ObservableResult {
  std::complex<double> value;
  std::optional<std::complex<double>> closed_form;
  std::optional<double> rel_deviation;
  double error = 0.0;  // quadrature error estimate of `value`
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Fills rel_deviation from value and closed_form.
  void finish();
};

/// Euclidean propagator at coincident points, Lambda = m.
/// D = 4: m^2/(16 pi^2) (mu2 - 1 - log mu2).  D = 2: log(mu2)/(4 pi).
ObservableResult delta0_euclid(int D, double m, const testfunc::SrtfParams& s);

struct PvLemma {
  double principal = 0.0;              // PV ∫ dp0 f^2 / (p0 ± omega)
  std::complex<double> total;          // PV part ± i pi f^2 at p0 = ∓omega
};

/// ∫ dp0 f^2 / (p0 ± omega_p ∓ i eps) split by Plemelj; f is evaluated at
/// X = (p0^2 + p^2) / m^2. `sign` is +1 or -1.
PvLemma pv_lemma_minkowski(double p, double m, const testfunc::SrtfParams& s, int sign);

/// Minkowski propagator at coincident points from the p0 Plemelj split and
/// the UV extension of the remaining spatial integral.
/// D = 2 closed form: -2 i pi log mu2.
/// D = 4 closed form: -i pi^2 m^2 (mu2 - 1 - log mu2) = -i (2 pi)^4 delta0_euclid(4).
ObservableResult delta0_minkowski(int D, double m, const testfunc::SrtfParams& s);

/// D = 2 total as the difference of two Feynman propagators with masses m
/// and m mu2, each integrated over p0 by Plemelj.
ObservableResult delta0_minkowski_pv_form(double m, double mu2);

/// Minkowski / Euclidean ratio at D = 4: -i (2 pi)^4.
std::complex<double> minkowski_euclid_ratio();

/// (product form, partial-fraction form) of the regularised propagator.
std::pair<double, double> pv_decomposition(double m, const std::vector<double>& lambdas,
                                           double p2);

/// Two-regulator bracket coefficients with the X^-3 fall-off and unit
/// normalisation imposed: I(X) = [1 - (alpha X + beta)/(X + L1^2)
/// + gamma X^2/((X + L1^2)(X + L2^2))] / (X + m^2).
struct PvCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double A = 0.0;
};
PvCoefficients pv_coefficients(double m, double lambda1, double lambda2);
double pv_bracket(const PvCoefficients& c, double m, double lambda1, double lambda2, double X);

/// Lambda1 = Lambda2 = m: m^4 / (X + m^2)^3.
double pv_confluent(double m, double X);

/// One-loop four-point function, Feynman parameter x and Lambda = m.
ObservableResult one_loop_I(double k2, double m, const testfunc::SrtfParams& s);

/// ∫_0^1 log(1 + a x(1-x)) dx in closed form.
double log_feynman_integral(double a);

/// Delta(0) at D = 4 from the Schwinger representation with the test
/// function's Lagrange form inserted.
ObservableResult schwinger_delta0(double m, const testfunc::SrtfParams& s);

/// Integrand after the Lagrange rewrite at finite alpha, for fixed y and u:
/// e^-u ∫_1^∞ dt/t (1-t) d^2/du^2 f(y t/u).
double schwinger_rewritten_integrand(double y, double u, const testfunc::SrtfParams& s);

/// Two-loop sunset at zero external momentum with Schwinger parameters in
/// [cutoff, upper]. cutoff <= 0 selects 1/(mu2 m^2); upper <= 0 selects 50/m^2.
ObservableResult sunset_qualitative(double m, const testfunc::SrtfParams& s, double cutoff = 0.0,
                                    double upper = 0.0);

}  // namespace causal::qft
