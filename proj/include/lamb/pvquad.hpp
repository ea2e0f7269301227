#pragma once

#include <array>
#include <vector>

#include "lamb/gauss_kronrod.hpp"
#include "lamb/pvengine.hpp"
#include "lamb/spectral.hpp"

namespace lamb {

/// Outcome of the numeric principal-value oracle.
struct PvQuadratureResult {
  /// PV integral over the support up to the cutoff, nothing subtracted.
  double raw{0};
  /// raw minus the oracle's own positive-power ledger.
  double renormalized{0};
  /// Lambda^k coefficients found by dividing the all-terms-on polynomial
  /// times the kernel numerator by (nu^2 - w^2).
  std::vector<PowerTerm<double>> dropped_powers;
  double error_estimate{0};
  /// Split point above which every term is switched on.
  double tail_start{0};
};

/// Symmetric pole excision: int_0^h [g(p+u) - g(p-u)]/u du, i.e. the
/// principal value of int_{p-h}^{p+h} g(nu)/(nu-p) dnu.
template <typename G>
QuadratureEstimate excised_pole_integral(const G &g, double p, double h,
                                         double rel_tol, double abs_tol) {
  auto folded = [&](double u) { return (g(p + u) - g(p - u)) / u; };
  return integrate_adaptive(folded, 0.0, h, rel_tol, abs_tol);
}

PvQuadratureResult pv_quadrature_detail(const SpectralDensity<double> &d,
                                        double omega, double lambda,
                                        double tol = 1e-10);

/// Raw numeric principal value of int F(nu)[1/(nu+w) - 1/(nu-w)] dnu over the
/// support of F cut at lambda.
double pv_quadrature(const SpectralDensity<double> &d, double omega,
                     double lambda, double tol = 1e-10);

/// Quadrature counterpart of shift_from_density, using the oracle's
/// renormalized values.
struct QuadratureShift {
  double value{0};
  double error_estimate{0};
};
QuadratureShift quadrature_shift(
    const std::array<SpectralDensity<double>, 3> &densities,
    const DipoleWeights<double> &w, double omega, double lambda,
    double tol = 1e-10);

}  // namespace lamb
