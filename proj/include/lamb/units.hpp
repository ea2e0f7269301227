#pragma once

#include <cmath>
#include <string>

#include "lamb/errors.hpp"

namespace lamb {

/// Electron rest energy m_e c^2 in eV.
inline constexpr double kElectronRestEnergyEv = 510998.95;

/// Reduced-unit bookkeeping. Frequencies are measured in units of the proper
/// transition frequency w0; a reduced shift delta relates to the physical one
/// through delta = Delta * (3 pi^2 eps0 hbar c^3) / (d_ref^2 w0^3).
struct ReducedUnits {
  double omega0_ev = 1.0;
  double lambda_ratio = kElectronRestEnergyEv;

  static constexpr const char *shift_unit_note =
      "delta = Delta * 3 pi^2 eps0 hbar c^3 / (d_ref^2 w0^3)";

  void validate() const {
    if (!(omega0_ev > 0.0)) throw DomainError("omega0_ev must be positive");
    if (!(lambda_ratio > 1e3))
      throw ValidityError("cutoff ratio must exceed 1e3");
  }
};

/// Cutoff ratio Lambda/w0 for Lambda = m_e c^2 / hbar.
inline double default_cutoff_ratio(double omega0_ev) {
  if (!(omega0_ev > 0.0))
    throw DomainError("default_cutoff_ratio: omega0_ev must be positive");
  return kElectronRestEnergyEv / omega0_ev;
}

template <typename Scalar = double>
Scalar lorentz_gamma(Scalar beta) {
  using std::sqrt;
  if (!(beta >= Scalar(0)) || !(beta < Scalar(1)))
    throw DomainError("lorentz_gamma: beta must lie in [0, 1)");
  return Scalar(1) / sqrt((Scalar(1) - beta) * (Scalar(1) + beta));
}

}  // namespace lamb
