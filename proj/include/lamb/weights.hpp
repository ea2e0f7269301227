#pragma once

#include "lamb/errors.hpp"
#include "lamb/spectral.hpp"

namespace lamb {

/// Squared dipole matrix elements d_alpha^2 / d_ref^2.
template <typename Scalar = double>
struct DipoleWeights {
  Scalar w_rho{1};
  Scalar w_phi{1};
  Scalar w_z{1};

  static DipoleWeights isotropic() { return {Scalar(1), Scalar(1), Scalar(1)}; }

  Scalar operator[](Polarization p) const {
    switch (p) {
      case Polarization::rho:
        return w_rho;
      case Polarization::phi:
        return w_phi;
      case Polarization::z:
        return w_z;
    }
    return Scalar(0);
  }

  Scalar sum() const { return w_rho + w_phi + w_z; }
  Scalar transverse_sum() const { return w_rho + w_phi; }

  DipoleWeights transverse_only() const { return {w_rho, w_phi, Scalar(0)}; }
  DipoleWeights axial_only() const { return {Scalar(0), Scalar(0), w_z}; }

  void require_nonnegative() const {
    if (!(w_rho >= Scalar(0)) || !(w_phi >= Scalar(0)) || !(w_z >= Scalar(0)))
      throw DomainError("dipole weights must be nonnegative");
  }

  void validate() const {
    require_nonnegative();
    if (sum() == Scalar(0))
      throw DomainError("dipole weights must not all vanish");
  }
};

}  // namespace lamb
