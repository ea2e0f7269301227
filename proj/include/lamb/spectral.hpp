#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "lamb/errors.hpp"

namespace lamb {

enum class Polarization { rho, phi, z };

inline constexpr std::array<Polarization, 3> kPolarizations = {
    Polarization::rho, Polarization::phi, Polarization::z};

inline std::string_view to_string(Polarization p) {
  switch (p) {
    case Polarization::rho:
      return "rho";
    case Polarization::phi:
      return "phi";
    case Polarization::z:
      return "z";
  }
  return "?";
}

inline Polarization polarization_from_string(std::string_view s) {
  if (s == "rho") return Polarization::rho;
  if (s == "phi") return Polarization::phi;
  if (s == "z") return Polarization::z;
  throw DomainError("unknown polarization '" + std::string(s) + "'");
}

/// Largest orbital speed beta = R Omega / c the truncated densities accept.
inline constexpr double kMaxBeta = 0.1;

/// One shifted-power piece coeff * (nu + shift)^power * Theta(nu + shift).
/// Frequencies are in units of w0, so the term is supported on nu > -shift.
template <typename Scalar>
struct SpectralTerm {
  Scalar coeff{0};
  Scalar shift{0};
  int power{3};

  Scalar operator()(Scalar nu) const {
    const Scalar u = nu + shift;
    if (!(u > Scalar(0))) return Scalar(0);
    Scalar r = coeff;
    for (int i = 0; i < power; ++i) r *= u;
    return r;
  }
};

/// Fourier-transformed field correlation F_alpha(nu) for one dipole
/// orientation, with the 1/(c^3 pi^2) prefactor absorbed into reduced units.
template <typename Scalar>
struct SpectralDensity {
  Polarization polarization{Polarization::z};
  std::vector<SpectralTerm<Scalar>> terms;
  int order_beta{0};
  bool isotropic{false};
};

template <typename Scalar>
Scalar evaluate_density(const SpectralDensity<Scalar> &d, Scalar nu) {
  Scalar sum{0};
  for (const auto &t : d.terms) sum += t(nu);
  return sum;
}

/// Sorted, de-duplicated lower support edges -shift of the terms.
template <typename Scalar>
std::vector<Scalar> breakpoints(const SpectralDensity<Scalar> &d) {
  std::vector<Scalar> bp;
  bp.reserve(d.terms.size());
  for (const auto &t : d.terms) bp.push_back(-t.shift);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

/// Theta-form density for a dipole on a circular orbit with angular velocity
/// x = Omega/w0 and speed beta, truncated after beta^2.
template <typename Scalar>
SpectralDensity<Scalar> build_density(Polarization pol, Scalar x, Scalar beta) {
  if (!(x >= Scalar(0))) throw DomainError("build_density: x must be >= 0");
  if (!(beta >= Scalar(0)))
    throw DomainError("build_density: beta must be >= 0");
  if (beta > Scalar(kMaxBeta))
    throw ValidityError(
        "build_density: nonrelativistic regime violated (beta > 0.1)");
  if (x == Scalar(0) && beta > Scalar(0))
    throw DomainError("build_density: beta = R*Omega/c must vanish when x = 0");

  SpectralDensity<Scalar> d;
  d.polarization = pol;
  d.order_beta = beta > Scalar(0) ? 2 : 0;
  auto &T = d.terms;
  auto add = [&T](Scalar c, Scalar s, int n) { T.push_back({c, s, n}); };

  const Scalar half(0.5);
  if (pol == Polarization::z) {
    add(Scalar(1), Scalar(0), 3);
  } else {
    add(half, x, 3);
    add(half, -x, 3);
  }
  if (d.order_beta == 0) return d;

  // R^2 Omega^2/c^2 = b2, R^2 Omega/c^2 = b2/x, R^2/c^2 = b2/x^2.
  const Scalar b2 = beta * beta;
  const Scalar b2_x = b2 / x;
  const Scalar b2_xx = b2 / (x * x);
  const Scalar two_x = Scalar(2) * x;

  switch (pol) {
    case Polarization::rho: {
      add(b2, Scalar(0), 3);
      add(half * b2_x, -x, 4);
      add(-half * b2_x, x, 4);
      const Scalar k = b2_xx / Scalar(20);
      add(k, Scalar(0), 5);
      add(Scalar(-2) * k, x, 5);
      add(Scalar(-2) * k, -x, 5);
      add(Scalar(1.5) * k, -two_x, 5);
      add(Scalar(1.5) * k, two_x, 5);
      break;
    }
    case Polarization::phi: {
      add(-half * b2, x, 3);
      add(-half * b2, -x, 3);
      add(b2_xx / Scalar(4), Scalar(0), 5);
      add(-b2_xx / Scalar(5), x, 5);
      add(-b2_xx / Scalar(5), -x, 5);
      add(Scalar(3) * b2_xx / Scalar(40), -two_x, 5);
      add(Scalar(3) * b2_xx / Scalar(40), two_x, 5);
      break;
    }
    case Polarization::z: {
      add(half * b2, x, 3);
      add(half * b2, -x, 3);
      add(half * b2_x, -x, 4);
      add(-half * b2_x, x, 4);
      const Scalar k = Scalar(-2) * b2_xx / Scalar(5);
      add(k, Scalar(0), 5);
      add(-half * k, x, 5);
      add(-half * k, -x, 5);
      break;
    }
  }
  return d;
}

/// nu^3 Theta(nu): the correlation density of an atom at rest, identical for
/// every orientation.
template <typename Scalar = double>
SpectralDensity<Scalar> inertial_density(Polarization pol = Polarization::z) {
  SpectralDensity<Scalar> d;
  d.polarization = pol;
  d.isotropic = true;
  d.terms.push_back({Scalar(1), Scalar(0), 3});
  return d;
}

template <typename Scalar>
std::array<SpectralDensity<Scalar>, 3> circular_densities(Scalar x,
                                                          Scalar beta) {
  return {build_density(Polarization::rho, x, beta),
          build_density(Polarization::phi, x, beta),
          build_density(Polarization::z, x, beta)};
}

template <typename Scalar = double>
std::array<SpectralDensity<Scalar>, 3> inertial_densities() {
  return {inertial_density<Scalar>(Polarization::rho),
          inertial_density<Scalar>(Polarization::phi),
          inertial_density<Scalar>(Polarization::z)};
}

}  // namespace lamb
