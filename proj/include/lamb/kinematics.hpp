#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "lamb/errors.hpp"
#include "lamb/spectral.hpp"
#include "lamb/units.hpp"

// Circular-orbit kinematics in c = 1 units. The orbit enters only through the
// speed beta = R*Omega and the phase theta = Omega*t; the velocity direction is
// n = (-sin theta, cos theta).

namespace lamb {

template <typename Scalar>
using FourMatrix = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using FourVector = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using ThreeVector = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using ThreeMatrix = Eigen::Matrix<Scalar, 3, 3>;
/// (E_x, E_y, E_z, B_x, B_y, B_z)
template <typename Scalar>
using FieldVector = Eigen::Matrix<Scalar, 6, 1>;

template <typename Scalar = double>
FourMatrix<Scalar> minkowski_metric() {
  return FourVector<Scalar>(Scalar(1), Scalar(-1), Scalar(-1), Scalar(-1))
      .asDiagonal();
}

namespace detail {
template <typename Scalar>
void require_subluminal(Scalar beta) {
  if (!(beta >= Scalar(0)) || !(beta < Scalar(1)))
    throw DomainError("beta must lie in [0, 1)");
}
}  // namespace detail

/// Boost along the orbital velocity, entries gamma, -gamma*beta*n_i and
/// delta_ij + (gamma-1) n_i n_j. This maps lab components to the comoving
/// frame.
template <typename Scalar>
FourMatrix<Scalar> boost_matrix(Scalar beta, Scalar theta) {
  using std::cos;
  using std::sin;
  detail::require_subluminal(beta);
  const Scalar g = lorentz_gamma(beta);
  const Scalar nx = -sin(theta), ny = cos(theta);
  FourMatrix<Scalar> m;
  // clang-format off
  m << g,           -g * beta * nx,                   -g * beta * ny,                   Scalar(0),
       -g * beta * nx, Scalar(1) + (g - 1) * nx * nx, (g - 1) * nx * ny,                Scalar(0),
       -g * beta * ny, (g - 1) * ny * nx,             Scalar(1) + (g - 1) * ny * ny,    Scalar(0),
       Scalar(0),   Scalar(0),                        Scalar(0),                        Scalar(1);
  // clang-format on
  return m;
}

/// Rotation taking the comoving (rho, phi, z) axes to lab (x, y, z):
/// rows (n_y, n_x, 0), (-n_x, n_y, 0), (0, 0, 1).
template <typename Scalar>
ThreeMatrix<Scalar> rotation_matrix(Scalar theta) {
  using std::cos;
  using std::sin;
  const Scalar nx = -sin(theta), ny = cos(theta);
  ThreeMatrix<Scalar> s;
  s << ny, nx, Scalar(0), -nx, ny, Scalar(0), Scalar(0), Scalar(0), Scalar(1);
  return s;
}

/// u^nu = gamma (1, beta n_x, beta n_y, 0).
template <typename Scalar>
FourVector<Scalar> four_velocity(Scalar beta, Scalar theta) {
  using std::cos;
  using std::sin;
  detail::require_subluminal(beta);
  const Scalar g = lorentz_gamma(beta);
  return g * FourVector<Scalar>(Scalar(1), -beta * sin(theta),
                                beta * cos(theta), Scalar(0));
}

template <typename Scalar>
Scalar minkowski_dot(const FourVector<Scalar> &a, const FourVector<Scalar> &b) {
  return a.dot(minkowski_metric<Scalar>() * b);
}

/// Lab-frame dipole four-vector for proper-frame components (d_rho, d_phi,
/// d_z): rotate, then boost from the comoving frame to the lab, i.e. apply the
/// inverse eta * M^T * eta of boost_matrix.
template <typename Scalar>
FourVector<Scalar> lab_dipole(const ThreeVector<Scalar> &d_proper, Scalar beta,
                              Scalar theta) {
  const FourMatrix<Scalar> eta = minkowski_metric<Scalar>();
  const FourMatrix<Scalar> to_lab =
      eta * boost_matrix(beta, theta).transpose() * eta;
  FourVector<Scalar> spatial;
  spatial << Scalar(0), rotation_matrix(theta) * d_proper;
  return to_lab * spatial;
}

/// F_{mu nu} built from lab fields (c = 1).
template <typename Scalar>
FourMatrix<Scalar> field_tensor(const FieldVector<Scalar> &f) {
  const Scalar Ex = f(0), Ey = f(1), Ez = f(2), Bx = f(3), By = f(4), Bz = f(5);
  const Scalar o(0);
  FourMatrix<Scalar> F;
  // clang-format off
  F << o,  -Ex, -Ey, -Ez,
       Ex,  o,   Bz, -By,
       Ey, -Bz,  o,   Bx,
       Ez,  By, -Bx,  o;
  // clang-format on
  return F;
}

/// -(1/gamma) d^mu F_{mu nu} u^nu from the covariant ingredients.
template <typename Scalar>
Scalar covariant_interaction(const ThreeVector<Scalar> &d_proper,
                             const FieldVector<Scalar> &fields, Scalar beta,
                             Scalar theta) {
  const FourVector<Scalar> d = lab_dipole(d_proper, beta, theta);
  const FourVector<Scalar> u = four_velocity(beta, theta);
  return -(d.transpose() * field_tensor(fields) * u)(0, 0) / lorentz_gamma(beta);
}

/// Lab-frame field combinations E_rho, E_phi, E_z coupling to each proper
/// dipole component at phase theta.
template <typename Scalar = double>
struct FrameProjection {
  Scalar theta{0};
  Scalar beta{0};
  Eigen::Matrix<Scalar, 3, 6> matrix = Eigen::Matrix<Scalar, 3, 6>::Zero();

  Eigen::Matrix<Scalar, 1, 6> row(Polarization p) const {
    return matrix.row(static_cast<int>(p));
  }

  ThreeVector<Scalar> project(const FieldVector<Scalar> &fields) const {
    return matrix * fields;
  }

  /// -sum_alpha d_alpha * (row_alpha . fields)
  Scalar interaction(const ThreeVector<Scalar> &d_proper,
                     const FieldVector<Scalar> &fields) const {
    return -d_proper.dot(project(fields));
  }
};

template <typename Scalar>
FrameProjection<Scalar> interaction_coefficients(Scalar beta, Scalar theta) {
  using std::cos;
  using std::sin;
  detail::require_subluminal(beta);
  const Scalar c = cos(theta), s = sin(theta), o(0);
  const Scalar inv_g = Scalar(1) / lorentz_gamma(beta);
  FrameProjection<Scalar> fp;
  fp.theta = theta;
  fp.beta = beta;
  // clang-format off
  fp.matrix << c,          s,         o,         o,         o,         beta,
               -s * inv_g, c * inv_g, o,         o,         o,         o,
               o,          o,         Scalar(1), -beta * c, -beta * s, o;
  // clang-format on
  return fp;
}

/// Coefficient matrix of <X_i(t) Y_j(t')> in the two-point function of the
/// projected field for polarization p: row_p(theta)^T row_p(theta').
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 6> correlator_coefficients(Polarization p, Scalar beta,
                                                    Scalar theta,
                                                    Scalar theta_prime) {
  const auto a = interaction_coefficients(beta, theta).row(p);
  const auto b = interaction_coefficients(beta, theta_prime).row(p);
  return a.transpose() * b;
}

}  // namespace lamb
