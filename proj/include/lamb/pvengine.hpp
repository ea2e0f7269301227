#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "lamb/errors.hpp"
#include "lamb/spectral.hpp"
#include "lamb/units.hpp"
#include "lamb/weights.hpp"

namespace lamb {

/// Reduced shift per unit weight is this factor times the kernel integral of
/// the density: both the inertial and the circular prefactors reduce to 1/2 in
/// units of d_ref^2 w0^3 / (3 pi^2 eps0 hbar c^3).
inline constexpr double kShiftNormalization = 0.5;

/// Below this distance a kernel pole is treated as sitting on a term's lower
/// support edge.
inline constexpr double kRemovablePoleTolerance = 1e-9;

enum class PoleFrequency { proper, lab };

/// Frequency entering the kernel 1/(nu+w) - 1/(nu-w): w0 itself, or the
/// time-dilated lab value w0/gamma.
template <typename Scalar>
Scalar kernel_omega(PoleFrequency mode, Scalar beta) {
  if (mode == PoleFrequency::proper) return Scalar(1);
  return Scalar(1) / lorentz_gamma(beta);
}

/// Coefficient of Lambda^power discarded as a mass-renormalization term.
template <typename Scalar>
struct PowerTerm {
  int power{1};
  Scalar coeff{0};
};

/// Retained logarithm, contributing coeff * log_value.
template <typename Scalar>
struct LogTerm {
  std::string argument;
  Scalar coeff{0};
  Scalar log_value{0};
};

template <typename Scalar>
struct RenormalizedIntegral {
  Scalar value{0};
  Scalar kept_constant{0};
  std::vector<PowerTerm<Scalar>> dropped_powers;
  std::vector<LogTerm<Scalar>> kept_log_terms;
  bool removable_limit{false};

  /// Sum of the discarded monomials at the cutoff.
  Scalar dropped_at(Scalar lambda) const {
    Scalar s{0};
    for (const auto &p : dropped_powers) {
      Scalar m{1};
      for (int i = 0; i < p.power; ++i) m *= lambda;
      s += p.coeff * m;
    }
    return s;
  }

  Scalar dropped_coeff(int power) const {
    for (const auto &p : dropped_powers)
      if (p.power == power) return p.coeff;
    return Scalar(0);
  }

  void add_dropped(int power, Scalar coeff) {
    if (coeff == Scalar(0)) return;
    for (auto &p : dropped_powers) {
      if (p.power == power) {
        p.coeff += coeff;
        if (p.coeff == Scalar(0))
          std::erase_if(dropped_powers,
                        [power](const auto &q) { return q.power == power; });
        return;
      }
    }
    dropped_powers.push_back({power, coeff});
    std::sort(dropped_powers.begin(), dropped_powers.end(),
              [](const auto &a, const auto &b) { return a.power < b.power; });
  }

  /// Accumulates scale * other into this ledger.
  void merge(const RenormalizedIntegral &other, Scalar scale = Scalar(1)) {
    value += scale * other.value;
    kept_constant += scale * other.kept_constant;
    for (const auto &p : other.dropped_powers)
      add_dropped(p.power, scale * p.coeff);
    for (const auto &l : other.kept_log_terms)
      kept_log_terms.push_back({l.argument, scale * l.coeff, l.log_value});
    removable_limit = removable_limit || other.removable_limit;
  }
};

namespace detail {

template <typename Scalar>
Scalar ipow(Scalar base, int n) {
  Scalar r{1};
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

inline std::string log_label(double upper_offset, double pole) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "ln|Lambda%+.6g| - ln|%.6g|", upper_offset,
                pole);
  return buf;
}

}  // namespace detail

/// Renormalized principal value of
///   int_{-s}^{Lambda} c (nu+s)^n [1/(nu+w) - 1/(nu-w)] dnu.
/// With u = nu + s the two poles sit at u = s - w and u = s + w; for each pole
/// p, u^n/(u-p) splits into a polynomial plus p^n/(u-p). Polynomial pieces are
/// expanded in Lambda: positive powers go to the dropped ledger, the
/// Lambda-independent remainder is kept, and the logarithms are kept exactly.
template <typename Scalar>
RenormalizedIntegral<Scalar> term_kernel_integral(const SpectralTerm<Scalar> &t,
                                                  Scalar omega, Scalar lambda) {
  using std::abs;
  using std::log;
  using std::max;
  if (omega == Scalar(0))
    throw DomainError("term_kernel_integral: omega must be nonzero");
  if (t.power < 0)
    throw DomainError("term_kernel_integral: power must be nonnegative");
  const Scalar floor = max({Scalar(1), abs(t.shift), abs(omega)});
  if (!(lambda > Scalar(10) * floor))
    throw ValidityError(
        "term_kernel_integral: cutoff must exceed 10*max(1,|shift|,|omega|)");

  RenormalizedIntegral<Scalar> out;
  if (t.coeff == Scalar(0)) return out;

  const int n = t.power;
  const Scalar s = t.shift;
  struct Pole {
    Scalar p;
    Scalar sign;
    Scalar upper_offset;  // (Lambda + s) - p == Lambda + upper_offset
  };
  const std::array<Pole, 2> poles = {Pole{s - omega, Scalar(1), omega},
                                     Pole{s + omega, Scalar(-1), -omega}};

  for (const auto &[p, sign, offset] : poles) {
    const Scalar c = sign * t.coeff;
    // sum_{k<n} p^k (Lambda+s)^{n-k} / (n-k), expanded in powers of Lambda.
    for (int k = 0; k < n; ++k) {
      const int m = n - k;
      const Scalar pk = detail::ipow(p, k) / Scalar(m);
      out.kept_constant += c * pk * detail::ipow(s, m);
      for (int j = 1; j <= m; ++j)
        out.add_dropped(j, c * pk * Scalar(detail::binomial(m, j)) *
                               detail::ipow(s, m - j));
    }
    if (abs(p) < Scalar(kRemovablePoleTolerance)) {
      // p^n ln|p| -> 0: the pole sits on the lower edge where the term
      // vanishes to order n.
      out.removable_limit = true;
      continue;
    }
    const Scalar lv = log(abs(lambda + offset)) - log(abs(p));
    out.kept_log_terms.push_back(
        {detail::log_label(double(offset), double(p)), c * detail::ipow(p, n),
         lv});
  }

  out.value = out.kept_constant;
  for (const auto &l : out.kept_log_terms) out.value += l.coeff * l.log_value;
  return out;
}

/// The unexpanded antiderivative at the cutoff (kept + dropped pieces), for
/// ledger-completeness checks.
template <typename Scalar>
Scalar term_kernel_raw(const SpectralTerm<Scalar> &t, Scalar omega,
                       Scalar lambda) {
  using std::abs;
  using std::log;
  const Scalar s = t.shift;
  const Scalar upper = lambda + s;
  Scalar r{0};
  for (const auto &[p, sign] :
       {std::pair{s - omega, Scalar(1)}, std::pair{s + omega, Scalar(-1)}}) {
    Scalar poly{0};
    for (int k = 0; k < t.power; ++k)
      poly += detail::ipow(p, k) * detail::ipow(upper, t.power - k) /
              Scalar(t.power - k);
    Scalar lg{0};
    if (abs(p) >= Scalar(kRemovablePoleTolerance))
      lg = detail::ipow(p, t.power) * (log(abs(upper - p)) - log(abs(p)));
    r += sign * t.coeff * (poly + lg);
  }
  return r;
}

template <typename Scalar>
RenormalizedIntegral<Scalar> density_kernel_integral(
    const SpectralDensity<Scalar> &d, Scalar omega, Scalar lambda) {
  RenormalizedIntegral<Scalar> out;
  for (const auto &t : d.terms)
    out.merge(term_kernel_integral(t, omega, lambda));
  return out;
}

/// Reduced shift of one polarization channel per unit weight.
template <typename Scalar>
Scalar channel_shift(const SpectralDensity<Scalar> &d, Scalar omega,
                     Scalar lambda) {
  return Scalar(kShiftNormalization) *
         density_kernel_integral(d, omega, lambda).value;
}

/// Reduced Lamb shift delta = sum_alpha w_alpha * 1/2 * (renormalized kernel
/// integral of F_alpha). densities are indexed rho, phi, z.
template <typename Scalar>
Scalar shift_from_density(std::span<const SpectralDensity<Scalar>, 3> densities,
                          const DipoleWeights<Scalar> &w, Scalar omega,
                          Scalar lambda) {
  w.require_nonnegative();
  Scalar total{0};
  for (const auto &d : densities) {
    const Scalar wa = w[d.polarization];
    if (wa == Scalar(0)) continue;
    total += wa * channel_shift(d, omega, lambda);
  }
  return total;
}

template <typename Scalar>
Scalar shift_from_density(const std::array<SpectralDensity<Scalar>, 3> &ds,
                          const DipoleWeights<Scalar> &w, Scalar omega,
                          Scalar lambda) {
  return shift_from_density(std::span<const SpectralDensity<Scalar>, 3>(ds), w,
                            omega, lambda);
}

}  // namespace lamb
