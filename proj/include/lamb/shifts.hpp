#pragma once

#include <cmath>
#include <string>

#include "lamb/errors.hpp"
#include "lamb/spectral.hpp"
#include "lamb/weights.hpp"

namespace lamb {

/// Reduced-unit decomposition of the shift; every field is a delta value.
template <typename Scalar = double>
struct ShiftBreakdown {
  Scalar inertial{0};
  Scalar rot0{0};
  Scalar rot2{0};
  Scalar axial_total{0};
  Scalar transverse_total{0};
  Scalar total{0};
};

enum class Regime { small_omega, large_omega };

inline std::string_view to_string(Regime r) {
  return r == Regime::small_omega ? "small_omega" : "large_omega";
}

/// Asymptotic value with a note when (x, lambda) lies outside the regime.
template <typename Scalar = double>
struct AsymptoticEstimate {
  Scalar value{0};
  bool applicable{true};
  std::string warning;
};

/// x <= this counts as Omega << w0.
inline constexpr double kSmallOmegaLimit = 0.1;
/// x >= this (and x <= lambda/10) counts as w0 << Omega << Lambda.
inline constexpr double kLargeOmegaLimit = 10.0;

namespace closed {

template <typename Scalar>
void require_cutoff(Scalar lambda, Scalar x) {
  if (!(lambda > Scalar(1)))
    throw DomainError("cutoff ratio lambda must exceed 1");
  if (!(lambda > x))
    throw ValidityError("cutoff ratio lambda must dominate x");
}

/// ln((lambda^2 - 1)/a^2) weighted by a^n, with the a -> 0 limit taken.
template <typename Scalar>
Scalar weighted_log(Scalar a, int n, Scalar ln_l2m1) {
  using std::abs;
  using std::log;
  if (a == Scalar(0)) return Scalar(0);
  Scalar an{1};
  for (int i = 0; i < n; ++i) an *= a;
  return an * (ln_l2m1 - Scalar(2) * log(abs(a)));
}

template <typename Scalar>
Scalar ln_lambda_sq_minus_one(Scalar lambda) {
  using std::log;
  return log((lambda - Scalar(1)) * (lambda + Scalar(1)));
}

}  // namespace closed

/// Bethe logarithm: -(w_rho + w_phi + w_z) ln lambda.
template <typename Scalar>
Scalar inertial_shift(Scalar lambda, const DipoleWeights<Scalar> &w) {
  using std::log;
  w.require_nonnegative();
  if (!(lambda > Scalar(1)))
    throw DomainError("inertial_shift: lambda must exceed 1");
  return -w.sum() * log(lambda);
}

/// The four summands of the zeroth-order rotational bracket (w0 = 1). Their
/// sum is a near-total cancellation of O(x^3 ln lambda) pieces.
template <typename Scalar>
struct Rot0Bracket {
  Scalar lower_sideband{0};   // (1-x)^3/2 ln((L^2-1)/(1-x)^2)
  Scalar upper_sideband{0};   // (1+x)^3/2 ln((L^2-1)/(1+x)^2)
  Scalar centripetal{0};      // 2 x^2 (1 - 3 ln(L/x))
  Scalar inertial{0};         // -ln(L^2-1)

  Scalar sum() const {
    return lower_sideband + upper_sideband + centripetal + inertial;
  }
};

template <typename Scalar>
Rot0Bracket<Scalar> rot0_bracket(Scalar x, Scalar lambda) {
  using std::log;
  if (!(x >= Scalar(0))) throw DomainError("rot0: x must be >= 0");
  closed::require_cutoff(lambda, x);
  Rot0Bracket<Scalar> b;
  if (x == Scalar(0)) return b;
  const Scalar L = closed::ln_lambda_sq_minus_one(lambda);
  b.lower_sideband = closed::weighted_log(Scalar(1) - x, 3, L) / Scalar(2);
  b.upper_sideband = closed::weighted_log(Scalar(1) + x, 3, L) / Scalar(2);
  b.centripetal = Scalar(2) * x * x * (Scalar(1) - Scalar(3) * log(lambda / x));
  b.inertial = -L;
  return b;
}

/// Zeroth-order (R-independent) rotational correction; only transverse
/// weights contribute.
template <typename Scalar>
Scalar rot0_shift(Scalar x, Scalar lambda, const DipoleWeights<Scalar> &w) {
  w.require_nonnegative();
  if (!(x >= Scalar(0))) throw DomainError("rot0_shift: x must be >= 0");
  if (x == Scalar(0)) {
    closed::require_cutoff(lambda, x);
    return Scalar(0);
  }
  return -(w.transverse_sum() / Scalar(2)) * rot0_bracket(x, lambda).sum();
}

/// Second-order rotational correction, proportional to beta^2 with
/// R^2/c^2 = beta^2/x^2.
template <typename Scalar>
Scalar rot2_shift(Scalar x, Scalar beta, Scalar lambda,
                  const DipoleWeights<Scalar> &w) {
  using std::log;
  w.require_nonnegative();
  if (!(beta >= Scalar(0))) throw DomainError("rot2_shift: beta must be >= 0");
  if (beta > Scalar(kMaxBeta))
    throw ValidityError("rot2_shift: nonrelativistic regime violated (beta > 0.1)");
  if (!(x > Scalar(0))) throw DomainError("rot2_shift: x must be positive");
  closed::require_cutoff(lambda, x);
  if (beta == Scalar(0)) return Scalar(0);

  const Scalar r = w.w_rho, f = w.w_phi, z = w.w_z;
  const Scalar x2 = x * x, x4 = x2 * x2;
  const Scalar L = closed::ln_lambda_sq_minus_one(lambda);
  const Scalar ln2 = log(Scalar(2));

  // "-1/5 w0 Omega^2 [4(2w0^2+Omega^2)(d_rho^2+d_phi^2+d_z^2)
  //   + 3 Omega^2 (1+40 ln 2)(d_rho^2+d_phi^2) + (w0^2-2 Omega^2) d_phi^2]"
  Scalar e = -x2 / Scalar(5) *
             (Scalar(4) * (Scalar(2) + x2) * (r + f + z) +
              Scalar(3) * x2 * (Scalar(1) + Scalar(40) * ln2) * (r + f) +
              (Scalar(1) - Scalar(2) * x2) * f);

  // "w0 Omega^4 (11 d_rho^2 + 11 d_phi^2 + 2 d_z^2) ln(Lambda/Omega)"
  e += x4 * (Scalar(11) * r + Scalar(11) * f + Scalar(2) * z) * log(lambda / x);

  // "-1/20 [(w0^5 + 20 w0^3 Omega^2) d_rho^2 + 5 w0^5 d_phi^2
  //   - 2(4 w0^5 + 15 w0^3 Omega^2) d_z^2] ln((Lambda^2-w0^2)/w0^2)"
  e -= ((Scalar(1) + Scalar(20) * x2) * r + Scalar(5) * f -
        Scalar(2) * (Scalar(4) + Scalar(15) * x2) * z) /
       Scalar(20) * L;

  for (const Scalar p : {Scalar(1), Scalar(-1)}) {
    const Scalar a = Scalar(1) + p * x;  // w0 + p Omega
    // "(w0+p Omega)^3/10 [(w0^2 + 7p w0 Omega + 6 Omega^2) d_rho^2
    //   + (2 w0^2 + 4p w0 Omega + 7 Omega^2) d_phi^2
    //   - (2 w0^2 - p w0 Omega + 2 Omega^2) d_z^2]"
    const Scalar cubic_weight =
        ((Scalar(1) + Scalar(7) * p * x + Scalar(6) * x2) * r +
         (Scalar(2) + Scalar(4) * p * x + Scalar(7) * x2) * f -
         (Scalar(2) - p * x + Scalar(2) * x2) * z) /
        Scalar(10);
    e += cubic_weight * closed::weighted_log(a, 3, L);
    // "3 w0 Omega^2/4 (w0+p Omega)^2 (d_rho^2+d_phi^2)"
    e += Scalar(3) * x2 / Scalar(4) * (r + f) * closed::weighted_log(a, 2, L);
    // "-3/40 sum_p (w0+2p Omega)^5 (d_rho^2+d_phi^2)"
    e -= Scalar(3) / Scalar(40) * (r + f) *
         closed::weighted_log(Scalar(1) + Scalar(2) * p * x, 5, L);
  }

  // R^2/(6 pi^2 c^5 eps0 hbar) -> beta^2/(2 x^2) in reduced units.
  return beta * beta / (Scalar(2) * x2) * e;
}

template <typename Scalar>
AsymptoticEstimate<Scalar> regime_check(Scalar x, Scalar lambda, Regime regime) {
  AsymptoticEstimate<Scalar> a;
  if (regime == Regime::small_omega) {
    a.applicable = x <= Scalar(kSmallOmegaLimit);
    if (!a.applicable) a.warning = "small_omega regime requires x << 1";
  } else {
    a.applicable = x >= Scalar(kLargeOmegaLimit) && x <= lambda / Scalar(10);
    if (!a.applicable)
      a.warning = "large_omega regime requires 1 << x << lambda";
  }
  return a;
}

/// Axial (z) shift per unit w_z in either angular-velocity regime.
template <typename Scalar>
AsymptoticEstimate<Scalar> axial_asymptotic(Scalar x, Scalar beta,
                                            Scalar lambda, Regime regime) {
  using std::log;
  if (!(x >= Scalar(0))) throw DomainError("axial_asymptotic: x must be >= 0");
  if (!(lambda > Scalar(1))) throw DomainError("axial_asymptotic: lambda must exceed 1");
  auto a = regime_check(x, lambda, regime);
  const Scalar ll = log(lambda);
  const Scalar b2 = beta * beta;
  if (regime == Regime::small_omega) {
    a.value = -ll * (Scalar(1) + b2 / Scalar(2));
  } else {
    if (!(x > Scalar(0))) throw DomainError("axial_asymptotic: large regime needs x > 0");
    a.value = -(ll + b2 * (log(Scalar(1) / x) - ll / Scalar(2)));
  }
  return a;
}

/// Transverse shift per unit (w_rho + w_phi) at zeroth order in R.
template <typename Scalar>
AsymptoticEstimate<Scalar> transverse_asymptotic(Scalar x, Scalar lambda,
                                                 Regime regime) {
  using std::log;
  if (!(x >= Scalar(0))) throw DomainError("transverse_asymptotic: x must be >= 0");
  if (!(lambda > Scalar(1))) throw DomainError("transverse_asymptotic: lambda must exceed 1");
  auto a = regime_check(x, lambda, regime);
  const Scalar ll = log(lambda);
  if (regime == Regime::small_omega) {
    const Scalar corr =
        x == Scalar(0)
            ? Scalar(0)
            : Scalar(1.5) * x * x * (Scalar(2) * log(Scalar(1) / x) + Scalar(1));
    a.value = -(ll - corr);
  } else {
    if (!(x > Scalar(0))) throw DomainError("transverse_asymptotic: large regime needs x > 0");
    a.value = -(ll + log(Scalar(1) / x) - Scalar(11) / Scalar(6));
  }
  return a;
}

template <typename Scalar = double>
struct RotationalRatio {
  Scalar ratio_vs_total{0};
  Scalar ratio_vs_transverse{0};
};

/// |rot0| against the inertial shift of all channels and of the transverse
/// channels alone.
template <typename Scalar>
RotationalRatio<Scalar> rotational_ratio(Scalar x, Scalar lambda,
                                         const DipoleWeights<Scalar> &w) {
  using std::abs;
  w.validate();
  const Scalar all = inertial_shift(lambda, w);
  const Scalar transverse = inertial_shift(lambda, w.transverse_only());
  if (all == Scalar(0) || transverse == Scalar(0))
    throw DomainError("rotational_ratio: inertial denominator vanishes");
  const Scalar r0 = abs(rot0_shift(x, lambda, w));
  return {r0 / abs(all), r0 / abs(transverse)};
}

template <typename Scalar>
void validate_motion(Scalar x, Scalar beta) {
  if (!(x >= Scalar(0))) throw DomainError("x must be >= 0");
  if (!(beta >= Scalar(0))) throw DomainError("beta must be >= 0");
  if (beta > Scalar(kMaxBeta))
    throw ValidityError("nonrelativistic regime violated (beta > 0.1)");
  if (x == Scalar(0) && beta > Scalar(0))
    throw DomainError("beta = R*Omega/c must vanish when x = 0");
}

/// inertial + rot0 + rot2, with the axial (w_z) and transverse (w_rho, w_phi)
/// channel sums.
template <typename Scalar>
ShiftBreakdown<Scalar> breakdown(Scalar x, Scalar beta, Scalar lambda,
                                 const DipoleWeights<Scalar> &w) {
  w.validate();
  validate_motion(x, beta);
  auto rot2 = [&](const DipoleWeights<Scalar> &ww) {
    return x > Scalar(0) ? rot2_shift(x, beta, lambda, ww) : Scalar(0);
  };
  ShiftBreakdown<Scalar> b;
  b.inertial = inertial_shift(lambda, w);
  b.rot0 = rot0_shift(x, lambda, w);
  b.rot2 = rot2(w);
  b.axial_total = inertial_shift(lambda, w.axial_only()) + rot2(w.axial_only());
  b.transverse_total = inertial_shift(lambda, w.transverse_only()) + b.rot0 +
                       rot2(w.transverse_only());
  b.total = b.inertial + b.rot0 + b.rot2;
  return b;
}

}  // namespace lamb
