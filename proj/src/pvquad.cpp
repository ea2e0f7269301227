#include "lamb/pvquad.hpp"

#include <algorithm>
#include <cmath>

namespace lamb {

namespace {

constexpr double kMaxPoleHalfWidth = 0.1;
constexpr int kMaxPower = 8;

// Monomial coefficients of the density with every Theta switched on.
std::array<double, kMaxPower + 1> all_on_polynomial(
    const SpectralDensity<double> &d) {
  std::array<double, kMaxPower + 1> a{};
  for (const auto &t : d.terms) {
    if (t.power > kMaxPower)
      throw DomainError("pv_quadrature: term power too large");
    for (int j = 0; j <= t.power; ++j)
      a[j] += t.coeff * detail::binomial(t.power, j) *
              detail::ipow(t.shift, t.power - j);
  }
  return a;
}

}  // namespace

PvQuadratureResult pv_quadrature_detail(const SpectralDensity<double> &d,
                                        double omega, double lambda,
                                        double tol) {
  if (!(tol >= 1e-12)) throw DomainError("pv_quadrature: tol must be >= 1e-12");
  if (!(omega > 0.0)) throw DomainError("pv_quadrature: omega must be positive");
  PvQuadratureResult out;
  if (d.terms.empty()) return out;

  const auto bps = breakpoints(d);
  const double lo = bps.front();
  const double tail_start =
      2.0 * std::max({1.0, omega, std::abs(bps.front()), std::abs(bps.back())}) +
      1.0;
  if (!(lambda > tail_start))
    throw ValidityError("pv_quadrature: cutoff below the last breakpoint");
  out.tail_start = tail_start;

  auto F = [&d](double nu) { return evaluate_density(d, nu); };
  auto integrand = [&](double nu) {
    return -2.0 * omega * F(nu) / ((nu - omega) * (nu + omega));
  };

  // Panel edges: support start, breakpoints, tail start; poles get excised
  // windows.
  std::vector<double> edges{lo, tail_start};
  for (double b : bps)
    if (b > lo && b < tail_start) edges.push_back(b);

  struct Window {
    double p, h;
  };
  std::vector<Window> windows;
  for (double p : {-omega, omega}) {
    if (!(p > lo + kRemovablePoleTolerance && p < tail_start)) continue;
    double h = kMaxPoleHalfWidth;
    for (double e : edges) {
      const double dist = std::abs(e - p);
      if (dist < kRemovablePoleTolerance) continue;
      h = std::min(h, 0.5 * dist);
    }
    const double other = -p;
    if (other > lo && other < tail_start) h = std::min(h, 0.5 * std::abs(2 * p));
    windows.push_back({p, h});
  }
  // Breakpoints on top of a pole lie inside its window.
  std::erase_if(edges, [&](double e) {
    return std::any_of(windows.begin(), windows.end(), [&](const Window &w) {
      return std::abs(e - w.p) < kRemovablePoleTolerance;
    });
  });
  for (const auto &w : windows) {
    edges.push_back(w.p - w.h);
    edges.push_back(w.p + w.h);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto in_window = [&](double a, double b) {
    return std::any_of(windows.begin(), windows.end(), [&](const Window &w) {
      return a >= w.p - w.h * (1 + 1e-12) && b <= w.p + w.h * (1 + 1e-12);
    });
  };

  // Coarse magnitude for the absolute tolerance floor.
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (in_window(edges[i], edges[i + 1])) continue;
    scale += std::abs(detail::gk15(integrand, edges[i], edges[i + 1]).value);
  }
  const double abs_tol = tol * std::max(1.0, scale);

  double head = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (in_window(edges[i], edges[i + 1])) continue;
    auto r = integrate_adaptive(integrand, edges[i], edges[i + 1], tol, abs_tol);
    head += r.value;
    err += r.error;
  }
  for (const auto &w : windows) {
    // integrand = g(nu)/(nu - p) with g free of the pole at p.
    const double p = w.p;
    auto g = [&, p](double nu) { return -2.0 * omega * F(nu) / (nu + p); };
    auto r = excised_pole_integral(g, p, w.h, tol, abs_tol);
    head += r.value;
    err += r.error;
  }

  // Tail: -2w P(nu) = A(nu)(nu^2 - w^2) + r1 nu + r0.
  auto P = all_on_polynomial(d);
  std::array<double, kMaxPower + 1> q{};
  for (int j = 0; j <= kMaxPower; ++j) q[j] = -2.0 * omega * P[j];
  std::array<double, kMaxPower + 1> A{};
  for (int k = kMaxPower; k >= 2; --k) {
    A[k - 2] = q[k];
    q[k - 2] += omega * omega * q[k];
    q[k] = 0.0;
  }
  const double r1 = q[1], r0 = q[0];

  auto antiderivative = [&A](double nu) {
    double s = 0.0;
    for (int j = kMaxPower - 2; j >= 0; --j)
      s += A[j] * detail::ipow(nu, j + 1) / double(j + 1);
    return s;
  };
  for (int j = 0; j <= kMaxPower - 2; ++j)
    if (A[j] != 0.0) out.dropped_powers.push_back({j + 1, A[j] / double(j + 1)});

  // Remainder r(nu)/(nu^2-w^2) in t = ln nu.
  auto remainder = [&](double t) {
    const double nu = std::exp(t);
    return nu * (r1 * nu + r0) / ((nu - omega) * (nu + omega));
  };
  auto rem = integrate_adaptive(remainder, std::log(tail_start), std::log(lambda),
                                tol, tol * std::max(1.0, std::abs(r1) + std::abs(r0)));
  err += rem.error;

  out.renormalized = head - antiderivative(tail_start) + rem.value;
  out.raw = out.renormalized + antiderivative(lambda);
  out.error_estimate = err;
  return out;
}

double pv_quadrature(const SpectralDensity<double> &d, double omega,
                     double lambda, double tol) {
  return pv_quadrature_detail(d, omega, lambda, tol).raw;
}

QuadratureShift quadrature_shift(
    const std::array<SpectralDensity<double>, 3> &densities,
    const DipoleWeights<double> &w, double omega, double lambda, double tol) {
  w.require_nonnegative();
  QuadratureShift out;
  for (const auto &d : densities) {
    const double wa = w[d.polarization];
    if (wa == 0.0) continue;
    auto r = pv_quadrature_detail(d, omega, lambda, tol);
    out.value += wa * kShiftNormalization * r.renormalized;
    out.error_estimate += wa * kShiftNormalization * r.error_estimate;
  }
  return out;
}

}  // namespace lamb
