#include "lamb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lamb/kinematics.hpp"
#include "lamb/methods.hpp"
#include "lamb/pvquad.hpp"
#include "lamb/shifts.hpp"

namespace lamb {

std::vector<GridPoint> standard_grid() {
  std::vector<GridPoint> g;
  for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0})
    for (double beta : {0.0, 1e-3, 1e-2})
      for (double lambda : {1e4, 1e6}) {
        if (x == 0.0 && beta > 0.0) continue;
        g.push_back({x, beta, lambda});
      }
  return g;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check &c) { return c.passed || !c.gating; });
}

std::size_t VerifyReport::gating_count() const {
  return std::count_if(checks.begin(), checks.end(),
                       [](const Check &c) { return c.gating; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto &c : checks)
    list.push_back({{"name", c.name},
                    {"value", c.value},
                    {"measured", c.measured},
                    {"allowed", c.allowed},
                    {"passed", c.passed},
                    {"gating", c.gating},
                    {"note", c.note}});
  return {{"passed", passed()},
          {"check_count", checks.size()},
          {"gating_count", gating_count()},
          {"checks", list}};
}

namespace {

const DipoleWeights<double> kIsotropic = DipoleWeights<double>::isotropic();
constexpr double kBetheLambda = 5.11e5;

class Suite {
 public:
  explicit Suite(const VerifyOptions &o) : opts_(o) {}

  double bump(const char *target) const {
    return opts_.perturb_target == target ? opts_.perturb_amount : 0.0;
  }

  double inertial(double lambda, const DipoleWeights<double> &w) const {
    return inertial_shift(lambda, w) + bump("inertial");
  }
  double rot0(double x, double lambda, const DipoleWeights<double> &w) const {
    return rot0_shift(x, lambda, w) + bump("rot0");
  }
  double rot2(double x, double beta, double lambda,
              const DipoleWeights<double> &w) const {
    return rot2_shift(x, beta, lambda, w) + bump("rot2");
  }

  void add(std::string name, double value, double measured, double allowed,
           std::string note = {}, bool gating = true) {
    const bool ok = std::isfinite(measured) && measured <= allowed;
    report.checks.push_back(
        {std::move(name), value, measured, allowed, ok, gating, std::move(note)});
  }

  /// |value - target| <= allowed
  void near(std::string name, double value, double target, double allowed,
            std::string note = {}, bool gating = true) {
    add(std::move(name), value, std::abs(value - target), allowed,
        std::move(note), gating);
  }

  VerifyReport report;

 private:
  VerifyOptions opts_;
};

double rel(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

void inertial_checks(Suite &s) {
  const double target = -39.432;
  s.near("inertial_closed", s.inertial(kBetheLambda, kIsotropic), target, 1e-3,
         "lambda=5.11e5, isotropic");
  s.near("inertial_unit_logarithm",
         s.inertial(std::numbers::e, DipoleWeights<double>{1, 0, 0}), -1.0, 1e-14,
         "lambda=e, w=(1,0,0)");
  auto p = evaluate_breakdown(Method::pipeline, 0, 0, kBetheLambda, kIsotropic);
  s.near("inertial_pipeline", p.breakdown.total + s.bump("pipeline"), target,
         1e-3);
  auto q = evaluate_breakdown(Method::quadrature, 0, 0, kBetheLambda, kIsotropic);
  s.near("inertial_quadrature", q.breakdown.total, target, 1e-3);
}

void oracle_checks(Suite &s) {
  double worst_value = 0, worst_ledger = 0, worst_shift = 0;
  double closed_gap = 0, closed_allowed = 0;
  std::string where;
  for (const auto &g : standard_grid()) {
    const auto ds = circular_densities(g.x, g.beta);
    for (const auto &d : ds) {
      const auto pipe = density_kernel_integral(d, 1.0, g.lambda);
      const auto quad = pv_quadrature_detail(d, 1.0, g.lambda, 1e-11);
      const double dv = rel(pipe.value + s.bump("pipeline"), quad.renormalized);
      if (dv > worst_value) {
        worst_value = dv;
        where = "x=" + std::to_string(g.x) + " beta=" + std::to_string(g.beta) +
                " lambda=" + std::to_string(g.lambda) + " " +
                std::string(to_string(d.polarization));
      }
      double scale = 0;
      for (const auto &t : quad.dropped_powers)
        scale = std::max(scale, std::abs(t.coeff));
      for (const auto &t : quad.dropped_powers)
        worst_ledger = std::max(
            worst_ledger, std::abs(pipe.dropped_coeff(t.power) - t.coeff) / scale);
      for (const auto &t : pipe.dropped_powers)
        if (std::none_of(quad.dropped_powers.begin(), quad.dropped_powers.end(),
                         [&](const auto &q) { return q.power == t.power; }))
          worst_ledger = std::max(worst_ledger, std::abs(t.coeff) / scale);
    }
    const auto p = evaluate_breakdown(Method::pipeline, g.x, g.beta, g.lambda,
                                      kIsotropic);
    const auto q = evaluate_breakdown(Method::quadrature, g.x, g.beta, g.lambda,
                                      kIsotropic, PoleFrequency::proper, 1e-11);
    worst_shift = std::max(
        worst_shift, rel(p.breakdown.total + s.bump("pipeline"), q.breakdown.total));

    const auto c = breakdown(g.x, g.beta, g.lambda, kIsotropic);
    const double slack = 1e-3 + 10.0 * std::max(1.0, g.x) / g.lambda;
    const double gap = rel(c.total, p.breakdown.total);
    if (closed_allowed == 0 || gap / slack > closed_gap / closed_allowed) {
      closed_gap = gap;
      closed_allowed = slack;
    }
  }
  s.add("oracle_channel_values", worst_value, worst_value, 1e-8,
        "pipeline vs quadrature renormalized channel integrals, worst at " + where);
  s.add("oracle_dropped_ledger", worst_ledger, worst_ledger, 1e-8,
        "Lambda^k coefficients, relative to the largest");
  s.add("oracle_total_shift", worst_shift, worst_shift, 1e-8,
        "isotropic total over the standard grid");
  s.add("closed_vs_pipeline", closed_gap, closed_gap, closed_allowed,
        "closed-form totals against exact integration of the spectral densities",
        false);
}

void ledger_checks(Suite &s) {
  // raw antiderivative == kept + dropped at the cutoff, term by term.
  double worst = 0;
  for (double x : {0.5, 2.0, 10.0})
    for (const auto &d : circular_densities(x, 1e-2))
      for (const auto &t : d.terms) {
        const double lambda = 1e3;
        const auto r = term_kernel_integral(t, 1.0, lambda);
        const double raw = term_kernel_raw(t, 1.0, lambda);
        worst = std::max(worst, std::abs(r.value + r.dropped_at(lambda) - raw) /
                                    std::max(1.0, std::abs(raw)));
      }
  s.add("ledger_completeness", worst, worst, 1e-12,
        "kept + dropped reproduces the unexpanded antiderivative");
}

void bracket_checks(Suite &s) {
  const auto b = rot0_bracket(10.0, kBetheLambda);
  const double eps = s.bump("rot0");
  // 30-digit evaluations of the same expressions.
  s.near("rot0_bracket_lower_sideband", b.lower_sideband + eps, -7980.290312757, 0.01);
  s.near("rot0_bracket_upper_sideband", b.upper_sideband, 14303.231592789, 0.01);
  s.near("rot0_bracket_centripetal", b.centripetal, -6304.923865715, 0.01);
  s.near("rot0_bracket_inertial", b.inertial, -26.288249738, 0.01);
  s.near("rot0_bracket_sum", b.sum() + eps, -8.270835421, 0.02);

  const double quoted[4] = {-7980.29, 14303.19, -6304.90, -26.29};
  const double got[4] = {b.lower_sideband, b.upper_sideband, b.centripetal,
                         b.inertial};
  double worst = 0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - quoted[i]));
  s.add("rot0_bracket_quoted_terms", worst, worst, 0.01,
        "against (-7980.29, 14303.19, -6304.90, -26.29); the upper sideband and "
        "centripetal terms evaluate 0.04 and 0.02 away",
        false);
}

void ratio_checks(Suite &s) {
  const double rot0 = std::abs(s.rot0(10.0, kBetheLambda, kIsotropic));
  const double vs_t =
      rot0 / std::abs(s.inertial(kBetheLambda, kIsotropic.transverse_only()));
  const double vs_all = rot0 / std::abs(s.inertial(kBetheLambda, kIsotropic));
  s.near("ratio_vs_transverse", vs_t, 0.325, 0.025, "range [0.30, 0.35]");
  s.near("ratio_vs_total", vs_all, 0.21, 0.01,
         "all-polarization denominator; below the quoted 30%");
}

void limit_checks(Suite &s) {
  const double r0 = s.rot0(0.0, kBetheLambda, kIsotropic);
  s.add("rot0_vanishes_at_rest", r0, std::abs(r0), 0.0);
  const double r2 = s.rot2(2.0, 0.0, kBetheLambda, kIsotropic);
  s.add("rot2_vanishes_at_zero_speed", r2, std::abs(r2), 0.0);

  double worst = 0;
  for (double x : {0.1, 0.5, 2.0, 10.0}) {
    const double a = s.rot2(x, 1e-2, kBetheLambda, kIsotropic);
    const double b = s.rot2(x, 5e-3, kBetheLambda, kIsotropic);
    worst = std::max(worst, std::abs(b / a - 0.25) / 0.25);
  }
  s.add("rot2_beta_squared_scaling", worst, worst, 1e-6,
        "rot2(beta/2)/rot2(beta) against 1/4");

  const double below = s.rot0(1.0 - 1e-7, kBetheLambda, kIsotropic);
  const double above = s.rot0(1.0 + 1e-7, kBetheLambda, kIsotropic);
  const double at = s.rot0(1.0, kBetheLambda, kIsotropic);
  const double jump = std::max(std::abs(below - at), std::abs(above - at));
  s.add("rot0_continuous_at_x1", at, jump, 1e-4);
}

void asymptotic_checks(Suite &s) {
  const double lambda = kBetheLambda;
  const DipoleWeights<double> wt{1, 1, 0}, wz{0, 0, 1};
  auto transverse_correction = [&](double x) {
    return s.rot0(x, lambda, wt) / 2.0;
  };
  auto transverse_asym_correction = [&](double x) {
    return transverse_asymptotic(x, lambda, Regime::small_omega).value +
           std::log(lambda);
  };
  const double x = 1e-2;
  const double full = transverse_correction(x);
  const double asym = transverse_asym_correction(x);
  s.add("transverse_small_asymptotic", full, rel(full, asym), 0.05,
        "(3x^2/2)(2 ln(1/x)+1) at x=1e-2");
  const double err_x = std::abs(full - asym);
  const double err_half =
      std::abs(transverse_correction(x / 2) - transverse_asym_correction(x / 2));
  s.add("transverse_small_error_ratio", err_half / err_x, err_half / err_x, 0.5,
        "err(x/2)/err(x)");

  const double xl = 100, ll = 1e6;
  const double tfull =
      (s.inertial(ll, wt) + s.rot0(xl, ll, wt)) / wt.transverse_sum();
  const double tasym = transverse_asymptotic(xl, ll, Regime::large_omega).value;
  s.add("transverse_large_asymptotic", tfull, rel(tfull, tasym), 0.02,
        "x=100, lambda=1e6");

  for (double beta : {1e-3, 1e-2}) {
    const std::string tag = beta == 1e-3 ? "1e-3" : "1e-2";
    const double corr = s.rot2(xl, beta, ll, wz);
    const double acorr =
        axial_asymptotic(xl, beta, ll, Regime::large_omega).value + std::log(ll);
    s.add("axial_large_asymptotic_beta_" + tag, corr, rel(corr, acorr), 0.02,
          "beta^2 correction at x=100, lambda=1e6");
  }
  for (double beta : {1e-3, 1e-2}) {
    const std::string tag = beta == 1e-3 ? "1e-3" : "1e-2";
    const double corr = s.rot2(x, beta, lambda, wz);
    const double acorr =
        axial_asymptotic(x, beta, lambda, Regime::small_omega).value +
        std::log(lambda);
    s.add("axial_small_asymptotic_beta_" + tag, corr, rel(corr, acorr), 0.05,
          "beta^2 correction at x=1e-2; closed form and -beta^2 ln(lambda)/2 "
          "differ in sign",
          false);
  }
}

void kinematics_checks(Suite &s) {
  std::mt19937_64 rng(20241016);
  std::uniform_real_distribution<double> beta_d(0.0, 0.1), angle(0.0,
                                                                 2 * std::numbers::pi),
      unit(-1.0, 1.0);
  const FourMatrix<double> eta = minkowski_metric<double>();
  double boost = 0, rot = 0, norm = 0, recon = 0, printed = 0;
  double outer[3] = {0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    const double beta = i < 3 ? std::array{0.0, 0.3, 0.9}[i] : beta_d(rng);
    const double th = angle(rng), thp = angle(rng);
    const auto M = boost_matrix(beta, th);
    boost = std::max(boost, (M.transpose() * eta * M - eta).cwiseAbs().maxCoeff());
    const auto S = rotation_matrix(th);
    rot = std::max(
        rot, (S.transpose() * S - ThreeMatrix<double>::Identity()).cwiseAbs().maxCoeff());
    const auto u = four_velocity(beta, th);
    norm = std::max(norm, std::abs(minkowski_dot<double>(u, u) - 1.0));

    ThreeVector<double> d(unit(rng), unit(rng), unit(rng));
    FieldVector<double> f;
    for (int k = 0; k < 6; ++k) f(k) = unit(rng);
    const auto fp = interaction_coefficients(beta, th);
    const double h = fp.interaction(d, f);
    recon = std::max(recon, std::abs(covariant_interaction(d, f, beta, th) - h));

    FourVector<double> spatial;
    spatial << 0.0, S * d;
    const FourVector<double> dp = M * spatial;
    const double hp =
        -(dp.transpose() * field_tensor(f) * u)(0, 0) / lorentz_gamma(beta);
    printed = std::max(printed, std::abs(hp - h));

    const double c = std::cos(th), sn = std::sin(th), cp = std::cos(thp),
                 sp = std::sin(thp);
    const double ig2 = 1.0 - beta * beta;
    enum { Ex, Ey, Ez, Bx, By, Bz };
    using Table = Eigen::Matrix<double, 6, 6>;
    Table rho = Table::Zero(), phi = Table::Zero(), z = Table::Zero();
    rho(Bz, Bz) = beta * beta;
    rho(Bz, Ex) = beta * cp;
    rho(Bz, Ey) = beta * sp;
    rho(Ex, Bz) = beta * c;
    rho(Ex, Ex) = c * cp;
    rho(Ex, Ey) = c * sp;
    rho(Ey, Bz) = beta * sn;
    rho(Ey, Ex) = sn * cp;
    rho(Ey, Ey) = sn * sp;
    phi(Ey, Ey) = ig2 * c * cp;
    phi(Ey, Ex) = -ig2 * c * sp;
    phi(Ex, Ey) = -ig2 * sn * cp;
    phi(Ex, Ex) = ig2 * sn * sp;
    z(Ez, Ez) = 1;
    z(Ez, By) = -beta * sp;
    z(Ez, Bx) = -beta * cp;
    z(By, Ez) = -beta * sn;
    z(By, By) = beta * beta * sn * sp;
    z(By, Bx) = beta * beta * sn * cp;
    z(Bx, Ez) = -beta * c;
    z(Bx, By) = beta * beta * c * sp;
    z(Bx, Bx) = beta * beta * c * cp;
    const Table *tables[3] = {&rho, &phi, &z};
    for (auto p : kPolarizations) {
      const auto got = correlator_coefficients(p, beta, th, thp);
      const int k = static_cast<int>(p);
      outer[k] = std::max(outer[k], (got - *tables[k]).cwiseAbs().maxCoeff());
    }
  }
  const double eps = s.bump("kinematics");
  s.add("boost_pseudo_orthogonality", boost, boost + eps, 1e-12);
  s.add("rotation_orthogonality", rot, rot, 1e-12);
  s.add("four_velocity_normalization", norm, norm, 1e-12);
  s.add("hamiltonian_reconstruction", recon, recon, 1e-12,
        "-(1/gamma) d F u against the frame-projection rows; lab dipole uses "
        "the inverse of boost_matrix");
  s.add("printed_boost_reconstruction", printed, printed, 1e-12,
        "same identity with boost_matrix applied directly; phi row picks up "
        "gamma(1+beta^2)",
        false);
  s.add("correlator_outer_product_rho", outer[0], outer[0], 1e-12, "36 entries");
  s.add("correlator_outer_product_phi", outer[1], outer[1], 1e-12, "36 entries");
  s.add("correlator_outer_product_z", outer[2], outer[2], 1e-12, "36 entries");
}

}  // namespace

VerifyReport run_verification(const VerifyOptions &opts) {
  Suite s(opts);
  inertial_checks(s);
  oracle_checks(s);
  ledger_checks(s);
  bracket_checks(s);
  ratio_checks(s);
  limit_checks(s);
  asymptotic_checks(s);
  kinematics_checks(s);
  return std::move(s.report);
}

}  // namespace lamb
