// Acceptance criteria 1-9: one PASS/FAIL line each, exit status 1 if any fail.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lamb/kinematics.hpp"
#include "lamb/methods.hpp"
#include "lamb/pvquad.hpp"
#include "lamb/shifts.hpp"
#include "lamb/verify.hpp"

using namespace lamb;

namespace {

const DipoleWeights<double> kIso = DipoleWeights<double>::isotropic();

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

Outcome bethe_inertial() {
  const double c = breakdown(0.0, 0.0, 5.11e5, kIso).total;
  const double p = evaluate_breakdown(Method::pipeline, 0, 0, 5.11e5, kIso).breakdown.total;
  const double q = evaluate_breakdown(Method::quadrature, 0, 0, 5.11e5, kIso).breakdown.total;
  const double worst = std::max({std::abs(c + 39.432), std::abs(p + 39.432),
                                 std::abs(q + 39.432)});
  return {worst <= 1e-3, "closed " + num(c) + ", pipeline " + num(p) + ", quadrature " +
                             num(q) + "; max |dev| " + num(worst) + " <= 1e-3"};
}

Outcome oracle_equivalence() {
  double value = 0, raw = 0, total = 0;
  int points = 0;
  for (const auto &g : standard_grid()) {
    ++points;
    for (const auto &d : circular_densities(g.x, g.beta)) {
      const auto e = density_kernel_integral(d, 1.0, g.lambda);
      const auto q = pv_quadrature_detail(d, 1.0, g.lambda, 1e-11);
      value = std::max(value, rel(e.value, q.renormalized));
      raw = std::max(raw, rel(e.value + e.dropped_at(g.lambda), q.raw));
    }
    const auto p = evaluate_breakdown(Method::pipeline, g.x, g.beta, g.lambda, kIso);
    const auto q = evaluate_breakdown(Method::quadrature, g.x, g.beta, g.lambda, kIso,
                                      PoleFrequency::proper, 1e-11);
    total = std::max(total, rel(p.breakdown.total, q.breakdown.total));
  }
  const double worst = std::max({value, raw, total});
  return {worst <= 1e-8, std::to_string(points) + " grid points; renormalized " +
                             num(value) + ", raw " + num(raw) + ", total " +
                             num(total) + " <= 1e-8 relative"};
}

Outcome closed_transcription() {
  double worst = 0, allowed = 0, at_x = 0;
  int failing = 0, points = 0;
  for (const auto &g : standard_grid()) {
    ++points;
    const double c = breakdown(g.x, g.beta, g.lambda, kIso).total;
    const double p =
        evaluate_breakdown(Method::pipeline, g.x, g.beta, g.lambda, kIso).breakdown.total;
    const double slack = 1e-3 + 10.0 * std::max(1.0, g.x) / g.lambda;
    const double r = rel(c, p);
    if (r > slack) ++failing;
    if (r / slack > worst / std::max(allowed, 1e-300) || allowed == 0) {
      worst = r;
      allowed = slack;
      at_x = g.x;
    }
  }
  return {failing == 0, std::to_string(failing) + "/" + std::to_string(points) +
                            " points outside; worst rel " + num(worst) + " vs " +
                            num(allowed) + " at x=" + num(at_x)};
}

Outcome ratio() {
  const auto r = rotational_ratio(10.0, 5.11e5, kIso);
  const bool ok = r.ratio_vs_transverse >= 0.30 && r.ratio_vs_transverse <= 0.35 &&
                  std::abs(r.ratio_vs_total - 0.21) <= 0.01;
  return {ok, "vs transverse " + num(r.ratio_vs_transverse) + " in [0.30, 0.35]; vs total " +
                  num(r.ratio_vs_total) + " = 0.21 +- 0.01"};
}

Outcome cancellation() {
  const auto b = rot0_bracket(10.0, 5.11e5);
  const double got[4] = {b.lower_sideband, b.upper_sideband, b.centripetal, b.inertial};
  const double want[4] = {-7980.29, 14303.19, -6304.90, -26.29};
  bool ok = std::abs(b.sum() + 8.29) <= 0.02;
  std::string d = "terms";
  for (int i = 0; i < 4; ++i) {
    const bool t = std::abs(got[i] - want[i]) <= 0.01;
    ok = ok && t;
    d += " " + num(got[i], 9) + (t ? "" : " (quoted " + num(want[i], 9) + ")");
  }
  return {ok, d + "; each within 0.01; sum " + num(b.sum(), 7) + " = -8.29 +- 0.02"};
}

Outcome asymptotics() {
  const double lambda = 5.11e5;
  const DipoleWeights<double> wt{1, 1, 0}, wz{0, 0, 1};
  auto tcorr = [&](double x) { return rot0_shift(x, lambda, wt) / 2; };
  auto tasym = [&](double x) {
    return transverse_asymptotic(x, lambda, Regime::small_omega).value + std::log(lambda);
  };
  const double x = 1e-2;
  const double small = rel(tcorr(x), tasym(x));
  const double ratio = std::abs(tcorr(x / 2) - tasym(x / 2)) / std::abs(tcorr(x) - tasym(x));
  const double tfull = (inertial_shift(1e6, wt) + rot0_shift(100.0, 1e6, wt)) / 2;
  const double large = rel(tfull, transverse_asymptotic(100.0, 1e6, Regime::large_omega).value);

  double axial_large = 0, axial_small = 0;
  for (double beta : {1e-3, 1e-2}) {
    const double cl = rot2_shift(100.0, beta, 1e6, wz);
    const double al = axial_asymptotic(100.0, beta, 1e6, Regime::large_omega).value +
                      std::log(1e6);
    axial_large = std::max(axial_large, rel(cl, al));
    const double cs = rot2_shift(x, beta, lambda, wz);
    const double as = axial_asymptotic(x, beta, lambda, Regime::small_omega).value +
                      std::log(lambda);
    axial_small = std::max(axial_small, rel(cs, as));
  }
  const bool ok = small <= 0.05 && ratio < 0.5 && large < 0.02 && axial_large < 0.02 &&
                  axial_small <= 0.05;
  return {ok, "transverse small " + num(small) + " (<=0.05), err ratio " + num(ratio) +
                  " (<0.5), large " + num(large) + " (<0.02); axial large " +
                  num(axial_large) + " (<0.02), axial small " + num(axial_small) +
                  " (<=0.05)"};
}

Outcome limits() {
  const double r0 = rot0_shift(0.0, 5.11e5, kIso);
  const double r2 = rot2_shift(2.0, 0.0, 5.11e5, kIso);
  double quarter = 0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0})
    quarter = std::max(quarter, std::abs(rot2_shift(x, 5e-3, 5.11e5, kIso) /
                                             rot2_shift(x, 1e-2, 5.11e5, kIso) - 0.25) / 0.25);
  const double at = rot0_shift(1.0, 5.11e5, kIso);
  const double jump = std::max(std::abs(rot0_shift(1.0 + 1e-6, 5.11e5, kIso) - at),
                               std::abs(rot0_shift(1.0 - 1e-6, 5.11e5, kIso) - at));
  const bool ok = r0 == 0.0 && r2 == 0.0 && quarter <= 1e-6 && jump <= 1e-4;
  return {ok, "rot0(0)=" + num(r0) + ", rot2(beta=0)=" + num(r2) + ", quartering dev " +
                  num(quarter) + ", jump at x=1 " + num(jump)};
}

Outcome kinematics() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> bd(0, 0.1), ad(0, 2 * std::numbers::pi), ud(-1, 1);
  const auto eta = minkowski_metric<double>();
  double worst = 0;
  enum { Ex, Ey, Ez, Bx, By, Bz };
  struct Entry {
    int i, j;
    std::function<double(double, double, double, double, double)> coeff;
  };
  // (beta, cos t, sin t, cos t', sin t'); E-B correlators of the three channels.
  const std::vector<Entry> rho = {
      {Bz, Bz, [](double b, double, double, double, double) { return b * b; }},
      {Bz, Ex, [](double b, double, double, double cp, double) { return b * cp; }},
      {Bz, Ey, [](double b, double, double, double, double sp) { return b * sp; }},
      {Ex, Bz, [](double b, double c, double, double, double) { return b * c; }},
      {Ex, Ex, [](double, double c, double, double cp, double) { return c * cp; }},
      {Ex, Ey, [](double, double c, double, double, double sp) { return c * sp; }},
      {Ey, Bz, [](double b, double, double s, double, double) { return b * s; }},
      {Ey, Ex, [](double, double, double s, double cp, double) { return s * cp; }},
      {Ey, Ey, [](double, double, double s, double, double sp) { return s * sp; }}};
  const std::vector<Entry> phi = {
      {Ey, Ey, [](double b, double c, double, double cp, double) { return (1 - b * b) * c * cp; }},
      {Ey, Ex, [](double b, double c, double, double, double sp) { return -(1 - b * b) * c * sp; }},
      {Ex, Ey, [](double b, double, double s, double cp, double) { return -(1 - b * b) * s * cp; }},
      {Ex, Ex, [](double b, double, double s, double, double sp) { return (1 - b * b) * s * sp; }}};
  const std::vector<Entry> z = {
      {Ez, Ez, [](double, double, double, double, double) { return 1.0; }},
      {Ez, By, [](double b, double, double, double, double sp) { return -b * sp; }},
      {Ez, Bx, [](double b, double, double, double cp, double) { return -b * cp; }},
      {By, Ez, [](double b, double, double s, double, double) { return -b * s; }},
      {By, By, [](double b, double, double s, double, double sp) { return b * b * s * sp; }},
      {By, Bx, [](double b, double, double s, double cp, double) { return b * b * s * cp; }},
      {Bx, Ez, [](double b, double c, double, double, double) { return -b * c; }},
      {Bx, By, [](double b, double c, double, double, double sp) { return b * b * c * sp; }},
      {Bx, Bx, [](double b, double c, double, double cp, double) { return b * b * c * cp; }}};
  const std::vector<Entry> *tables[3] = {&rho, &phi, &z};

  for (int n = 0; n < 100; ++n) {
    const double beta = bd(rng), t = ad(rng), tp = ad(rng);
    const auto M = boost_matrix(beta, t);
    worst = std::max(worst, (M.transpose() * eta * M - eta).cwiseAbs().maxCoeff());
    const auto S = rotation_matrix(t);
    worst = std::max(worst, (S.transpose() * S - ThreeMatrix<double>::Identity())
                                .cwiseAbs().maxCoeff());
    const auto u = four_velocity(beta, t);
    worst = std::max(worst, std::abs(minkowski_dot<double>(u, u) - 1));
    const ThreeVector<double> d(ud(rng), ud(rng), ud(rng));
    FieldVector<double> f;
    for (int k = 0; k < 6; ++k) f(k) = ud(rng);
    worst = std::max(worst, std::abs(covariant_interaction(d, f, beta, t) -
                                     interaction_coefficients(beta, t).interaction(d, f)));
    const double c = std::cos(t), s = std::sin(t), cp = std::cos(tp), sp = std::sin(tp);
    for (auto p : kPolarizations) {
      Eigen::Matrix<double, 6, 6> want = Eigen::Matrix<double, 6, 6>::Zero();
      for (const auto &e : *tables[static_cast<int>(p)])
        want(e.i, e.j) = e.coeff(beta, c, s, cp, sp);
      worst = std::max(worst, (correlator_coefficients(p, beta, t, tp) - want)
                                  .cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-12, "100 draws, 3x36 correlator entries; max residual " + num(worst) +
                              " <= 1e-12"};
}

int exit_code(const std::string &args, std::string *out = nullptr) {
  const std::string cmd = std::string(LAMBSHIFT_EXE) + " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) return -1;
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) text.append(buf, n);
  const int status = pclose(p);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_verify() {
  std::string out;
  const int code = exit_code("verify", &out);
  std::size_t checks = 0;
  try {
    checks = nlohmann::json::parse(out)["checks"].size();
  } catch (const std::exception &) {
  }
  const int perturbed = exit_code("verify --perturb rot0 1e-3");
  const bool ok = code == 0 && checks >= 20 && perturbed == 1;
  return {ok, "exit " + std::to_string(code) + " with " + std::to_string(checks) +
                  " checks; perturbed run exit " + std::to_string(perturbed)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    double budget_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "Bethe inertial value, three methods", 1.0, bethe_inertial},
      {2, "pipeline vs quadrature oracle", 60.0, oracle_equivalence},
      {3, "closed forms vs pipeline", 0.0, closed_transcription},
      {4, "rotational ratio", 0.0, ratio},
      {5, "zeroth-order bracket cancellation", 0.0, cancellation},
      {6, "asymptotic regimes", 0.0, asymptotics},
      {7, "limit identities", 0.0, limits},
      {8, "kinematics suite", 1.0, kinematics},
      {9, "verify command", 0.0, cli_verify},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = o.pass;
    std::string timing = num(dt) + " s";
    if (c.budget_s > 0) {
      timing += " (budget " + num(c.budget_s) + " s)";
      pass = pass && dt < c.budget_s;
    }
    if (!pass) ++failed;
    std::printf("criterion %d: %s  %s: %s [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), timing.c_str());
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
