#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lamb/methods.hpp"
#include "lamb/report.hpp"
#include "lamb/shifts.hpp"
#include "lamb/spectral.hpp"
#include "lamb/units.hpp"
#include "lamb/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
  std::optional<double> omega0_ev;
  double x{0};
  double beta{0};
  std::optional<double> lambda;
  std::vector<double> weights{1, 1, 1};
  std::string method{"closed"};
  std::string format{"csv"};
  std::string pole_frequency{"proper"};

  double cutoff() const {
    if (lambda) return *lambda;
    if (omega0_ev) return lamb::default_cutoff_ratio(*omega0_ev);
    return lamb::kElectronRestEnergyEv;
  }

  lamb::DipoleWeights<double> dipole_weights() const {
    if (weights.size() != 3)
      throw lamb::DomainError("--weights takes three values r,p,z");
    return {weights[0], weights[1], weights[2]};
  }

  void validate() const {
    if (omega0_ev && !(*omega0_ev > 0))
      throw lamb::DomainError("omega0-ev must be positive");
    if (!(cutoff() > 1)) throw lamb::DomainError("lambda must exceed 1");
    dipole_weights().validate();
    lamb::validate_motion(x, beta);
    lamb::method_from_string(method);
    lamb::pole_frequency_from_string(pole_frequency);
    if (format != "csv" && format != "json")
      throw lamb::DomainError("format must be csv or json");
  }
};

struct SweepConfig {
  std::string param{"x"};
  double from{0};
  double to{1};
  int points{2};
  bool log_spacing{false};

  void validate() const {
    if (param != "x" && param != "beta" && param != "lambda")
      throw lamb::DomainError("param must be x, beta or lambda");
    if (!(from < to)) throw lamb::DomainError("sweep requires from < to");
    if (points < 2) throw lamb::DomainError("sweep requires points >= 2");
    if (log_spacing && !(from > 0))
      throw lamb::DomainError("log spacing requires from > 0");
  }

  std::vector<double> grid() const {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
      const double t = double(i) / double(points - 1);
      g[i] = log_spacing ? from * std::pow(to / from, t) : from + t * (to - from);
    }
    g.front() = from;
    g.back() = to;
    return g;
  }
};

lamb::ShiftRecord evaluate(const RunConfig &c, lamb::MethodResult *result = nullptr) {
  auto r = lamb::evaluate_breakdown(lamb::method_from_string(c.method), c.x,
                                    c.beta, c.cutoff(), c.dipole_weights(),
                                    lamb::pole_frequency_from_string(c.pole_frequency));
  if (result) *result = r;
  return {c.x, c.beta, c.cutoff(), c.dipole_weights(), r.breakdown, {}};
}

int cmd_shift(const RunConfig &c) {
  c.validate();
  lamb::MethodResult mr;
  auto rec = evaluate(c, &mr);
  rec.extras = {{"method", c.method},
                {"error_estimate", lamb::format_number(mr.error_estimate)},
                {"spacing_change", std::to_string(lamb::spacing_change(rec.breakdown))}};
  if (c.format == "csv") {
    std::cout << lamb::render_csv({rec});
    return 0;
  }
  auto j = lamb::to_json(rec);
  j["error_estimate"] = mr.error_estimate;
  j["spacing_change"] = lamb::spacing_change(rec.breakdown);
  j["pole_frequency"] = c.pole_frequency;
  if (c.omega0_ev) {
    j["omega0_ev"] = *c.omega0_ev;
    j["shift_unit"] = lamb::ReducedUnits::shift_unit_note;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

std::string point_warnings(const RunConfig &c) {
  if (c.x > c.cutoff() / 10) return "x within a decade of the cutoff";
  return {};
}

int cmd_sweep(const RunConfig &base, const SweepConfig &sw) {
  sw.validate();
  base.dipole_weights().validate();
  RunConfig probe = base;
  probe.x = probe.beta = 0;
  probe.validate();

  const auto grid = sw.grid();
  std::vector<lamb::ShiftRecord> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      RunConfig c = base;
      if (sw.param == "x") c.x = grid[i];
      else if (sw.param == "beta") c.beta = grid[i];
      else c.lambda = grid[i];
      lamb::ShiftRecord rec{c.x, c.beta, c.cutoff(), c.dipole_weights(), {}, {}};
      std::string warning;
      try {
        c.validate();
        rec = evaluate(c);
        warning = point_warnings(c);
      } catch (const std::exception &e) {
        const double nan = std::nan("");
        rec.breakdown = {nan, nan, nan, nan, nan, nan};
        warning = e.what();
      }
      std::replace(warning.begin(), warning.end(), ',', ';');
      rec.extras = {{"warnings", warning}};
      rows[i] = std::move(rec);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                     unsigned(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto &t : pool) t.join();

  if (base.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &r : rows) j.push_back(lamb::to_json(r));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << lamb::render_csv(rows);
  }
  return 0;
}

int cmd_regimes(const RunConfig &c) {
  c.validate();
  const double lambda = c.cutoff();
  const auto w = c.dipole_weights();
  const auto full = lamb::breakdown(c.x, c.beta, lambda, w);

  struct Row {
    std::string channel, regime;
    bool applicable;
    double full, asymptotic;
    std::string warning;

    double deviation() const { return std::abs(full - asymptotic); }
    double relative() const {
      return deviation() == 0 ? 0.0 : deviation() / std::abs(full);
    }
  };
  std::vector<Row> rows;
  for (auto regime : {lamb::Regime::small_omega, lamb::Regime::large_omega}) {
    const std::string name(lamb::to_string(regime));
    auto guarded = [&](auto fn) {
      try {
        return fn();
      } catch (const std::exception &e) {
        lamb::AsymptoticEstimate<double> a;
        a.value = std::nan("");
        a.applicable = false;
        a.warning = e.what();
        return a;
      }
    };
    auto t = guarded([&] { return lamb::transverse_asymptotic(c.x, lambda, regime); });
    auto a = guarded([&] { return lamb::axial_asymptotic(c.x, c.beta, lambda, regime); });
    rows.push_back({"transverse", name, t.applicable, full.transverse_total,
                    w.transverse_sum() * t.value, t.warning});
    rows.push_back({"axial", name, a.applicable, full.axial_total, w.w_z * a.value,
                    a.warning});
  }

  if (c.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &r : rows)
      j.push_back({{"channel", r.channel},
                   {"regime", r.regime},
                   {"applicable", r.applicable},
                   {"full", r.full},
                   {"asymptotic", r.asymptotic},
                   {"abs_deviation", r.deviation()},
                   {"rel_deviation", r.relative()},
                   {"warning", r.warning}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "x,beta,lambda,channel,regime,applicable,full,asymptotic,"
               "abs_deviation,rel_deviation,warning\n";
  for (const auto &r : rows) {
    std::string warning = r.warning;
    std::replace(warning.begin(), warning.end(), ',', ';');
    std::cout << lamb::format_number(c.x) << ',' << lamb::format_number(c.beta)
              << ',' << lamb::format_number(lambda) << ',' << r.channel << ','
              << r.regime << ',' << (r.applicable ? "yes" : "no") << ','
              << lamb::format_number(r.full) << ','
              << lamb::format_number(r.asymptotic) << ','
              << lamb::format_number(r.deviation()) << ','
              << lamb::format_number(r.relative()) << ',' << warning
              << '\n';
  }
  return 0;
}

int cmd_ratio(const RunConfig &c) {
  c.validate();
  const auto r = lamb::rotational_ratio(c.x, c.cutoff(), c.dipole_weights());
  if (c.format == "json") {
    nlohmann::json j = {{"x", c.x},
                        {"lambda", c.cutoff()},
                        {"ratio_vs_total", r.ratio_vs_total},
                        {"ratio_vs_transverse", r.ratio_vs_transverse}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "x,lambda,ratio_vs_total,ratio_vs_transverse\n"
            << lamb::format_number(c.x) << ',' << lamb::format_number(c.cutoff())
            << ',' << lamb::format_number(r.ratio_vs_total) << ','
            << lamb::format_number(r.ratio_vs_transverse) << '\n';
  return 0;
}

int cmd_density(const RunConfig &c) {
  c.validate();
  nlohmann::json j = nlohmann::json::array();
  const double omega = lamb::kernel_omega(
      lamb::pole_frequency_from_string(c.pole_frequency), c.beta);
  for (const auto &d : lamb::circular_densities(c.x, c.beta)) {
    auto dj = lamb::to_json(d);
    dj["kernel_integral"] =
        lamb::to_json(lamb::density_kernel_integral(d, omega, c.cutoff()));
    j.push_back(dj);
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::vector<std::string> &perturb) {
  lamb::VerifyOptions opts;
  if (!perturb.empty()) {
    if (perturb.size() != 2)
      throw lamb::DomainError("--perturb takes a target and an amount");
    opts.perturb_target = perturb[0];
    opts.perturb_amount = lamb::parse_number(perturb[1]);
    static const std::vector<std::string> targets{"rot0", "rot2", "inertial",
                                                  "pipeline", "kinematics"};
    if (std::find(targets.begin(), targets.end(), opts.perturb_target) ==
        targets.end())
      throw lamb::DomainError("unknown perturb target '" + opts.perturb_target + "'");
  }
  const auto report = lamb::run_verification(opts);
  std::cout << report.to_json().dump(2) << "\n";
  for (const auto &c : report.checks)
    if (!c.passed)
      std::cerr << (c.gating ? "FAIL " : "note ") << c.name << ": measured "
                << lamb::format_number(c.measured) << " allowed "
                << lamb::format_number(c.allowed) << "\n";
  return report.passed() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lamb shift of a circularly moving atom in reduced units"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags win");

  RunConfig cfg;
  SweepConfig sw;
  std::vector<std::string> perturb;

  app.add_option("--x", cfg.x, "Omega/w0");
  app.add_option("--beta", cfg.beta, "R Omega / c");
  app.add_option("--lambda", cfg.lambda, "cutoff ratio Lambda/w0");
  app.add_option("--omega0-ev", cfg.omega0_ev, "transition energy in eV");
  app.add_option("--weights", cfg.weights, "dipole weights r,p,z")
      ->delimiter(',')
      ->expected(3);
  app.add_option("--method", cfg.method, "closed | pipeline | quadrature");
  app.add_option("--format", cfg.format, "csv | json");
  app.add_option("--pole-frequency", cfg.pole_frequency, "proper | lab");

  auto *shift = app.add_subcommand("shift", "evaluate one point");
  auto *sweep = app.add_subcommand("sweep", "evaluate a one-parameter grid");
  sweep->add_option("--param", sw.param, "x | beta | lambda");
  sweep->add_option("--from", sw.from);
  sweep->add_option("--to", sw.to);
  sweep->add_option("--points", sw.points);
  sweep->add_flag("--log", sw.log_spacing, "logarithmic spacing");
  auto *regimes = app.add_subcommand("regimes", "full values against asymptotics");
  auto *ratio = app.add_subcommand("ratio", "rotational to inertial ratio");
  auto *density = app.add_subcommand("density", "spectral densities and ledgers");
  auto *verify = app.add_subcommand("verify", "run the self-check suite");
  verify->add_option("--perturb", perturb, "target amount (testing hook)")
      ->expected(2);
  for (auto *sub : {shift, sweep, regimes, ratio, density, verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*shift) return cmd_shift(cfg);
    if (*sweep) return cmd_sweep(cfg, sw);
    if (*regimes) return cmd_regimes(cfg);
    if (*ratio) return cmd_ratio(cfg);
    if (*density) return cmd_density(cfg);
    if (*verify) return cmd_verify(perturb);
  } catch (const lamb::QuadratureError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::logic_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
