#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lamb {

/// One named self-check: measured deviation against its allowance.
struct Check {
  std::string name;
  double value{0};
  double measured{0};
  double allowed{0};
  bool passed{false};
  /// Non-gating checks are reported but do not affect the exit status.
  bool gating{true};
  std::string note;
};

struct GridPoint {
  double x, beta, lambda;
};

/// x in {0, 0.1, 0.5, 1, 2, 10}, beta in {0, 1e-3, 1e-2}, lambda in {1e4, 1e6};
/// x = 0 only with beta = 0.
std::vector<GridPoint> standard_grid();

struct VerifyOptions {
  /// One of rot0, rot2, inertial, pipeline, kinematics; empty for none.
  /// The amount is added to every value of that kind.
  std::string perturb_target;
  double perturb_amount{0};
};

struct VerifyReport {
  std::vector<Check> checks;

  bool passed() const;
  std::size_t gating_count() const;
  nlohmann::json to_json() const;
};

/// Oracle equivalence grid, bracket regression, limits, asymptotics, ratios
/// and the kinematics identities.
VerifyReport run_verification(const VerifyOptions &opts = {});

}  // namespace lamb
