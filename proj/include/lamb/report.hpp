#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lamb/pvengine.hpp"
#include "lamb/shifts.hpp"
#include "lamb/spectral.hpp"
#include "lamb/weights.hpp"

namespace lamb {

/// 17 significant digits, "." radix, shortest general notation.
std::string format_number(double v);
double parse_number(std::string_view s);

/// Fixed leading CSV columns of a breakdown row.
inline constexpr std::string_view kCsvColumns[] = {
    "x",        "beta", "lambda",      "w_rho",      "w_phi",
    "w_z",      "inertial", "rot0",    "rot2",       "axial_total",
    "transverse_total", "total"};
inline constexpr std::size_t kCsvColumnCount = std::size(kCsvColumns);

/// One evaluated point plus free-form trailing columns (method, warnings...).
struct ShiftRecord {
  double x{0}, beta{0}, lambda{0};
  DipoleWeights<double> weights;
  ShiftBreakdown<double> breakdown;
  std::vector<std::pair<std::string, std::string>> extras;
};

std::string csv_header(const std::vector<std::string> &extra_columns = {});
std::string csv_row(const ShiftRecord &r);
std::string render_csv(const std::vector<ShiftRecord> &records);
std::vector<ShiftRecord> parse_csv(std::string_view text);

/// Sign of the level-spacing change, -sign(delta correction).
int spacing_change(const ShiftBreakdown<double> &b);

nlohmann::json to_json(const SpectralDensity<double> &d);
SpectralDensity<double> density_from_json(const nlohmann::json &j);
nlohmann::json to_json(const RenormalizedIntegral<double> &r);
nlohmann::json to_json(const ShiftBreakdown<double> &b);
nlohmann::json to_json(const ShiftRecord &r);

}  // namespace lamb
