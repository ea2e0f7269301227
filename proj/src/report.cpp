#include "lamb/report.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace lamb {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_number failed");
  return std::string(buf, end);
}

double parse_number(std::string_view s) {
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw DomainError("not a number: '" + std::string(s) + "'");
  return v;
}

std::string csv_header(const std::vector<std::string> &extra_columns) {
  std::string h;
  for (std::size_t i = 0; i < kCsvColumnCount; ++i) {
    if (i) h += ',';
    h += kCsvColumns[i];
  }
  for (const auto &e : extra_columns) h += "," + e;
  return h + "\n";
}

std::string csv_row(const ShiftRecord &r) {
  const double fields[] = {r.x,
                           r.beta,
                           r.lambda,
                           r.weights.w_rho,
                           r.weights.w_phi,
                           r.weights.w_z,
                           r.breakdown.inertial,
                           r.breakdown.rot0,
                           r.breakdown.rot2,
                           r.breakdown.axial_total,
                           r.breakdown.transverse_total,
                           r.breakdown.total};
  std::string line;
  for (std::size_t i = 0; i < kCsvColumnCount; ++i) {
    if (i) line += ',';
    line += format_number(fields[i]);
  }
  for (const auto &[name, value] : r.extras) {
    if (value.find_first_of(",\n") != std::string::npos)
      throw DomainError("CSV extra column '" + name + "' contains a separator");
    line += "," + value;
  }
  return line + "\n";
}

std::string render_csv(const std::vector<ShiftRecord> &records) {
  std::vector<std::string> extras;
  if (!records.empty())
    for (const auto &e : records.front().extras) extras.push_back(e.first);
  std::string out = csv_header(extras);
  for (const auto &r : records) out += csv_row(r);
  return out;
}

namespace {
std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}
}  // namespace

std::vector<ShiftRecord> parse_csv(std::string_view text) {
  std::vector<ShiftRecord> out;
  std::vector<std::string> header;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    start = nl + 1;
    if (line.empty()) continue;
    auto cells = split(line);
    if (header.empty()) {
      header = cells;
      if (header.size() < kCsvColumnCount)
        throw DomainError("CSV header is missing breakdown columns");
      for (std::size_t i = 0; i < kCsvColumnCount; ++i)
        if (header[i] != kCsvColumns[i])
          throw DomainError("unexpected CSV column '" + header[i] + "'");
      continue;
    }
    if (cells.size() != header.size())
      throw DomainError("CSV row width does not match header");
    double v[kCsvColumnCount];
    for (std::size_t i = 0; i < kCsvColumnCount; ++i) v[i] = parse_number(cells[i]);
    ShiftRecord r;
    r.x = v[0];
    r.beta = v[1];
    r.lambda = v[2];
    r.weights = {v[3], v[4], v[5]};
    r.breakdown = {v[6], v[7], v[8], v[9], v[10], v[11]};
    for (std::size_t i = kCsvColumnCount; i < cells.size(); ++i)
      r.extras.emplace_back(header[i], cells[i]);
    out.push_back(std::move(r));
  }
  return out;
}

int spacing_change(const ShiftBreakdown<double> &b) {
  const double correction = b.rot0 + b.rot2;
  return correction < 0 ? 1 : (correction > 0 ? -1 : 0);
}

nlohmann::json to_json(const SpectralDensity<double> &d) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto &t : d.terms)
    terms.push_back({{"coeff", t.coeff}, {"shift", t.shift}, {"power", t.power}});
  return {{"polarization", std::string(to_string(d.polarization))},
          {"order_beta", d.order_beta},
          {"terms", terms}};
}

SpectralDensity<double> density_from_json(const nlohmann::json &j) {
  SpectralDensity<double> d;
  d.polarization = polarization_from_string(j.at("polarization").get<std::string>());
  d.order_beta = j.value("order_beta", 0);
  for (const auto &t : j.at("terms"))
    d.terms.push_back({t.at("coeff").get<double>(), t.at("shift").get<double>(),
                       t.at("power").get<int>()});
  return d;
}

nlohmann::json to_json(const RenormalizedIntegral<double> &r) {
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto &p : r.dropped_powers)
    dropped.push_back({{"power", p.power}, {"coeff", p.coeff}});
  nlohmann::json logs = nlohmann::json::array();
  for (const auto &l : r.kept_log_terms)
    logs.push_back({{"argument", l.argument}, {"coeff", l.coeff}, {"log", l.log_value}});
  return {{"value", r.value},
          {"kept_constant", r.kept_constant},
          {"dropped_powers", dropped},
          {"kept_log_terms", logs},
          {"removable_limit", r.removable_limit}};
}

nlohmann::json to_json(const ShiftBreakdown<double> &b) {
  return {{"inertial", b.inertial},
          {"rot0", b.rot0},
          {"rot2", b.rot2},
          {"axial_total", b.axial_total},
          {"transverse_total", b.transverse_total},
          {"total", b.total}};
}

nlohmann::json to_json(const ShiftRecord &r) {
  nlohmann::json j = {{"x", r.x},
                      {"beta", r.beta},
                      {"lambda", r.lambda},
                      {"weights",
                       {{"w_rho", r.weights.w_rho},
                        {"w_phi", r.weights.w_phi},
                        {"w_z", r.weights.w_z}}},
                      {"breakdown", to_json(r.breakdown)}};
  for (const auto &[k, v] : r.extras) j[k] = v;
  return j;
}

}  // namespace lamb
