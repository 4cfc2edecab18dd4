#include "coopt/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace coopt {

const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_matrix: return "MalformedMatrix";
    case errc::missing_table: return "MissingTable";
    case errc::unsupported_cost_model: return "UnsupportedCostModel";
    case errc::duplicate_bus_id: return "DuplicateBusId";
    case errc::profile_length_mismatch: return "ProfileLengthMismatch";
    case errc::non_positive_scale: return "NonPositiveScale";
    case errc::unknown_bus: return "UnknownBus";
    case errc::negative_travel_time: return "NegativeTravelTime";
    case errc::invalid_network: return "InvalidNetwork";
    case errc::invalid_fleet: return "InvalidFleet";
    case errc::non_convex_model: return "NonConvexModel";
    case errc::backend_unavailable: return "BackendUnavailable";
    case errc::unbounded_quadratic_variable: return "UnboundedQuadraticVariable";
    case errc::incumbent_infeasible_after_fix: return "IncumbentInfeasibleAfterFix";
    case errc::infeasible_schedule_detected: return "InfeasibleScheduleDetected";
    case errc::price_coverage_error: return "PriceCoverageError";
    case errc::missing_duals: return "MissingDuals";
    case errc::zero_available_wind: return "ZeroAvailableWind";
    case errc::all_anticipations_infeasible: return "AllAnticipationsInfeasible";
    case errc::bad_config: return "BadConfig";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

std::uint64_t Rng::next_u64() {
  // splitmix64; small, fast, and fully specified.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double Rng::unit_mean_lognormal(double sigma) {
  return std::exp(sigma * normal() - 0.5 * sigma * sigma);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::io_error, "cannot write " + path);
  out << content;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Matrix& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace coopt
