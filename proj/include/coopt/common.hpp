#ifndef COOPT_COMMON_HPP
#define COOPT_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coopt {

using Matrix = std::vector<std::vector<double>>;

// Typed error codes; every failure surfaced by the library carries one.
enum class errc {
  // parser
  malformed_matrix,
  missing_table,
  unsupported_cost_model,
  duplicate_bus_id,
  // network / transit
  profile_length_mismatch,
  non_positive_scale,
  unknown_bus,
  negative_travel_time,
  invalid_network,
  invalid_fleet,
  // model / solver
  non_convex_model,
  backend_unavailable,
  unbounded_quadratic_variable,
  incumbent_infeasible_after_fix,
  infeasible_schedule_detected,
  price_coverage_error,
  missing_duals,
  zero_available_wind,
  all_anticipations_infeasible,
  // io / config
  bad_config,
  io_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Deterministic RNG used everywhere randomness is needed. Gaussian draws go
// through an explicit Box-Muller transform so that a given seed produces the
// same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  // uniform in [0, 1)
  double uniform();
  // standard normal
  double normal();
  // lognormal with unit mean: exp(sigma*Z - sigma^2/2)
  double unit_mean_lognormal(double sigma);

 private:
  std::uint64_t next_u64();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Tiny CSV helpers shared by the profile/scenario/report formats. Fields are
// comma-separated, no quoting (none of our formats need it).
std::vector<std::vector<std::string>> read_csv(const std::string& path);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Matrix& rows);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest text representation of a double that round-trips exactly.
std::string format_double(double v);

}  // namespace coopt

#endif
