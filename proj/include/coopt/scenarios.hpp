#ifndef COOPT_SCENARIOS_HPP
#define COOPT_SCENARIOS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "coopt/common.hpp"

namespace coopt {

// Equiprobable renewable-availability scenarios.
struct ScenarioSet {
  std::vector<Matrix> availability;  // [scenario][unit][period] MW
  std::vector<double> probabilities;
  std::uint64_t seed = 0;
  Matrix base_profile;  // [unit][period]

  int scenario_count() const { return static_cast<int>(availability.size()); }
  int unit_count() const {
    return availability.empty() ? 0 : static_cast<int>(availability.front().size());
  }
  int period_count() const {
    return unit_count() == 0 ? 0
                             : static_cast<int>(availability.front().front().size());
  }
  double total_available() const;
};

// Per-period i.i.d. Gaussian noise around the base profile, clamped to
// [0, capacity]; probabilities are uniform 1/n.
ScenarioSet generate_scenarios(const Matrix& base_profile, int n, double sigma,
                               double capacity, std::uint64_t seed);

void export_scenarios_csv(const ScenarioSet& s, const std::string& path);

}  // namespace coopt

#endif
