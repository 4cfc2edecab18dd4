#include "coopt/scenarios.hpp"

#include <algorithm>

namespace coopt {

double ScenarioSet::total_available() const {
  double sum = 0.0;
  for (const auto& scen : availability)
    for (const auto& unit : scen)
      for (double v : unit) sum += v;
  return sum;
}

ScenarioSet generate_scenarios(const Matrix& base_profile, int n, double sigma,
                               double capacity, std::uint64_t seed) {
  if (n < 1) throw Error(errc::bad_config, "scenario count must be at least 1");
  if (sigma < 0.0) throw Error(errc::bad_config, "scenario sigma must be nonnegative");
  ScenarioSet out;
  out.seed = seed;
  out.base_profile = base_profile;
  out.probabilities.assign(n, 1.0 / n);
  Rng rng(seed);
  out.availability.reserve(n);
  for (int w = 0; w < n; ++w) {
    Matrix scen = base_profile;
    for (auto& unit : scen)
      for (double& v : unit)
        v = std::clamp(v + sigma * rng.normal(), 0.0, capacity);
    out.availability.push_back(std::move(scen));
  }
  return out;
}

void export_scenarios_csv(const ScenarioSet& s, const std::string& path) {
  Matrix rows;
  for (int w = 0; w < s.scenario_count(); ++w)
    for (int u = 0; u < s.unit_count(); ++u)
      for (int t = 0; t < s.period_count(); ++t)
        rows.push_back({double(w + 1), double(u + 1), double(t + 1),
                        s.availability[w][u][t]});
  write_csv(path, {"scenario", "unit", "period", "mw"}, rows);
}

}  // namespace coopt
