#include "coopt/transit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace coopt {

std::vector<std::vector<int>> travel_steps_from_minutes(const Matrix& minutes,
                                                        double period_hours) {
  size_t n = minutes.size();
  std::vector<std::vector<int>> steps(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    if (minutes[i].size() != n)
      throw Error(errc::invalid_fleet, "travel matrix is not square");
    for (size_t j = 0; j < n; ++j) {
      if (minutes[i][j] < 0.0)
        throw Error(errc::negative_travel_time,
                    "negative travel time between stations " + std::to_string(i + 1) +
                        " and " + std::to_string(j + 1));
      if (i == j) continue;
      int s = static_cast<int>(std::ceil(minutes[i][j] / (60.0 * period_hours)));
      steps[i][j] = std::max(1, s);
    }
  }
  return steps;
}

std::vector<int> expand_off_schedule(int start, int end, int periods) {
  if (start < 1 || start > periods || end < 1 || end > periods)
    throw Error(errc::invalid_fleet, "off-schedule period outside 1.." +
                                         std::to_string(periods));
  std::vector<int> out;
  int t = start;
  out.push_back(t);
  while (t != end) {
    t = t % periods + 1;
    out.push_back(t);
    if (static_cast<int>(out.size()) > periods)
      throw Error(errc::invalid_fleet, "off-schedule block longer than the horizon");
  }
  return out;
}

std::vector<Finding> validate_fleet(const TransitFleet& fleet,
                                    const NetworkInstance& net) {
  std::vector<Finding> findings;
  auto err = [&](const std::string& code, const std::string& msg) {
    findings.push_back({Finding::Severity::error, code, msg});
  };
  auto warn = [&](const std::string& code, const std::string& msg) {
    findings.push_back({Finding::Severity::warning, code, msg});
  };

  const auto& sm = fleet.station_map;
  if (sm.stations.empty()) {
    err("no_stations", "station list is empty");
    return findings;
  }
  for (int s : sm.stations)
    if (s < 1 || s > net.node_count())
      err("unknown_station", "station node " + std::to_string(s) + " not in network");
  int ns = sm.station_count();
  if (static_cast<int>(sm.travel_steps.size()) != ns)
    err("travel_matrix_shape", "travel matrix does not match station count");
  else {
    for (int i = 0; i < ns; ++i) {
      if (static_cast<int>(sm.travel_steps[i].size()) != ns) {
        err("travel_matrix_shape", "travel matrix row " + std::to_string(i) + " not square");
        continue;
      }
      if (sm.travel_steps[i][i] != 0)
        err("travel_diagonal", "travel_steps diagonal must be zero");
      for (int j = 0; j < ns; ++j) {
        if (i != j && sm.travel_steps[i][j] < 1)
          err("travel_zero", "travel_steps must be at least 1 off the diagonal");
        if (j < i && i < static_cast<int>(sm.travel_steps.size()) &&
            sm.travel_steps[i][j] != sm.travel_steps[j][i])
          warn("travel_asymmetric",
               "asymmetric travel time between stations " + std::to_string(i + 1) +
                   " and " + std::to_string(j + 1));
      }
    }
  }

  std::set<std::string> ids;
  for (const auto& bus : fleet.buses) {
    if (!ids.insert(bus.id).second)
      err("duplicate_bus", "duplicate transit bus id '" + bus.id + "'");
    if (bus.off_schedule.empty()) {
      err("empty_off_schedule", "bus '" + bus.id + "' has no off-schedule periods");
      continue;
    }
    for (int t : bus.off_schedule)
      if (t < 1 || t > net.periods)
        err("off_schedule_range",
            "bus '" + bus.id + "' off-schedule period " + std::to_string(t) +
                " outside horizon");
    if (bus.efficiency <= 0.0 || bus.efficiency > 1.0)
      err("efficiency_range", "bus '" + bus.id + "' efficiency outside (0,1]");
    if (!(0.0 <= bus.battery_min && bus.battery_min <= bus.initial_level &&
          bus.initial_level <= bus.battery_max))
      err("battery_levels",
          "bus '" + bus.id + "' violates 0 <= min <= initial <= max");
    // Necessary condition for the full-battery terminal requirement: charging
    // at the maximum rate for the whole off-schedule must be able to lift the
    // battery from its initial level to the top.
    double uplift = bus.efficiency * bus.charge_rate_max * net.period_hours *
                    bus.horizon_length();
    if (bus.initial_level + uplift < bus.battery_max - 1e-12)
      err("unreachable_full_charge",
          "bus '" + bus.id + "' cannot reach full charge within its off-schedule (" +
              format_double(bus.initial_level) + " + " + format_double(uplift) +
              " < " + format_double(bus.battery_max) + " MWh)");
  }
  return findings;
}

bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Finding::Severity::error;
  });
}

TransitFleet parse_fleet_json(const std::string& text, int periods,
                              double period_hours) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(errc::invalid_fleet, std::string("fleet JSON: ") + e.what());
  }
  TransitFleet fleet;
  try {
    for (const auto& s : j.at("stations")) fleet.station_map.stations.push_back(s.get<int>());
    if (j.contains("travel_minutes")) {
      Matrix minutes = j.at("travel_minutes").get<Matrix>();
      fleet.station_map.travel_steps = travel_steps_from_minutes(minutes, period_hours);
    } else {
      fleet.station_map.travel_steps = j.at("travel_steps").get<std::vector<std::vector<int>>>();
    }
    if (j.contains("capacities"))
      fleet.station_map.capacity = j.at("capacities").get<std::vector<int>>();
    for (const auto& jb : j.at("buses")) {
      TransitBus bus;
      bus.id = jb.at("id").get<std::string>();
      bus.battery_min = jb.at("battery_min").get<double>();
      bus.battery_max = jb.at("battery_max").get<double>();
      bus.initial_level = jb.at("initial_level").get<double>();
      bus.charge_rate_max = jb.at("charge_rate_max").get<double>();
      bus.discharge_rate_max = jb.at("discharge_rate_max").get<double>();
      bus.efficiency = jb.at("efficiency").get<double>();
      bus.traverse_consumption = jb.at("traverse_consumption").get<double>();
      auto window = jb.at("off_schedule");
      if (!window.is_array() || window.size() != 2)
        throw Error(errc::invalid_fleet,
                    "off_schedule must be a [start, end] period pair");
      bus.off_schedule =
          expand_off_schedule(window[0].get<int>(), window[1].get<int>(), periods);
      fleet.buses.push_back(std::move(bus));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::invalid_fleet, std::string("fleet JSON: ") + e.what());
  }
  if (fleet.station_map.capacity &&
      fleet.station_map.capacity->size() != fleet.station_map.stations.size())
    throw Error(errc::invalid_fleet, "capacities length != station count");
  return fleet;
}

TransitFleet load_fleet_json(const std::string& path, int periods,
                             double period_hours) {
  return parse_fleet_json(read_text_file(path), periods, period_hours);
}

}  // namespace coopt
