#ifndef COOPT_TRANSIT_HPP
#define COOPT_TRANSIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "coopt/common.hpp"
#include "coopt/network.hpp"

namespace coopt {

// Off-schedule periods are stored in local (rotated) order: the first entry
// is the period the bus comes off its route, the last the period before it
// returns. A block may wrap past midnight, so the stored global periods are
// consecutive modulo T.
struct TransitBus {
  std::string id;
  double battery_min = 0.0;       // MWh
  double battery_max = 0.0;       // MWh
  double initial_level = 0.0;     // MWh at the start of the off-schedule
  double charge_rate_max = 0.0;   // MW
  double discharge_rate_max = 0.0;// MW
  double efficiency = 1.0;        // (0, 1]
  double traverse_consumption = 0.0;  // MWh per relocation period
  std::vector<int> off_schedule;  // global 1-based periods, local order

  int first_period() const { return off_schedule.front(); }
  int last_period() const { return off_schedule.back(); }
  int horizon_length() const { return static_cast<int>(off_schedule.size()); }
};

struct StationMap {
  std::vector<int> stations;           // 1-based node ids; first entry is the depot
  std::vector<std::vector<int>> travel_steps;  // periods, 0 diagonal
  std::optional<std::vector<int>> capacity;    // per-station connection cap

  int depot() const { return stations.front(); }
  int station_count() const { return static_cast<int>(stations.size()); }
};

struct TransitFleet {
  std::vector<TransitBus> buses;
  StationMap station_map;
};

struct Finding {
  enum class Severity { error, warning };
  Severity severity;
  std::string code;
  std::string message;
};

// Discretizes a travel-time matrix in minutes to whole periods (ceiling,
// minimum one period off the diagonal).
std::vector<std::vector<int>> travel_steps_from_minutes(const Matrix& minutes,
                                                        double period_hours);

// Structural checks: recharge-window feasibility, station/network coupling,
// battery parameter sanity. Asymmetric travel matrices are only warned about.
std::vector<Finding> validate_fleet(const TransitFleet& fleet,
                                    const NetworkInstance& net);

bool has_errors(const std::vector<Finding>& findings);

// Builds the contiguous (possibly wrapping) off-schedule block from an
// inclusive [start, end] pair of 1-based periods.
std::vector<int> expand_off_schedule(int start, int end, int periods);

// Fleet JSON (see README for the schema).
TransitFleet load_fleet_json(const std::string& path, int periods,
                             double period_hours);
TransitFleet parse_fleet_json(const std::string& text, int periods,
                              double period_hours);

}  // namespace coopt

#endif
