#ifndef COOPT_NETWORK_HPP
#define COOPT_NETWORK_HPP

#include <limits>
#include <numbers>
#include <vector>

#include "coopt/common.hpp"
#include "coopt/matpower.hpp"

namespace coopt {

// Node indices are 1-based after internal reindexing; node 1 is the angle
// reference bus.
struct Bus {
  int id = 0;
  double base_demand = 0.0;  // MW
};

struct Branch {
  int from = 0;
  int to = 0;
  double reactance = 0.0;   // p.u.
  double flow_limit = 0.0;  // MW; infinity when the case gives no rating
};

struct Generator {
  int bus = 0;
  double p_max = 0.0;      // MW
  double cost_lin = 0.0;   // $/MWh
  double cost_quad = 0.0;  // $/MWh^2
  double ramp_limit = 0.0; // MW between consecutive periods
  double second_stage_ramp_up_cap = 0.0;   // MW
  double second_stage_ramp_down_cap = 0.0; // MW
  double ramp_up_cost = 0.0;   // $/MWh
  double ramp_down_cost = 0.0; // $/MWh
};

struct RenewableUnit {
  int bus = 0;
  double p_max_committed = 0.0;  // MW
  double cost_lin = 0.0;         // $/MWh
};

struct NetworkInstance {
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  std::vector<Generator> generators;
  std::vector<RenewableUnit> renewables;
  Matrix demand;               // [node][period] MW
  int periods = 0;
  double period_hours = 1.0;   // delta t
  double angle_limit = std::numbers::pi / 2;
  Matrix shed_cost;            // [node][period] $/MWh
  double base_mva = 100.0;
  std::vector<int> original_bus_ids;  // case-file numbering, for reports

  int node_count() const { return static_cast<int>(buses.size()); }
};

struct NetworkDefaults {
  double angle_limit = std::numbers::pi / 2;
  double ramp_fraction = 0.2;           // ramp_limit = fraction * p_max
  double shed_cost_multiplier = 10.0;   // times the max linear generation cost
  double line_limit_scale = 1.0;        // applied to RATE_A
  double second_stage_ramp_cap_fraction = 1.0;  // of p_max, both directions
  double ramp_up_cost_multiplier = 1.2;   // of cost_lin
  double ramp_down_cost_multiplier = 0.5; // of cost_lin
  double period_hours = 1.0;
};

// Expands the single-snapshot case into a multi-period instance:
// demand[i][t] = PD_i * demand_scale * profile[t]. The profile length fixes
// the horizon T (at least 2 periods).
NetworkInstance build_network(const RawCase& raw, const std::vector<double>& profile,
                              double demand_scale,
                              const NetworkDefaults& defaults = {});

// Appends a renewable unit at `bus` (1-based internal index). When cost_lin
// is negative the unit is priced at the cheapest conventional linear cost.
NetworkInstance attach_renewable(const NetworkInstance& net, int bus, double p_max,
                                 double cost_lin = -1.0);

// Copy of `net` with generator ramping costs set to gamma * cost_lin (up)
// and down_mult * cost_lin (down).
NetworkInstance with_ramp_costs(const NetworkInstance& net, double gamma,
                                double down_mult);

// `period,multiplier` CSV with one row per period.
std::vector<double> load_demand_profile(const std::string& path);
// `period,mw` CSV with one row per period.
std::vector<double> load_wind_profile(const std::string& path);

}  // namespace coopt

#endif
