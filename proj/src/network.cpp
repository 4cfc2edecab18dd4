#include "coopt/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace coopt {

NetworkInstance build_network(const RawCase& raw, const std::vector<double>& profile,
                              double demand_scale, const NetworkDefaults& defaults) {
  if (profile.size() < 2)
    throw Error(errc::profile_length_mismatch,
                "demand profile needs at least 2 periods, got " +
                    std::to_string(profile.size()));
  for (double v : profile)
    if (v < 0.0)
      throw Error(errc::profile_length_mismatch, "demand profile has a negative entry");
  if (demand_scale <= 0.0)
    throw Error(errc::non_positive_scale,
                "demand scale must be positive, got " + format_double(demand_scale));

  NetworkInstance net;
  net.base_mva = raw.base_mva;
  net.periods = static_cast<int>(profile.size());
  net.period_hours = defaults.period_hours;
  net.angle_limit = defaults.angle_limit;

  // Reindex buses to 1..N in file order; bus 1 becomes the angle reference.
  std::map<long long, int> index_of;
  for (const auto& row : raw.bus_rows) {
    long long ext = llround(row[mpc::BUS_I]);
    int id = static_cast<int>(net.buses.size()) + 1;
    index_of[ext] = id;
    net.buses.push_back({id, row[mpc::BUS_PD]});
    net.original_bus_ids.push_back(static_cast<int>(ext));
  }

  for (const auto& row : raw.branch_rows) {
    Branch br;
    br.from = index_of.at(llround(row[mpc::BR_FROM]));
    br.to = index_of.at(llround(row[mpc::BR_TO]));
    br.reactance = row[mpc::BR_X];
    if (br.from == br.to)
      throw Error(errc::invalid_network, "branch with identical endpoints");
    if (br.reactance <= 0.0)
      throw Error(errc::invalid_network, "branch reactance must be positive");
    double rate = row[mpc::BR_RATE_A];
    br.flow_limit = rate > 0.0 ? rate * defaults.line_limit_scale
                               : std::numeric_limits<double>::infinity();
    net.branches.push_back(br);
  }

  for (size_t g = 0; g < raw.gen_rows.size(); ++g) {
    const auto& row = raw.gen_rows[g];
    const auto& cost = raw.gencost_rows[g];
    Generator gen;
    gen.bus = index_of.at(llround(row[mpc::GEN_BUS]));
    gen.p_max = std::max(0.0, row[mpc::GEN_PMAX]);
    int ncost = static_cast<int>(llround(cost[mpc::COST_NCOST]));
    // polynomial coefficients are stored highest degree first
    if (ncost == 3) {
      gen.cost_quad = cost[mpc::COST_COEF0];
      gen.cost_lin = cost[mpc::COST_COEF0 + 1];
    } else if (ncost == 2) {
      gen.cost_lin = cost[mpc::COST_COEF0];
    }
    if (gen.cost_quad < 0.0)
      throw Error(errc::invalid_network, "negative quadratic generation cost");
    gen.ramp_limit = defaults.ramp_fraction * gen.p_max;
    gen.second_stage_ramp_up_cap = defaults.second_stage_ramp_cap_fraction * gen.p_max;
    gen.second_stage_ramp_down_cap = defaults.second_stage_ramp_cap_fraction * gen.p_max;
    gen.ramp_up_cost = defaults.ramp_up_cost_multiplier * gen.cost_lin;
    gen.ramp_down_cost = defaults.ramp_down_cost_multiplier * gen.cost_lin;
    net.generators.push_back(gen);
  }

  double max_lin = 0.0;
  for (const auto& g : net.generators) max_lin = std::max(max_lin, g.cost_lin);
  double shed = defaults.shed_cost_multiplier * max_lin;

  int n = net.node_count();
  net.demand.assign(n, std::vector<double>(net.periods, 0.0));
  net.shed_cost.assign(n, std::vector<double>(net.periods, shed));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < net.periods; ++t)
      net.demand[i][t] = net.buses[i].base_demand * demand_scale * profile[t];

  return net;
}

NetworkInstance attach_renewable(const NetworkInstance& net, int bus, double p_max,
                                 double cost_lin) {
  if (bus < 1 || bus > net.node_count())
    throw Error(errc::unknown_bus, "no bus " + std::to_string(bus) + " in network");
  NetworkInstance out = net;
  RenewableUnit unit;
  unit.bus = bus;
  unit.p_max_committed = p_max;
  if (cost_lin >= 0.0) {
    unit.cost_lin = cost_lin;
  } else {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& g : net.generators) m = std::min(m, g.cost_lin);
    unit.cost_lin = std::isfinite(m) ? m : 0.0;
  }
  out.renewables.push_back(unit);
  return out;
}

NetworkInstance with_ramp_costs(const NetworkInstance& net, double gamma,
                                double down_mult) {
  NetworkInstance out = net;
  for (auto& g : out.generators) {
    g.ramp_up_cost = gamma * g.cost_lin;
    g.ramp_down_cost = down_mult * g.cost_lin;
  }
  return out;
}

namespace {
std::vector<double> load_two_column(const std::string& path, const char* what) {
  auto rows = read_csv(path);
  std::vector<double> out;
  for (const auto& r : rows) {
    if (r.size() < 2) throw Error(errc::bad_config, std::string(what) + ": short row in " + path);
    try {
      size_t pos = 0;
      double v = std::stod(r[1], &pos);
      out.push_back(v);
    } catch (const std::exception&) {
      if (out.empty()) continue;  // header line
      throw Error(errc::bad_config, std::string(what) + ": bad value in " + path);
    }
  }
  if (out.empty()) throw Error(errc::bad_config, std::string(what) + ": no rows in " + path);
  return out;
}
}  // namespace

std::vector<double> load_demand_profile(const std::string& path) {
  return load_two_column(path, "demand profile");
}

std::vector<double> load_wind_profile(const std::string& path) {
  return load_two_column(path, "wind profile");
}

}  // namespace coopt
