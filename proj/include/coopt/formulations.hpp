#ifndef COOPT_FORMULATIONS_HPP
#define COOPT_FORMULATIONS_HPP

#include <map>
#include <string>

#include "coopt/model_ir.hpp"
#include "coopt/network.hpp"
#include "coopt/scenarios.hpp"
#include "coopt/transit.hpp"

namespace coopt {

enum class PriceMode { peak, flat_first, flat_second, flat_both };

const char* price_mode_name(PriceMode m);

// Charging/discharging prices. First stage is [node][period]; the optional
// second stage is [scenario][node][period]. Flat modes replace entries by the
// mean of the corresponding peak prices along the node and period axes.
struct PriceSet {
  Matrix first_stage;
  std::vector<Matrix> second_stage;
  PriceMode mode = PriceMode::peak;

  bool has_second_stage() const { return !second_stage.empty(); }
};

PriceSet uniform_prices(int nodes, int periods, double value);
PriceSet flatten(const PriceSet& prices, PriceMode mode);

struct CoOptConfig {
  double alpha = 0.5;              // weight on the transit term
  double gamma = 1.2;              // ramp-up cost multiplier
  double ramp_down_mult = 0.5;     // ramp-down cost multiplier
  bool station_capacity_enforced = false;
};

enum class FormulationKind {
  deterministic,
  mpopf,
  transit_only,
  ramping_2ssp,
  charging_2ssp,
  pricing_mpopf,
};

// Joint day-ahead co-optimization of dispatch, charging/discharging and
// relocation (mixed-integer, convex quadratic generation cost).
ModelIR build_deterministic(const NetworkInstance& net, const TransitFleet& fleet,
                            const PriceSet& prices, const CoOptConfig& cfg);

// Dispatch-only multi-period OPF with fixed extra nodal demand (may be
// negative where the fleet injects). Nodal rows are dual-tracked.
ModelIR build_mpopf(const NetworkInstance& net, const Matrix& extra_demand);

// Fleet-only scheduling against exogenous prices.
ModelIR build_transit_only(const TransitFleet& fleet, const PriceSet& prices,
                           int periods, double period_hours, const CoOptConfig& cfg);

// Two-stage stochastic program whose recourse is generator ramping.
ModelIR build_ramping_2ssp(const NetworkInstance& net, const TransitFleet& fleet,
                           const ScenarioSet& scenarios, const PriceSet& prices,
                           const CoOptConfig& cfg);

// Two-stage stochastic program whose recourse is extra fleet
// charging/discharging; vehicle locations stay first-stage.
ModelIR build_charging_2ssp(const NetworkInstance& net, const TransitFleet& fleet,
                            const ScenarioSet& scenarios, const PriceSet& prices,
                            const CoOptConfig& cfg);

// Transit-free two-stage MPOPF used to derive charging prices from the duals
// of its first- and second-stage nodal balance rows.
ModelIR build_pricing_mpopf(const NetworkInstance& net, const ScenarioSet& scenarios,
                            const CoOptConfig& cfg);

// Reads locational prices out of a solved pricing model. Second-stage duals
// are divided by the scenario probability so both stages are in $/MWh;
// pass deflate=false for raw extensive-form duals.
PriceSet extract_prices(const SolveResult& result, int nodes, int periods,
                        const ScenarioSet& scenarios, bool deflate = true);

// Duals of the (first-stage) nodal balance rows as a [node][period] matrix.
Matrix lmp_matrix(const SolveResult& result, int nodes, int periods);

// Name of the generation variable for generator index g (0-based) at 1-based
// period t; disambiguates several generators on one bus.
std::string gen_symbol(const NetworkInstance& net, int g, int t);

// Objective split by term family, recomputed from primal values.
struct ObjectiveBreakdown {
  double generation = 0.0;        // linear + quadratic conventional cost
  double renewable_expected = 0.0;
  double shed_expected = 0.0;
  double ramp_expected = 0.0;
  double charge_first = 0.0;      // sum prices * (pc - pdc)
  double charge_second = 0.0;     // expectation over scenarios
  double total = 0.0;             // objective as weighted by the formulation

  std::map<std::string, double> as_map() const;
};

ObjectiveBreakdown decompose_objective(FormulationKind kind, const NetworkInstance& net,
                                       const TransitFleet* fleet,
                                       const ScenarioSet* scenarios,
                                       const PriceSet& prices, const CoOptConfig& cfg,
                                       const SolveResult& result);

}  // namespace coopt

#endif
