#ifndef COOPT_MODEL_IR_HPP
#define COOPT_MODEL_IR_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "coopt/common.hpp"

namespace coopt {

enum class VarKind { continuous, binary };
enum class Rel { le, eq, ge };
enum class SolveStatus { optimal, infeasible, unbounded, limit };

const char* status_name(SolveStatus s);

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = 0.0;
  VarKind kind = VarKind::continuous;
};

struct LinTerm {
  int var = 0;
  double coef = 0.0;
};

struct ConstraintRow {
  std::string name;
  std::vector<LinTerm> terms;
  Rel rel = Rel::eq;
  double rhs = 0.0;
  bool dual_tracked = false;
};

// Solver-agnostic model: minimize c'x + x'diag(q)x + const subject to linear
// rows and bounds. Variables and constraints are addressable by name; the
// names double as the symbol table tying model columns back to the domain
// quantities they represent (e.g. pg_i3_t7, z_i2_b1_t21).
struct ModelIR {
  std::vector<Variable> vars;
  std::vector<ConstraintRow> cons;
  std::vector<double> obj_linear;
  std::vector<double> obj_quad;  // diagonal, nonnegative on continuous vars
  double obj_constant = 0.0;
  std::unordered_map<std::string, int> var_id;
  std::unordered_map<std::string, int> con_id;

  int add_var(const std::string& name, double lb, double ub,
              VarKind kind = VarKind::continuous);
  int add_con(const std::string& name, std::vector<LinTerm> terms, Rel rel, double rhs,
              bool dual_tracked = false);
  void add_obj(int var, double lin, double quad = 0.0);
  int var_index(const std::string& name) const;
  bool has_var(const std::string& name) const { return var_id.count(name) > 0; }
  int binary_count() const;

  // Structural checks: term indices valid, quadratic coefficients nonnegative
  // and only on continuous variables. Throws NonConvexModel / InvalidNetwork.
  void validate() const;
};

struct SolveOptions {
  double mip_gap = 1e-6;          // relative
  double feas_tol = 1e-7;
  double dual_tol = 1e-6;
  double time_limit_seconds = 900.0;
  int threads = 1;
  int pwl_segments = 16;
  bool force_linearize = false;   // route quadratics through piecewise_linearize
  int max_nodes = 200000;
  bool verbose = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::limit;
  double objective = 0.0;
  double best_bound = 0.0;
  std::unordered_map<std::string, double> primal;
  std::unordered_map<std::string, double> duals;  // tracked rows only
  double solve_seconds = 0.0;
  int nodes = 0;

  double value(const std::string& name) const;
  double value_or(const std::string& name, double fallback) const;
  double dual(const std::string& name) const;
};

// Solves the model with the built-in backend (interior-point relaxations
// inside branch and bound). Duals are populated only when the solved model
// has no free binary variables.
SolveResult solve(const ModelIR& model, const SolveOptions& options = {});

// Replaces every quadratic objective term q*x^2, x in [L,U], by K chord
// segments on a uniform grid. The objective error is bounded by
// q*(U-L)^2/(4K^2) per term; chords overestimate, so the linearized optimum
// is never below the native one.
ModelIR piecewise_linearize(const ModelIR& model, int segments);

// Pins every binary to its incumbent value and re-solves the continuous
// model, returning duals for the tracked rows.
SolveResult fix_integers_and_resolve(const ModelIR& model, const SolveResult& incumbent,
                                     const SolveOptions& options = {});

// CPLEX-style LP file text, for external debugging.
std::string export_lp(const ModelIR& model);

// Canonical symbol names shared by builders, result readers and tests.
// Node/bus/period/scenario arguments are 1-based.
namespace sym {
std::string pg(int bus, int t);
std::string pr(int unit, int t);
std::string prw(int unit, int t, int w);
std::string shed(int bus, int t, int w);
std::string reserve_up(int bus, int t);
std::string reserve_dn(int bus, int t);
std::string ramp_up(int bus, int t, int w);
std::string ramp_dn(int bus, int t, int w);
std::string theta(int bus, int t);
std::string theta_w(int bus, int t, int w);
std::string flow(int line, int t);
std::string flow_w(int line, int t, int w);
std::string charge(int node, int bus, int t);
std::string discharge(int node, int bus, int t);
std::string charge2(int node, int bus, int t, int w);
std::string discharge2(int node, int bus, int t, int w);
std::string level(int bus, int t);
std::string level_w(int bus, int t, int w);
std::string assign(int node, int bus, int t);
std::string traverse(int bus, int t);
std::string nodal(int bus, int t);
std::string nodal2(int bus, int t, int w);
}  // namespace sym

}  // namespace coopt

#endif
