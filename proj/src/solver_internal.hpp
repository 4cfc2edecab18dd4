#ifndef COOPT_SOLVER_INTERNAL_HPP
#define COOPT_SOLVER_INTERNAL_HPP

#include <Eigen/Sparse>
#include <limits>
#include <unordered_map>
#include <vector>

#include "coopt/model_ir.hpp"

namespace coopt::solver {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Equality standard form: min 0.5 x'Qx + c'x + c0 s.t. Ax = b, lb <= x <= ub.
// Inequality rows carry a signed slack column; fixed variables are
// substituted out before the matrix is built.
struct StdProblem {
  Eigen::SparseMatrix<double> A;  // m x n
  Eigen::VectorXd b, c, q, lb, ub;
  double c0 = 0.0;
  std::vector<int> col_to_var;    // std column -> IR variable id, -1 for slacks
  std::vector<int> neg_col_of_var;  // second column of a split free variable
  std::vector<int> row_to_con;    // std row -> IR constraint id
  std::vector<double> fixed_value;  // per IR variable, NaN when not fixed
  bool trivially_infeasible = false;
  std::string infeasible_reason;
};

// Bounds at or beyond this magnitude are treated as absent.
inline constexpr double kBoundInf = 1e20;

// Builds the standard form with optional per-variable bound overrides
// (used by branch and bound to pin binaries).
StdProblem make_standard_form(const ModelIR& model,
                              const std::unordered_map<int, double>& fixes,
                              const std::vector<double>* objective_override = nullptr);

enum class IpmStatus { optimal, infeasible, unbounded, limit };

struct IpmResult {
  IpmStatus status = IpmStatus::limit;
  Eigen::VectorXd x;  // primal, std columns
  Eigen::VectorXd y;  // row duals (d obj / d rhs)
  double objective = 0.0;  // includes c0
  int iterations = 0;
  double primal_infeas = kInf;
  double dual_infeas = kInf;
  double gap = kInf;
};

struct IpmOptions {
  double tol = 1e-9;
  double accept_tol = 5e-8;  // fall back to this when progress stalls
  int max_iterations = 200;
  bool verbose = false;
  bool allow_elastic = true;  // escalate failed solves to the phase-1 certifier
};

// Mehrotra predictor-corrector interior-point method for convex
// diagonal-objective QPs with box constraints. Infeasibility returned by this
// routine is certified through an elastic phase-1 solve.
IpmResult ipm_solve(const StdProblem& p, const IpmOptions& opt = {});

// min sum of row violations; always feasible. Returns the violation optimum.
double elastic_infeasibility(const StdProblem& p, const IpmOptions& opt = {});

}  // namespace coopt::solver

#endif
