#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <queue>

#include "solver_internal.hpp"

namespace coopt {

namespace solver {

StdProblem make_standard_form(const ModelIR& model,
                              const std::unordered_map<int, double>& fixes,
                              const std::vector<double>* objective_override) {
  const int nv = static_cast<int>(model.vars.size());
  const std::vector<double>& lin =
      objective_override ? *objective_override : model.obj_linear;

  StdProblem p;
  p.c0 = model.obj_constant;
  p.fixed_value.assign(nv, std::numeric_limits<double>::quiet_NaN());
  p.neg_col_of_var.assign(nv, -1);

  std::vector<int> col_of(nv, -1);
  std::vector<double> lb(nv), ub(nv);
  int ncols = 0;
  for (int v = 0; v < nv; ++v) {
    lb[v] = model.vars[v].lb;
    ub[v] = model.vars[v].ub;
    if (lb[v] <= -kBoundInf) lb[v] = -kInf;
    if (ub[v] >= kBoundInf) ub[v] = kInf;
    auto it = fixes.find(v);
    if (it != fixes.end()) lb[v] = ub[v] = it->second;
    if (lb[v] == ub[v]) {
      p.fixed_value[v] = lb[v];
      p.c0 += lin[v] * lb[v] + model.obj_quad[v] * lb[v] * lb[v];
    } else if (std::isinf(lb[v]) && std::isinf(ub[v])) {
      // free variable: split into a difference of nonnegative columns so the
      // scaling matrix stays positive
      col_of[v] = ncols;
      p.neg_col_of_var[v] = ncols + 1;
      ncols += 2;
    } else {
      col_of[v] = ncols++;
    }
  }

  struct RowPlan {
    int con;
    double rhs;
    int slack_sign;  // 0 none, +1 for <=, -1 for >=
  };
  std::vector<RowPlan> plan;
  int slacks = 0;
  for (int k = 0; k < static_cast<int>(model.cons.size()); ++k) {
    const auto& con = model.cons[k];
    double rhs = con.rhs;
    bool any = false;
    for (const auto& term : con.terms) {
      if (col_of[term.var] >= 0)
        any = true;
      else
        rhs -= term.coef * p.fixed_value[term.var];
    }
    if (!any) {
      double viol = 0.0;
      switch (con.rel) {
        case Rel::le: viol = std::max(0.0, -rhs); break;
        case Rel::ge: viol = std::max(0.0, rhs); break;
        case Rel::eq: viol = std::abs(rhs); break;
      }
      if (viol > 1e-9) {
        p.trivially_infeasible = true;
        p.infeasible_reason = con.name;
      }
      continue;
    }
    int sign = con.rel == Rel::le ? 1 : (con.rel == Rel::ge ? -1 : 0);
    if (sign != 0) ++slacks;
    plan.push_back({k, rhs, sign});
  }

  const int m = static_cast<int>(plan.size());
  const int n = ncols + slacks;
  p.b.resize(m);
  p.c = Eigen::VectorXd::Zero(n);
  p.q = Eigen::VectorXd::Zero(n);
  p.lb = Eigen::VectorXd::Constant(n, -kInf);
  p.ub = Eigen::VectorXd::Constant(n, kInf);
  p.col_to_var.assign(n, -1);
  p.row_to_con.resize(m);

  for (int v = 0; v < nv; ++v) {
    int j = col_of[v];
    if (j < 0) continue;
    p.c[j] = lin[v];
    p.q[j] = 2.0 * model.obj_quad[v];  // IR stores quad*x^2; std form is x'Qx/2
    p.lb[j] = lb[v];
    p.ub[j] = ub[v];
    p.col_to_var[j] = v;
    int jm = p.neg_col_of_var[v];
    if (jm >= 0) {
      if (model.obj_quad[v] != 0.0)
        throw Error(errc::unbounded_quadratic_variable, model.vars[v].name);
      p.c[jm] = -lin[v];
      p.lb[j] = p.lb[jm] = 0.0;
      p.ub[j] = p.ub[jm] = kInf;
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(64 + 4 * model.cons.size());
  int next_slack = ncols;
  for (int r = 0; r < m; ++r) {
    const auto& rp = plan[r];
    const auto& con = model.cons[rp.con];
    p.row_to_con[r] = rp.con;
    p.b[r] = rp.rhs;
    for (const auto& term : con.terms) {
      if (col_of[term.var] < 0) continue;
      trip.emplace_back(r, col_of[term.var], term.coef);
      if (p.neg_col_of_var[term.var] >= 0)
        trip.emplace_back(r, p.neg_col_of_var[term.var], -term.coef);
    }
    if (rp.slack_sign != 0) {
      int s = next_slack++;
      trip.emplace_back(r, s, static_cast<double>(rp.slack_sign));
      p.lb[s] = 0.0;  // ub stays +inf
    }
  }
  p.A.resize(m, n);
  p.A.setFromTriplets(trip.begin(), trip.end());
  return p;
}

}  // namespace solver

namespace {

using solver::IpmOptions;
using solver::IpmResult;
using solver::IpmStatus;
using solver::StdProblem;

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

IpmOptions ipm_options_from(const SolveOptions& opt) {
  IpmOptions io;
  io.tol = std::min(1e-9, opt.feas_tol * 0.01);
  return io;
}

// IR-indexed variable values of a standard-form solution.
std::vector<double> extract_values(const ModelIR& model, const StdProblem& p,
                                   const IpmResult& r) {
  std::vector<double> val(model.vars.size(), 0.0);
  for (size_t v = 0; v < model.vars.size(); ++v)
    if (!std::isnan(p.fixed_value[v])) val[v] = p.fixed_value[v];
  for (int j = 0; j < static_cast<int>(p.col_to_var.size()); ++j)
    if (p.col_to_var[j] >= 0 && j < r.x.size()) val[p.col_to_var[j]] = r.x[j];
  for (size_t v = 0; v < model.vars.size(); ++v) {
    int jm = p.neg_col_of_var[v];
    if (jm >= 0 && jm < r.x.size()) val[v] -= r.x[jm];
  }
  return val;
}

void fill_primal(const ModelIR& model, const StdProblem& p, const IpmResult& r,
                 SolveResult& out) {
  std::vector<double> vals = extract_values(model, p, r);
  out.primal.clear();
  out.primal.reserve(model.vars.size());
  for (size_t v = 0; v < model.vars.size(); ++v)
    out.primal.emplace(model.vars[v].name, vals[v]);
}

void fill_duals(const ModelIR& model, const StdProblem& p, const IpmResult& r,
                SolveResult& out) {
  out.duals.clear();
  std::vector<double> row_dual(model.cons.size(), 0.0);
  for (int row = 0; row < static_cast<int>(p.row_to_con.size()); ++row)
    if (row < r.y.size()) row_dual[p.row_to_con[row]] = r.y[row];
  for (size_t k = 0; k < model.cons.size(); ++k)
    if (model.cons[k].dual_tracked) out.duals.emplace(model.cons[k].name, row_dual[k]);
}

std::vector<int> binary_vars(const ModelIR& model) {
  std::vector<int> bins;
  for (int v = 0; v < static_cast<int>(model.vars.size()); ++v)
    if (model.vars[v].kind == VarKind::binary && model.vars[v].lb < model.vars[v].ub)
      bins.push_back(v);
  return bins;
}

// Deterministic tie-breaking weights in [-1, 1] for the dive heuristic.
double tie_weight(int v) {
  std::uint64_t z = static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return (static_cast<double>(z >> 11) * 0x1.0p-53) * 2.0 - 1.0;
}

struct Incumbent {
  std::unordered_map<int, double> assignment;
  double objective = solver::kInf;
  IpmResult resolve;
  StdProblem std_form;
};

// Re-solves the continuous restriction under a full binary assignment.
std::optional<Incumbent> try_assignment(const ModelIR& model,
                                        std::unordered_map<int, double> assignment,
                                        const SolveOptions& opt) {
  StdProblem p = solver::make_standard_form(model, assignment);
  IpmResult r = solver::ipm_solve(p, ipm_options_from(opt));
  if (r.status != IpmStatus::optimal) return std::nullopt;
  Incumbent inc;
  inc.assignment = std::move(assignment);
  inc.objective = r.objective;
  inc.resolve = std::move(r);
  inc.std_form = std::move(p);
  return inc;
}

// Iterative fix-and-resolve dive under a deterministically perturbed
// objective, so ties between equivalent integer assignments settle on one.
std::optional<Incumbent> dive(const ModelIR& model, const std::vector<int>& bins,
                              std::unordered_map<int, double> fixes,
                              const SolveOptions& opt, const Clock& clock) {
  std::vector<double> perturbed = model.obj_linear;
  double scale = 0.0;
  for (double v : perturbed) scale = std::max(scale, std::abs(v));
  double eps = 1e-7 * (1.0 + scale);
  for (int v : bins) perturbed[v] += eps * tie_weight(v);

  for (int pass = 0; pass < 60; ++pass) {
    if (clock.seconds() > opt.time_limit_seconds) return std::nullopt;
    StdProblem p = solver::make_standard_form(model, fixes, &perturbed);
    IpmResult r = solver::ipm_solve(p, ipm_options_from(opt));
    if (r.status != IpmStatus::optimal) return std::nullopt;
    std::vector<double> val = extract_values(model, p, r);

    std::vector<int> frac;
    for (int v : bins)
      if (!fixes.count(v) && std::abs(val[v] - std::round(val[v])) > 1e-6)
        frac.push_back(v);
    if (frac.empty()) {
      std::unordered_map<int, double> assignment = fixes;
      for (int v : bins)
        if (!assignment.count(v)) assignment[v] = std::round(val[v]);
      return try_assignment(model, std::move(assignment), opt);
    }
    size_t fixed_before = fixes.size();
    for (int v : bins)
      if (!fixes.count(v) && std::abs(val[v] - std::round(val[v])) <= 0.1)
        fixes[v] = std::round(val[v]);
    if (fixes.size() == fixed_before) {
      int best = frac.front();
      double best_d = 1.0;
      for (int v : frac) {
        double d = std::abs(val[v] - std::round(val[v]));
        if (d < best_d - 1e-12) {
          best_d = d;
          best = v;
        }
      }
      fixes[best] = std::round(val[best]);
    }
  }
  return std::nullopt;
}

int most_fractional(const std::vector<int>& bins,
                    const std::unordered_map<int, double>& fixes,
                    const std::vector<double>& val) {
  int branch_var = -1;
  double best = 1e-6;
  for (int v : bins) {
    if (fixes.count(v)) continue;
    double d = std::abs(val[v] - std::round(val[v]));
    if (d > best) {
      best = d;
      branch_var = v;
    }
  }
  return branch_var;
}

}  // namespace

SolveResult solve(const ModelIR& model_in, const SolveOptions& options) {
  model_in.validate();
  Clock clock;

  const ModelIR* model = &model_in;
  ModelIR linearized;
  if (options.force_linearize) {
    bool any_quad = false;
    for (double q : model_in.obj_quad) any_quad |= (q != 0.0);
    if (any_quad) {
      linearized = piecewise_linearize(model_in, options.pwl_segments);
      model = &linearized;
    }
  }

  SolveResult out;
  std::vector<int> bins = binary_vars(*model);

  // pure continuous model: a single interior-point solve, duals included
  if (bins.empty()) {
    StdProblem p = solver::make_standard_form(*model, {});
    IpmResult r = solver::ipm_solve(p, ipm_options_from(options));
    out.solve_seconds = clock.seconds();
    out.nodes = 1;
    switch (r.status) {
      case IpmStatus::optimal: out.status = SolveStatus::optimal; break;
      case IpmStatus::infeasible: out.status = SolveStatus::infeasible; break;
      case IpmStatus::unbounded: out.status = SolveStatus::unbounded; break;
      case IpmStatus::limit: out.status = SolveStatus::limit; break;
    }
    out.objective = r.objective;
    out.best_bound = r.objective;
    if (out.status == SolveStatus::optimal || out.status == SolveStatus::limit) {
      fill_primal(*model, p, r, out);
      if (out.status == SolveStatus::optimal) fill_duals(*model, p, r, out);
    }
    return out;
  }

  StdProblem root_p = solver::make_standard_form(*model, {});
  IpmResult root = solver::ipm_solve(root_p, ipm_options_from(options));
  out.nodes = 1;
  if (root.status == IpmStatus::infeasible) {
    out.status = SolveStatus::infeasible;
    out.solve_seconds = clock.seconds();
    return out;
  }
  if (root.status == IpmStatus::unbounded) {
    out.status = SolveStatus::unbounded;
    out.solve_seconds = clock.seconds();
    return out;
  }
  double global_lb = root.objective;

  auto gap_cut = [&](double inc_obj) {
    return std::max(options.mip_gap * std::max(1.0, std::abs(inc_obj)), 1e-9);
  };

  std::optional<Incumbent> incumbent;
  bool proven = false;

  std::vector<double> root_val = extract_values(*model, root_p, root);
  int root_branch = most_fractional(bins, {}, root_val);
  if (root_branch < 0) {
    std::unordered_map<int, double> assignment;
    for (int v : bins) assignment[v] = std::round(root_val[v]);
    incumbent = try_assignment(*model, std::move(assignment), options);
    proven = incumbent.has_value();
  }
  if (!incumbent) incumbent = dive(*model, bins, {}, options, clock);

  struct Node {
    double bound;
    long seq;
    std::unordered_map<int, double> fixes;
  };
  auto cmp = [](const Node& a, const Node& b) {
    return a.bound > b.bound || (a.bound == b.bound && a.seq > b.seq);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
  long seq = 0;

  if (!proven && root_branch >= 0 &&
      (!incumbent ||
       root.objective < incumbent->objective - gap_cut(incumbent->objective))) {
    for (double side : {0.0, 1.0}) {
      Node child;
      child.bound = root.objective;
      child.seq = seq++;
      child.fixes[root_branch] = side;
      open.push(std::move(child));
    }
  } else if (incumbent) {
    global_lb = incumbent->objective;
  }

  bool hit_limit = false;
  int since_dive = 0;
  while (!open.empty()) {
    if (clock.seconds() > options.time_limit_seconds ||
        out.nodes >= options.max_nodes) {
      hit_limit = true;
      break;
    }
    Node node = open.top();
    global_lb = node.bound;
    if (incumbent &&
        node.bound >= incumbent->objective - gap_cut(incumbent->objective)) {
      global_lb = incumbent->objective;  // best-first: the rest is no better
      break;
    }
    open.pop();

    StdProblem p = solver::make_standard_form(*model, node.fixes);
    IpmResult r = solver::ipm_solve(p, ipm_options_from(options));
    ++out.nodes;
    if (r.status == IpmStatus::infeasible) continue;
    if (r.status == IpmStatus::limit) r.objective = node.bound;
    if (incumbent &&
        r.objective >= incumbent->objective - gap_cut(incumbent->objective))
      continue;

    std::vector<double> val = extract_values(*model, p, r);
    int branch_var = most_fractional(bins, node.fixes, val);
    if (branch_var < 0) {
      std::unordered_map<int, double> assignment = node.fixes;
      for (int v : bins)
        if (!assignment.count(v)) assignment[v] = std::round(val[v]);
      auto cand = try_assignment(*model, std::move(assignment), options);
      if (cand && (!incumbent || cand->objective < incumbent->objective))
        incumbent = std::move(cand);
      continue;
    }
    if (++since_dive >= 40) {
      since_dive = 0;
      auto cand = dive(*model, bins, node.fixes, options, clock);
      if (cand && (!incumbent || cand->objective < incumbent->objective))
        incumbent = std::move(cand);
    }
    for (double side : {0.0, 1.0}) {
      Node child;
      child.bound = r.objective;
      child.seq = seq++;
      child.fixes = node.fixes;
      child.fixes[branch_var] = side;
      open.push(std::move(child));
    }
  }

  out.solve_seconds = clock.seconds();
  if (!incumbent) {
    out.status = hit_limit ? SolveStatus::limit : SolveStatus::infeasible;
    out.best_bound = global_lb;
    return out;
  }
  out.status = hit_limit ? SolveStatus::limit : SolveStatus::optimal;
  if (open.empty() && out.status == SolveStatus::optimal)
    global_lb = incumbent->objective;
  out.objective = incumbent->objective;
  out.best_bound = std::min(global_lb, incumbent->objective);
  fill_primal(*model, incumbent->std_form, incumbent->resolve, out);
  // duals stay empty: undefined while integer variables are free
  return out;
}

SolveResult fix_integers_and_resolve(const ModelIR& model, const SolveResult& incumbent,
                                     const SolveOptions& options) {
  ModelIR fixed = model;
  for (auto& v : fixed.vars) {
    if (v.kind != VarKind::binary) continue;
    double val = incumbent.value(v.name);
    double r = std::round(val);
    if (std::abs(val - r) > 1e-5)
      throw Error(errc::incumbent_infeasible_after_fix,
                  "incumbent value for " + v.name + " is not integral");
    v.lb = std::max(v.lb, r);
    v.ub = std::min(v.ub, r);
    if (v.lb > v.ub)
      throw Error(errc::incumbent_infeasible_after_fix,
                  "incumbent value for " + v.name + " violates its bounds");
    v.kind = VarKind::continuous;
  }
  SolveResult out = solve(fixed, options);
  if (out.status == SolveStatus::infeasible)
    throw Error(errc::incumbent_infeasible_after_fix,
                "continuous restriction infeasible after fixing binaries");
  return out;
}

}  // namespace coopt
