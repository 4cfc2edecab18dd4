#include "coopt/model_ir.hpp"

#include <cmath>
#include <sstream>

namespace coopt {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::limit: return "limit";
  }
  return "?";
}

int ModelIR::add_var(const std::string& name, double lb, double ub, VarKind kind) {
  if (var_id.count(name))
    throw Error(errc::invalid_network, "duplicate variable name " + name);
  int id = static_cast<int>(vars.size());
  vars.push_back({name, lb, ub, kind});
  obj_linear.push_back(0.0);
  obj_quad.push_back(0.0);
  var_id.emplace(name, id);
  return id;
}

int ModelIR::add_con(const std::string& name, std::vector<LinTerm> terms, Rel rel,
                     double rhs, bool dual_tracked) {
  if (con_id.count(name))
    throw Error(errc::invalid_network, "duplicate constraint name " + name);
  int id = static_cast<int>(cons.size());
  cons.push_back({name, std::move(terms), rel, rhs, dual_tracked});
  con_id.emplace(name, id);
  return id;
}

void ModelIR::add_obj(int var, double lin, double quad) {
  obj_linear[var] += lin;
  obj_quad[var] += quad;
}

int ModelIR::var_index(const std::string& name) const {
  auto it = var_id.find(name);
  if (it == var_id.end())
    throw Error(errc::invalid_network, "unknown variable " + name);
  return it->second;
}

int ModelIR::binary_count() const {
  int n = 0;
  for (const auto& v : vars)
    if (v.kind == VarKind::binary) ++n;
  return n;
}

void ModelIR::validate() const {
  int n = static_cast<int>(vars.size());
  for (const auto& con : cons)
    for (const auto& term : con.terms)
      if (term.var < 0 || term.var >= n)
        throw Error(errc::invalid_network,
                    "constraint " + con.name + " references missing variable");
  for (int i = 0; i < n; ++i) {
    if (obj_quad[i] != 0.0) {
      if (obj_quad[i] < 0.0)
        throw Error(errc::non_convex_model,
                    "negative quadratic coefficient on " + vars[i].name);
      if (vars[i].kind != VarKind::continuous)
        throw Error(errc::non_convex_model,
                    "quadratic coefficient on integer variable " + vars[i].name);
    }
    if (vars[i].lb > vars[i].ub + 1e-12)
      throw Error(errc::invalid_network, "empty bound interval on " + vars[i].name);
  }
}

double SolveResult::value(const std::string& name) const {
  auto it = primal.find(name);
  if (it == primal.end())
    throw Error(errc::invalid_network, "no primal value for " + name);
  return it->second;
}

double SolveResult::value_or(const std::string& name, double fallback) const {
  auto it = primal.find(name);
  return it == primal.end() ? fallback : it->second;
}

double SolveResult::dual(const std::string& name) const {
  auto it = duals.find(name);
  if (it == duals.end()) throw Error(errc::missing_duals, name);
  return it->second;
}

ModelIR piecewise_linearize(const ModelIR& model, int segments) {
  if (segments < 1)
    throw Error(errc::bad_config, "piecewise linearization needs at least 1 segment");
  ModelIR out = model;
  int n = static_cast<int>(model.vars.size());
  for (int i = 0; i < n; ++i) {
    double q = model.obj_quad[i];
    if (q == 0.0) continue;
    const Variable& v = model.vars[i];
    if (!std::isfinite(v.lb) || !std::isfinite(v.ub))
      throw Error(errc::unbounded_quadratic_variable, v.name);
    out.obj_quad[i] = 0.0;
    double width = (v.ub - v.lb) / segments;
    if (width <= 0.0) {
      // degenerate interval: the quadratic term is a constant
      out.obj_constant += q * v.lb * v.lb;
      continue;
    }
    std::vector<LinTerm> link;
    link.push_back({i, 1.0});
    for (int k = 0; k < segments; ++k) {
      double x0 = v.lb + k * width;
      double x1 = x0 + width;
      double slope = q * (x0 + x1);  // chord slope of q*x^2 on [x0, x1]
      int s = out.add_var(v.name + "__pwl" + std::to_string(k + 1), 0.0, width);
      out.add_obj(s, slope);
      link.push_back({s, -1.0});
    }
    out.obj_constant += q * v.lb * v.lb;
    out.add_con(v.name + "__pwldef", std::move(link), Rel::eq, v.lb);
  }
  out.validate();
  return out;
}

std::string export_lp(const ModelIR& model) {
  std::ostringstream out;
  out << "\\ " << model.vars.size() << " variables, " << model.cons.size()
      << " constraints\nMinimize\n obj:";
  for (size_t i = 0; i < model.vars.size(); ++i)
    if (model.obj_linear[i] != 0.0)
      out << (model.obj_linear[i] >= 0 ? " + " : " - ")
          << format_double(std::fabs(model.obj_linear[i])) << " " << model.vars[i].name;
  bool any_quad = false;
  for (double q : model.obj_quad) any_quad |= (q != 0.0);
  if (any_quad) {
    out << " + [";
    for (size_t i = 0; i < model.vars.size(); ++i)
      if (model.obj_quad[i] != 0.0)
        out << " + " << format_double(2.0 * model.obj_quad[i]) << " "
            << model.vars[i].name << "^2";
    out << " ] / 2";
  }
  if (model.obj_constant != 0.0) out << " + " << format_double(model.obj_constant);
  out << "\nSubject To\n";
  for (const auto& con : model.cons) {
    out << " " << con.name << ":";
    for (const auto& term : con.terms)
      out << (term.coef >= 0 ? " + " : " - ") << format_double(std::fabs(term.coef))
          << " " << model.vars[term.var].name;
    switch (con.rel) {
      case Rel::le: out << " <= "; break;
      case Rel::eq: out << " = "; break;
      case Rel::ge: out << " >= "; break;
    }
    out << format_double(con.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : model.vars) {
    if (std::isfinite(v.lb) && std::isfinite(v.ub))
      out << " " << format_double(v.lb) << " <= " << v.name
          << " <= " << format_double(v.ub) << "\n";
    else if (std::isfinite(v.lb))
      out << " " << v.name << " >= " << format_double(v.lb) << "\n";
    else if (std::isfinite(v.ub))
      out << " -inf <= " << v.name << " <= " << format_double(v.ub) << "\n";
    else
      out << " " << v.name << " free\n";
  }
  bool any_bin = false;
  for (const auto& v : model.vars) any_bin |= (v.kind == VarKind::binary);
  if (any_bin) {
    out << "Binaries\n";
    for (const auto& v : model.vars)
      if (v.kind == VarKind::binary) out << " " << v.name << "\n";
  }
  out << "End\n";
  return out.str();
}

namespace sym {
namespace {
std::string tag(const char* base, std::initializer_list<std::pair<char, int>> parts) {
  std::string s(base);
  for (auto [c, v] : parts) {
    s += '_';
    s += c;
    s += std::to_string(v);
  }
  return s;
}
}  // namespace

std::string pg(int bus, int t) { return tag("pg", {{'i', bus}, {'t', t}}); }
std::string pr(int unit, int t) { return tag("pr", {{'u', unit}, {'t', t}}); }
std::string prw(int unit, int t, int w) {
  return tag("prw", {{'u', unit}, {'t', t}, {'w', w}});
}
std::string shed(int bus, int t, int w) {
  return tag("shed", {{'i', bus}, {'t', t}, {'w', w}});
}
std::string reserve_up(int bus, int t) { return tag("rup", {{'i', bus}, {'t', t}}); }
std::string reserve_dn(int bus, int t) { return tag("rdn", {{'i', bus}, {'t', t}}); }
std::string ramp_up(int bus, int t, int w) {
  return tag("rupw", {{'i', bus}, {'t', t}, {'w', w}});
}
std::string ramp_dn(int bus, int t, int w) {
  return tag("rdnw", {{'i', bus}, {'t', t}, {'w', w}});
}
std::string theta(int bus, int t) { return tag("th", {{'i', bus}, {'t', t}}); }
std::string theta_w(int bus, int t, int w) {
  return tag("thw", {{'i', bus}, {'t', t}, {'w', w}});
}
std::string flow(int line, int t) { return tag("fl", {{'l', line}, {'t', t}}); }
std::string flow_w(int line, int t, int w) {
  return tag("flw", {{'l', line}, {'t', t}, {'w', w}});
}
std::string charge(int node, int bus, int t) {
  return tag("pc", {{'i', node}, {'b', bus}, {'t', t}});
}
std::string discharge(int node, int bus, int t) {
  return tag("pdc", {{'i', node}, {'b', bus}, {'t', t}});
}
std::string charge2(int node, int bus, int t, int w) {
  return tag("pcp", {{'i', node}, {'b', bus}, {'t', t}, {'w', w}});
}
std::string discharge2(int node, int bus, int t, int w) {
  return tag("pdcp", {{'i', node}, {'b', bus}, {'t', t}, {'w', w}});
}
std::string level(int bus, int t) { return tag("e", {{'b', bus}, {'t', t}}); }
std::string level_w(int bus, int t, int w) {
  return tag("ew", {{'b', bus}, {'t', t}, {'w', w}});
}
std::string assign(int node, int bus, int t) {
  return tag("z", {{'i', node}, {'b', bus}, {'t', t}});
}
std::string traverse(int bus, int t) { return tag("y", {{'b', bus}, {'t', t}}); }
std::string nodal(int bus, int t) { return tag("nodal", {{'i', bus}, {'t', t}}); }
std::string nodal2(int bus, int t, int w) {
  return tag("nodal2", {{'i', bus}, {'t', t}, {'w', w}});
}
}  // namespace sym

}  // namespace coopt
