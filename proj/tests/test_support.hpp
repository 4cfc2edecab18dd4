#ifndef COOPT_TEST_SUPPORT_HPP
#define COOPT_TEST_SUPPORT_HPP

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "coopt/model_ir.hpp"

#ifndef COOPT_DATA_DIR
#define COOPT_DATA_DIR "data"
#endif

namespace test_support {

inline std::string data_path(const std::string& name) {
  return std::string(COOPT_DATA_DIR) + "/" + name;
}

// Exhaustive vertex enumeration for small boxed LPs. Completely independent
// of the production solve path: optima are found by trying every basis, i.e.
// every choice of n active hyperplanes among rows and bounds.
inline std::optional<double> brute_force_lp(const coopt::ModelIR& m) {
  using namespace coopt;
  const int n = static_cast<int>(m.vars.size());
  for (double q : m.obj_quad)
    if (q != 0.0) throw std::logic_error("brute_force_lp: LP only");

  struct Plane {
    Eigen::VectorXd a;
    double rhs;
    bool mandatory;  // equality rows must always be active
  };
  std::vector<Plane> planes;
  for (const auto& con : m.cons) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (const auto& t : con.terms) a[t.var] += t.coef;
    planes.push_back({a, con.rhs, con.rel == Rel::eq});
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    a[j] = 1.0;
    if (std::isfinite(m.vars[j].lb)) planes.push_back({a, m.vars[j].lb, false});
    if (std::isfinite(m.vars[j].ub)) planes.push_back({a, m.vars[j].ub, false});
  }

  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) c[j] = m.obj_linear[j];

  auto feasible = [&](const Eigen::VectorXd& x) {
    for (int j = 0; j < n; ++j) {
      if (x[j] < m.vars[j].lb - 1e-7 || x[j] > m.vars[j].ub + 1e-7) return false;
    }
    for (const auto& con : m.cons) {
      double lhs = 0.0;
      for (const auto& t : con.terms) lhs += t.coef * x[t.var];
      switch (con.rel) {
        case Rel::le:
          if (lhs > con.rhs + 1e-7) return false;
          break;
        case Rel::ge:
          if (lhs < con.rhs - 1e-7) return false;
          break;
        case Rel::eq:
          if (std::abs(lhs - con.rhs) > 1e-7) return false;
          break;
      }
    }
    return true;
  };

  std::vector<int> mandatory, optional_ids;
  for (int i = 0; i < static_cast<int>(planes.size()); ++i)
    (planes[i].mandatory ? mandatory : optional_ids).push_back(i);
  int need = n - static_cast<int>(mandatory.size());
  if (need < 0) return std::nullopt;

  std::optional<double> best;
  std::vector<int> pick(need);
  std::vector<int> chosen;
  auto try_set = [&](const std::vector<int>& act) {
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
      A.row(r) = planes[act[r]].a.transpose();
      rhs[r] = planes[act[r]].rhs;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible()) return;
    Eigen::VectorXd x = lu.solve(rhs);
    if (!feasible(x)) return;
    double obj = c.dot(x) + m.obj_constant;
    if (!best || obj < *best) best = obj;
  };

  // iterate over all C(|optional|, need) subsets
  std::vector<int> idx(need);
  for (int i = 0; i < need; ++i) idx[i] = i;
  if (need == 0) {
    std::vector<int> act = mandatory;
    try_set(act);
  } else if (static_cast<int>(optional_ids.size()) >= need) {
    for (;;) {
      std::vector<int> act = mandatory;
      for (int i = 0; i < need; ++i) act.push_back(optional_ids[idx[i]]);
      try_set(act);
      int i = need - 1;
      while (i >= 0 && idx[i] == static_cast<int>(optional_ids.size()) - need + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int k = i + 1; k < need; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return best;
}

}  // namespace test_support

#endif
