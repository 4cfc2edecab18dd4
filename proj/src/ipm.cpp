#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

#include "solver_internal.hpp"

namespace coopt::solver {

namespace {

using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

struct Bounds {
  std::vector<char> has_l, has_u;
  int n_comp = 0;  // number of complementarity pairs
};

Bounds classify(const StdProblem& p) {
  int n = static_cast<int>(p.c.size());
  Bounds b;
  b.has_l.resize(n);
  b.has_u.resize(n);
  for (int j = 0; j < n; ++j) {
    b.has_l[j] = std::isfinite(p.lb[j]);
    b.has_u[j] = std::isfinite(p.ub[j]);
    b.n_comp += b.has_l[j] + b.has_u[j];
  }
  return b;
}

double inf_norm(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

IpmResult ipm_solve(const StdProblem& p, const IpmOptions& opt) {
  IpmResult res;
  if (p.trivially_infeasible) {
    res.status = IpmStatus::infeasible;
    return res;
  }
  const int n = static_cast<int>(p.c.size());
  const int m = static_cast<int>(p.b.size());
  const Bounds bd = classify(p);

  if (n == 0) {
    // everything substituted out; only consistency of b remains
    res.status = inf_norm(p.b) <= 1e-9 * (1.0 + inf_norm(p.b)) ? IpmStatus::optimal
                                                               : IpmStatus::infeasible;
    res.x = VectorXd();
    res.y = VectorXd::Zero(m);
    res.objective = p.c0;
    res.primal_infeas = inf_norm(p.b);
    res.dual_infeas = 0.0;
    res.gap = 0.0;
    return res;
  }

  SpMat At = p.A.transpose();

  // starting point strictly inside the box
  VectorXd x(n), zl = VectorXd::Zero(n), zu = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    double l = p.lb[j], u = p.ub[j];
    if (bd.has_l[j] && bd.has_u[j]) {
      x[j] = 0.5 * (l + u);
    } else if (bd.has_l[j]) {
      x[j] = l + 1.0 + 0.1 * std::abs(l);
    } else if (bd.has_u[j]) {
      x[j] = u - 1.0 - 0.1 * std::abs(u);
    } else {
      x[j] = 0.0;
    }
    double z0 = 1.0 + 0.5 * std::abs(p.c[j]);
    if (bd.has_l[j]) zl[j] = z0;
    if (bd.has_u[j]) zu[j] = z0;
  }
  VectorXd y = VectorXd::Zero(m);

  const double bnorm = 1.0 + inf_norm(p.b);
  const double cnorm = 1.0 + inf_norm(p.c);

  Eigen::SimplicialLDLT<SpMat> ldlt;
  bool analyzed = false;

  double best_pinf = kInf;
  int stall = 0;
  double mu = 1.0;

  auto primal_obj = [&](const VectorXd& xx) {
    return p.c.dot(xx) + 0.5 * xx.cwiseProduct(p.q).dot(xx) + p.c0;
  };

  for (int it = 0; it < opt.max_iterations; ++it) {
    VectorXd gl = VectorXd::Ones(n), gu = VectorXd::Ones(n);
    for (int j = 0; j < n; ++j) {
      if (bd.has_l[j]) gl[j] = x[j] - p.lb[j];
      if (bd.has_u[j]) gu[j] = p.ub[j] - x[j];
    }

    VectorXd rp = p.b - p.A * x;
    VectorXd rd = p.c + p.q.cwiseProduct(x) - At * y - zl + zu;

    double comp = 0.0;
    for (int j = 0; j < n; ++j) {
      if (bd.has_l[j]) comp += gl[j] * zl[j];
      if (bd.has_u[j]) comp += gu[j] * zu[j];
    }
    mu = bd.n_comp > 0 ? comp / bd.n_comp : 0.0;

    double pobj = primal_obj(x);
    double dobj = p.b.dot(y) - 0.5 * x.cwiseProduct(p.q).dot(x) + p.c0;
    for (int j = 0; j < n; ++j) {
      if (bd.has_l[j]) dobj += p.lb[j] * zl[j];
      if (bd.has_u[j]) dobj -= p.ub[j] * zu[j];
    }

    double pinf = inf_norm(rp) / bnorm;
    double dinf = inf_norm(rd) / cnorm;
    double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    res.iterations = it;
    res.primal_infeas = pinf;
    res.dual_infeas = dinf;
    res.gap = gap;

    if (opt.verbose)
      std::fprintf(stderr, "ipm %3d obj %.10g pinf %.2e dinf %.2e gap %.2e mu %.2e\n",
                   it, pobj, pinf, dinf, gap, mu);

    if (pinf <= opt.tol && dinf <= opt.tol && gap <= opt.tol) {
      res.status = IpmStatus::optimal;
      res.x = x;
      res.y = y;
      res.objective = pobj;
      return res;
    }

    if (pinf < best_pinf * 0.9) {
      best_pinf = pinf;
      stall = 0;
    } else {
      ++stall;
    }
    // Converged in complementarity but stuck on feasibility: hand the
    // question to the elastic phase-1 certifier.
    if ((mu < 1e-12 && pinf > 100 * opt.tol) || stall > 60) {
      if (pinf <= opt.accept_tol && dinf <= opt.accept_tol && gap <= opt.accept_tol) {
        res.status = IpmStatus::optimal;
        res.x = x;
        res.y = y;
        res.objective = pobj;
        return res;
      }
      break;
    }

    // scaling matrix
    VectorXd d(n);
    for (int j = 0; j < n; ++j) {
      double v = p.q[j];
      if (bd.has_l[j]) v += zl[j] / std::max(gl[j], 1e-14);
      if (bd.has_u[j]) v += zu[j] / std::max(gu[j], 1e-14);
      d[j] = std::clamp(v, 1e-12, 1e14);
    }
    VectorXd dinv = d.cwiseInverse();

    SpMat M = p.A * dinv.asDiagonal() * At;
    // static regularization keeps the factorization well defined under
    // degeneracy
    double reg = 1e-12 * std::max(1.0, M.coeffs().size() ? M.coeffs().maxCoeff() : 1.0);
    SpMat I(m, m);
    I.setIdentity();
    for (int attempt = 0; attempt < 4; ++attempt) {
      SpMat Mr = M + (reg * std::pow(100.0, attempt)) * I;
      if (!analyzed) {
        ldlt.analyzePattern(Mr);
        analyzed = true;
      }
      ldlt.factorize(Mr);
      if (ldlt.info() == Eigen::Success) break;
    }
    if (ldlt.info() != Eigen::Success) break;

    auto solve_direction = [&](const VectorXd& rcl, const VectorXd& rcu, VectorXd& dx,
                               VectorXd& dy, VectorXd& dzl, VectorXd& dzu) {
      VectorXd rhat = rd;
      for (int j = 0; j < n; ++j) {
        if (bd.has_l[j]) rhat[j] -= rcl[j] / std::max(gl[j], 1e-14);
        if (bd.has_u[j]) rhat[j] += rcu[j] / std::max(gu[j], 1e-14);
      }
      VectorXd rhs = rp + p.A * dinv.cwiseProduct(rhat);
      dy = ldlt.solve(rhs);
      // one step of iterative refinement
      VectorXd resid = rhs - M * dy;
      if (inf_norm(resid) > 1e-13 * (1.0 + inf_norm(rhs))) dy += ldlt.solve(resid);
      dx = dinv.cwiseProduct(At * dy - rhat);
      dzl = VectorXd::Zero(n);
      dzu = VectorXd::Zero(n);
      for (int j = 0; j < n; ++j) {
        if (bd.has_l[j]) dzl[j] = (rcl[j] - zl[j] * dx[j]) / std::max(gl[j], 1e-14);
        if (bd.has_u[j]) dzu[j] = (rcu[j] + zu[j] * dx[j]) / std::max(gu[j], 1e-14);
      }
    };

    auto max_steps = [&](const VectorXd& dx, const VectorXd& dzl, const VectorXd& dzu,
                         double& ap, double& ad) {
      ap = 1.0;
      ad = 1.0;
      for (int j = 0; j < n; ++j) {
        if (bd.has_l[j]) {
          if (dx[j] < 0.0) ap = std::min(ap, -gl[j] / dx[j]);
          if (dzl[j] < 0.0) ad = std::min(ad, -zl[j] / dzl[j]);
        }
        if (bd.has_u[j]) {
          if (dx[j] > 0.0) ap = std::min(ap, gu[j] / dx[j]);
          if (dzu[j] < 0.0) ad = std::min(ad, -zu[j] / dzu[j]);
        }
      }
    };

    // predictor
    VectorXd rcl(n), rcu(n);
    for (int j = 0; j < n; ++j) {
      rcl[j] = bd.has_l[j] ? -gl[j] * zl[j] : 0.0;
      rcu[j] = bd.has_u[j] ? -gu[j] * zu[j] : 0.0;
    }
    VectorXd dx_a, dy_a, dzl_a, dzu_a;
    solve_direction(rcl, rcu, dx_a, dy_a, dzl_a, dzu_a);
    double ap_a, ad_a;
    max_steps(dx_a, dzl_a, dzu_a, ap_a, ad_a);

    double comp_aff = 0.0;
    for (int j = 0; j < n; ++j) {
      if (bd.has_l[j])
        comp_aff += (gl[j] + ap_a * dx_a[j]) * (zl[j] + ad_a * dzl_a[j]);
      if (bd.has_u[j])
        comp_aff += (gu[j] - ap_a * dx_a[j]) * (zu[j] + ad_a * dzu_a[j]);
    }
    double mu_aff = bd.n_comp > 0 ? comp_aff / bd.n_comp : 0.0;
    double sigma = mu > 0 ? std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3) : 0.0;
    sigma = std::clamp(sigma, 1e-8, 0.99);

    // corrector
    for (int j = 0; j < n; ++j) {
      if (bd.has_l[j]) rcl[j] = sigma * mu - gl[j] * zl[j] - dx_a[j] * dzl_a[j];
      if (bd.has_u[j]) rcu[j] = sigma * mu - gu[j] * zu[j] + dx_a[j] * dzu_a[j];
    }
    VectorXd dx, dy, dzl, dzu;
    solve_direction(rcl, rcu, dx, dy, dzl, dzu);
    double ap, ad;
    max_steps(dx, dzl, dzu, ap, ad);

    double eta = std::max(0.995, 1.0 - 10.0 * mu);
    eta = std::min(eta, 1.0 - 1e-9);
    ap = std::min(1.0, eta * ap);
    ad = std::min(1.0, eta * ad);
    bool has_q = p.q.maxCoeff() > 0.0;
    if (has_q) ap = ad = std::min(ap, ad);

    x += ap * dx;
    y += ad * dy;
    zl += ad * dzl;
    zu += ad * dzu;
    for (int j = 0; j < n; ++j) {
      if (!bd.has_l[j]) zl[j] = 0.0;
      if (!bd.has_u[j]) zu[j] = 0.0;
    }
  }

  // Did not converge to the target. Accept a slightly weaker answer before
  // escalating to the feasibility certifier.
  if (res.primal_infeas <= opt.accept_tol && res.dual_infeas <= opt.accept_tol &&
      res.gap <= opt.accept_tol) {
    res.status = IpmStatus::optimal;
    res.x = x;
    res.y = y;
    res.objective = primal_obj(x);
    return res;
  }
  if (opt.allow_elastic) {
    double viol = elastic_infeasibility(p, opt);
    res.status = viol > 1e-7 * (1.0 + inf_norm(p.b)) ? IpmStatus::infeasible
                                                     : IpmStatus::limit;
  } else {
    res.status = IpmStatus::limit;
  }
  res.x = x;
  res.y = y;
  res.objective = primal_obj(x);
  return res;
}

double elastic_infeasibility(const StdProblem& p, const IpmOptions& opt) {
  const int n = static_cast<int>(p.c.size());
  const int m = static_cast<int>(p.b.size());
  StdProblem e;
  e.b = p.b;
  e.c = VectorXd::Zero(n + 2 * m);
  e.q = VectorXd::Zero(n + 2 * m);
  e.lb = VectorXd::Zero(n + 2 * m);
  e.ub = VectorXd::Constant(n + 2 * m, kInf);
  e.lb.head(n) = p.lb;
  e.ub.head(n) = p.ub;
  for (int k = 0; k < 2 * m; ++k) e.c[n + k] = 1.0;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(p.A.nonZeros() + 2 * m);
  for (int k = 0; k < p.A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(p.A, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int r = 0; r < m; ++r) {
    trip.emplace_back(r, n + 2 * r, 1.0);
    trip.emplace_back(r, n + 2 * r + 1, -1.0);
  }
  e.A.resize(m, n + 2 * m);
  e.A.setFromTriplets(trip.begin(), trip.end());

  IpmOptions eopt = opt;
  eopt.tol = 1e-10;
  eopt.accept_tol = 1e-7;
  eopt.max_iterations = 150;
  eopt.allow_elastic = false;  // the elastic problem is always feasible

  IpmResult r = ipm_solve(e, eopt);
  if (r.status == IpmStatus::optimal || r.status == IpmStatus::limit)
    return std::max(0.0, r.objective);
  return kInf;
}

}  // namespace coopt::solver
