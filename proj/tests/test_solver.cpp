#include <cmath>
#include <random>

#include "coopt/model_ir.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace coopt;

TEST_CASE("one-variable lp") {
  ModelIR m;
  int x = m.add_var("x", -1e30, 1e30);
  m.add_obj(x, 1.0);
  m.add_con("floor", {{x, 1.0}}, Rel::ge, 3.0);
  SolveResult r = solve(m);
  CHECK(r.status == SolveStatus::optimal);
  CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(r.value("x") == doctest::Approx(3.0).epsilon(1e-7));
}

TEST_CASE("quadratic minimum inside the box") {
  // min x^2 - 2x on [0, 4] -> x = 1, objective -1
  ModelIR m;
  int x = m.add_var("x", 0.0, 4.0);
  m.add_obj(x, -2.0, 1.0);
  SolveResult r = solve(m);
  CHECK(r.status == SolveStatus::optimal);
  CHECK(r.objective == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(r.value("x") == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("infeasible box and row") {
  ModelIR m;
  int x = m.add_var("x", 0.0, 1.0);
  int y = m.add_var("y", 0.0, 1.0);
  m.add_obj(x, 1.0);
  m.add_con("c", {{x, 1.0}, {y, 1.0}}, Rel::ge, 3.0);
  SolveResult r = solve(m);
  CHECK(r.status == SolveStatus::infeasible);
}

TEST_CASE("equality rows and duals") {
  // min 2a + 3b st a + b = 10, a <= 4  -> a=4, b=6, dual of eq = 3
  ModelIR m;
  int a = m.add_var("a", 0.0, 4.0);
  int b = m.add_var("b", 0.0, 100.0);
  m.add_obj(a, 2.0);
  m.add_obj(b, 3.0);
  m.add_con("sum", {{a, 1.0}, {b, 1.0}}, Rel::eq, 10.0, true);
  SolveResult r = solve(m);
  CHECK(r.status == SolveStatus::optimal);
  CHECK(r.objective == doctest::Approx(26.0).epsilon(1e-7));
  CHECK(r.dual("sum") == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("random boxed lps agree with vertex enumeration") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(gen() % 4);  // 3..6 vars
    int mrows = 1 + static_cast<int>(gen() % 3);
    if (mrows >= n) mrows = n - 1;
    ModelIR m;
    std::vector<int> ids;
    for (int j = 0; j < n; ++j) {
      double lo = -1.0 - std::abs(U(gen));
      double hi = 1.0 + std::abs(U(gen));
      ids.push_back(m.add_var("x" + std::to_string(j), lo, hi));
      m.add_obj(ids.back(), U(gen) * 3.0);
    }
    for (int r = 0; r < mrows; ++r) {
      std::vector<LinTerm> terms;
      double rhs = 0.0;
      for (int j = 0; j < n; ++j) {
        double c = U(gen);
        terms.push_back({ids[j], c});
        rhs += c * 0.1;  // keep the origin-ish point feasible
      }
      Rel rel = (r % 3 == 0) ? Rel::eq : (r % 3 == 1 ? Rel::le : Rel::ge);
      if (rel == Rel::le) rhs += 0.3;
      if (rel == Rel::ge) rhs -= 0.3;
      m.add_con("c" + std::to_string(r), terms, rel, rhs);
    }
    SolveResult got = solve(m);
    auto expect = test_support::brute_force_lp(m);
    if (!expect.has_value()) {
      CHECK(got.status == SolveStatus::infeasible);
    } else {
      REQUIRE(got.status == SolveStatus::optimal);
      CHECK(got.objective ==
            doctest::Approx(*expect).epsilon(1e-6).scale(1.0 + std::abs(*expect)));
    }
  }
}

TEST_CASE("small knapsack MIPs agree with exhaustive search") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 4 + static_cast<int>(gen() % 5);  // 4..8 binaries
    std::vector<double> value(n), weight(n);
    double cap = 0.0;
    for (int j = 0; j < n; ++j) {
      value[j] = U(gen);
      weight[j] = U(gen);
      cap += weight[j];
    }
    cap *= 0.45;
    ModelIR m;
    std::vector<LinTerm> row;
    for (int j = 0; j < n; ++j) {
      int id = m.add_var("b" + std::to_string(j), 0.0, 1.0, VarKind::binary);
      m.add_obj(id, -value[j]);  // maximize value
      row.push_back({id, weight[j]});
    }
    m.add_con("cap", row, Rel::le, cap);
    SolveResult got = solve(m);
    REQUIRE(got.status == SolveStatus::optimal);

    double best = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      double v = 0.0, w = 0.0;
      for (int j = 0; j < n; ++j)
        if (mask & (1 << j)) {
          v += value[j];
          w += weight[j];
        }
      if (w <= cap + 1e-12) best = std::min(best, -v);
    }
    CHECK(got.objective == doctest::Approx(best).epsilon(1e-6));
    // reported binaries are exactly integral
    for (int j = 0; j < n; ++j) {
      double zv = got.value("b" + std::to_string(j));
      CHECK(std::abs(zv - std::round(zv)) <= 1e-12);
    }
  }
}

TEST_CASE("fix_integers_and_resolve reproduces the incumbent objective") {
  ModelIR m;
  int b0 = m.add_var("b0", 0.0, 1.0, VarKind::binary);
  int b1 = m.add_var("b1", 0.0, 1.0, VarKind::binary);
  int x = m.add_var("x", 0.0, 10.0);
  m.add_obj(b0, 1.0);
  m.add_obj(b1, 2.0);
  m.add_obj(x, 0.5);
  m.add_con("pick", {{b0, 1.0}, {b1, 1.0}}, Rel::ge, 1.0);
  m.add_con("link", {{x, 1.0}, {b0, -4.0}}, Rel::ge, 0.0, true);
  SolveResult inc = solve(m);
  REQUIRE(inc.status == SolveStatus::optimal);
  CHECK(inc.duals.empty());
  SolveResult re = fix_integers_and_resolve(m, inc);
  CHECK(re.status == SolveStatus::optimal);
  CHECK(re.objective == doctest::Approx(inc.objective).epsilon(1e-6));
  CHECK(re.duals.count("link") == 1);
}

TEST_CASE("fix_integers_and_resolve detects an excluded incumbent") {
  ModelIR m;
  int b0 = m.add_var("b0", 0.0, 1.0, VarKind::binary);
  int x = m.add_var("x", 0.0, 10.0);
  m.add_obj(b0, -3.0);
  m.add_obj(x, 1.0);
  m.add_con("link", {{x, 1.0}, {b0, -2.0}}, Rel::ge, 0.0);
  SolveResult inc = solve(m);
  REQUIRE(inc.status == SolveStatus::optimal);
  CHECK(inc.value("b0") == doctest::Approx(1.0));
  ModelIR tightened = m;
  tightened.vars[b0].ub = 0.0;  // excludes the incumbent
  CHECK_THROWS_WITH_AS(fix_integers_and_resolve(tightened, inc), doctest::Contains(
                           "IncumbentInfeasibleAfterFix"),
                       Error);
}
