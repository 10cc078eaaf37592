#include "doctest.h"

#include <cmath>

#include "polyflow/lp.hpp"
#include "polyflow/rng.hpp"
#include "support/naive_simplex.hpp"

using namespace polyflow;

TEST_CASE("simplex solves a textbook LP with duals") {
  LinearProgram lp;
  int x = lp.add_variable(3.0);
  int y = lp.add_variable(2.0);
  int r0 = lp.add_row('<', 4.0);
  lp.add_term(r0, x, 1.0);
  lp.add_term(r0, y, 1.0);
  int r1 = lp.add_row('<', 5.0);
  lp.add_term(r1, x, 2.0);
  lp.add_term(r1, y, 1.0);

  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(9.0));  // x=1, y=3
  CHECK(sol.x[static_cast<size_t>(x)] == doctest::Approx(1.0));
  CHECK(sol.x[static_cast<size_t>(y)] == doctest::Approx(3.0));
  CHECK(sol.dual_objective(lp) == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(sol.y[0] >= -1e-9);
  CHECK(sol.y[1] >= -1e-9);
}

TEST_CASE("simplex handles equality and >= rows") {
  LinearProgram lp;
  int x = lp.add_variable(1.0);
  int y = lp.add_variable(1.0);
  int eq = lp.add_row('=', 2.0);
  lp.add_term(eq, x, 1.0);
  lp.add_term(eq, y, 1.0);
  int ge = lp.add_row('>', 0.5);
  lp.add_term(ge, x, 1.0);

  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0));
  CHECK(sol.dual_objective(lp) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("negative rhs rows are normalized") {
  // -x <= -2 means x >= 2.
  LinearProgram lp;
  lp.set_maximize(false);
  int x = lp.add_variable(1.0);
  int r = lp.add_row('<', -2.0);
  lp.add_term(r, x, -1.0);
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0));
  CHECK(sol.dual_objective(lp) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
  LinearProgram bad;
  int x = bad.add_variable(1.0);
  int lo = bad.add_row('>', 2.0);
  bad.add_term(lo, x, 1.0);
  int hi = bad.add_row('<', 1.0);
  bad.add_term(hi, x, 1.0);
  CHECK(solve_lp(bad).status == LpStatus::Infeasible);

  LinearProgram free;
  free.add_variable(1.0);
  CHECK(solve_lp(free).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate LP terminates") {
  LinearProgram lp;
  int x = lp.add_variable(1.0);
  int y = lp.add_variable(1.0);
  for (int i = 0; i < 4; ++i) {
    int r = lp.add_row('<', 0.0);
    lp.add_term(r, x, 1.0 + i);
    lp.add_term(r, y, -1.0);
  }
  int cap = lp.add_row('<', 1.0);
  lp.add_term(cap, y, 1.0);
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.25));  // y=1, x=1/4 via the tightest row
}

namespace {

LinearProgram random_feasible_lp(Rng& rng) {
  LinearProgram lp;
  const int n = 1 + rng.below(6);
  const int m = 1 + rng.below(6);
  std::vector<double> x0;
  for (int j = 0; j < n; ++j) {
    lp.add_variable(rng.uniform(-1.0, 2.0));
    x0.push_back(rng.uniform(0.0, 2.0));
  }
  for (int i = 0; i < m; ++i) {
    double lhs = 0;
    std::vector<double> coefs;
    for (int j = 0; j < n; ++j) {
      const double c = rng.uniform() < 0.3 ? 0.0 : rng.uniform(-1.0, 2.0);
      coefs.push_back(c);
      lhs += c * x0[static_cast<size_t>(j)];
    }
    const double pick = rng.uniform();
    char sense = pick < 0.6 ? '<' : (pick < 0.8 ? '>' : '=');
    double rhs = lhs;
    if (sense == '<') rhs += rng.uniform(0.0, 1.0);
    if (sense == '>') rhs -= rng.uniform(0.0, 1.0);
    int r = lp.add_row(sense, rhs);
    for (int j = 0; j < n; ++j)
      if (coefs[static_cast<size_t>(j)] != 0.0) lp.add_term(r, j, coefs[static_cast<size_t>(j)]);
  }
  // Bounding box keeps the program bounded.
  int box = lp.add_row('<', 50.0);
  for (int j = 0; j < n; ++j) lp.add_term(box, j, 1.0);
  return lp;
}

}  // namespace

TEST_CASE("random feasible LPs: strong duality, residuals, and agreement with the naive oracle") {
  Rng rng(42);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp = random_feasible_lp(rng);
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    ++solved;

    // Primal residuals.
    for (const auto& row : lp.rows()) {
      double lhs = 0;
      for (auto [v, c] : row.terms) lhs += c * sol.x[static_cast<size_t>(v)];
      if (row.sense == '<') CHECK(lhs <= row.rhs + 1e-7);
      if (row.sense == '>') CHECK(lhs >= row.rhs - 1e-7);
      if (row.sense == '=') CHECK(std::abs(lhs - row.rhs) <= 1e-7);
    }
    for (double v : sol.x) CHECK(v >= -1e-9);

    // Strong duality.
    CHECK(sol.dual_objective(lp) == doctest::Approx(sol.objective).epsilon(1e-7));

    // Independent naive solver agrees on the value.
    auto naive = polyflow::testing::naive_lp_max(lp);
    REQUIRE(naive.has_value());
    CHECK(*naive == doctest::Approx(sol.objective).epsilon(1e-6));
  }
  CHECK(solved == 200);
}
