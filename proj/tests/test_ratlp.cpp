#include <doctest.h>

#include <random>

#include "covdyn/errors.hpp"
#include "covdyn/linalg.hpp"
#include "covdyn/ratlp.hpp"

using namespace covdyn;

namespace {

// Independent oracle: enumerate every basic solution (square column subset),
// keep the feasible ones, take the best objective. Valid for bounded
// full-row-rank instances with few variables.
std::optional<Rat> best_vertex_value(const LpProblem& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;
  std::optional<Rat> best;
  std::vector<std::size_t> pick(m, 0);
  const auto consider = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) a[i][k] = lp.rows[i][cols[k]];
    }
    const auto solved = solve_square(a, lp.rhs);
    if (!solved) return;
    for (const Rat& x : *solved) {
      if (x < 0) return;
    }
    Rat value = 0;
    for (std::size_t k = 0; k < m; ++k) value += lp.objective[cols[k]] * (*solved)[k];
    if (!best || value > *best) best = value;
  };
  // All m-subsets of columns.
  std::vector<std::size_t> cols;
  const auto recurse = [&](auto&& self, std::size_t next) -> void {
    if (cols.size() == m) {
      consider(cols);
      return;
    }
    for (std::size_t j = next; j < n; ++j) {
      cols.push_back(j);
      self(self, j + 1);
      cols.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace

TEST_CASE("two-variable instances from first principles") {
  LpProblem lp;
  lp.num_vars = 2;
  lp.rows = {{Rat(1), Rat(1)}};
  lp.rhs = {Rat(1)};
  lp.objective = {Rat(1), Rat(0)};
  const auto outcome = lp_solve(lp);
  REQUIRE(outcome.status == LpStatus::Optimal);
  CHECK(outcome.assignment == std::vector<Rat>{Rat(1), Rat(0)});
  CHECK(outcome.objective_value == 1);

  lp.rhs = {Rat(-1)};
  const auto infeasible = lp_solve(lp);
  REQUIRE(infeasible.status == LpStatus::Infeasible);
  CHECK(infeasible.phase1_optimum > 0);
}

TEST_CASE("unbounded detection") {
  LpProblem lp;
  lp.num_vars = 1;
  lp.objective = {Rat(1)};
  CHECK(lp_solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("pure feasibility leaves the objective at zero") {
  LpProblem lp;
  lp.num_vars = 3;
  lp.rows = {{Rat(1), Rat(1), Rat(1)}, {Rat(1), Rat(-1), Rat(0)}};
  lp.rhs = {Rat(1), Rat(0)};
  const auto outcome = lp_solve(lp);
  REQUIRE(outcome.status == LpStatus::Optimal);
  CHECK(outcome.objective_value == 0);
  Rat sum = 0;
  for (const Rat& x : outcome.assignment) sum += x;
  CHECK(sum == 1);
  CHECK(outcome.assignment[0] == outcome.assignment[1]);
}

TEST_CASE("Bland's rule survives the classic degenerate instance") {
  // Beale's cycling example, in equality form with slack variables.
  // max 3/4 x1 - 150 x2 + 1/50 x3 - 6 x4
  LpProblem lp;
  lp.num_vars = 7;
  lp.rows = {
      {Rat(1, 4), Rat(-60), Rat(-1, 25), Rat(9), Rat(1), Rat(0), Rat(0)},
      {Rat(1, 2), Rat(-90), Rat(-1, 50), Rat(3), Rat(0), Rat(1), Rat(0)},
      {Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)},
  };
  lp.rhs = {Rat(0), Rat(0), Rat(1)};
  lp.objective = {Rat(3, 4), Rat(-150), Rat(1, 50), Rat(-6), Rat(0), Rat(0), Rat(0)};
  const auto outcome = lp_solve(lp);
  REQUIRE(outcome.status == LpStatus::Optimal);
  CHECK(outcome.objective_value == Rat(1, 20));
  CHECK(outcome.objective_value == *best_vertex_value(lp));
}

TEST_CASE("exactness: zero residual on every returned assignment") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int round = 0; round < 60; ++round) {
    LpProblem lp;
    lp.num_vars = 5;
    const std::size_t m = 2 + round % 2;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rat> row;
      for (std::size_t j = 0; j < lp.num_vars; ++j) row.emplace_back(coeff(rng));
      lp.rows.push_back(std::move(row));
      lp.rhs.emplace_back(coeff(rng));
    }
    lp.objective.assign(lp.num_vars, Rat(0));
    const auto outcome = lp_solve(lp);
    if (outcome.status != LpStatus::Optimal) continue;
    for (std::size_t i = 0; i < m; ++i) {
      Rat acc = 0;
      for (std::size_t j = 0; j < lp.num_vars; ++j) {
        acc += lp.rows[i][j] * outcome.assignment[j];
      }
      REQUIRE(acc == lp.rhs[i]);
      for (const Rat& x : outcome.assignment) REQUIRE(x >= 0);
    }
  }
}

TEST_CASE("optimal value agrees with vertex enumeration on bounded instances") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> coeff(0, 3);
  std::uniform_int_distribution<int> obj_coeff(-3, 3);
  int solved = 0;
  for (int round = 0; round < 80; ++round) {
    LpProblem lp;
    lp.num_vars = 5;
    // One all-positive row bounds the feasible set.
    std::vector<Rat> bounding;
    for (std::size_t j = 0; j < lp.num_vars; ++j) bounding.emplace_back(1 + coeff(rng));
    lp.rows.push_back(bounding);
    lp.rhs.emplace_back(4);
    std::vector<Rat> second;
    for (std::size_t j = 0; j < lp.num_vars; ++j) second.emplace_back(coeff(rng));
    lp.rows.push_back(second);
    lp.rhs.emplace_back(2);
    for (std::size_t j = 0; j < lp.num_vars; ++j) lp.objective.emplace_back(obj_coeff(rng));

    const auto outcome = lp_solve(lp);
    const auto oracle = best_vertex_value(lp);
    if (outcome.status == LpStatus::Infeasible) {
      REQUIRE(!oracle.has_value());
      continue;
    }
    REQUIRE(outcome.status == LpStatus::Optimal);
    REQUIRE(oracle.has_value());
    REQUIRE(outcome.objective_value == *oracle);
    ++solved;
  }
  CHECK(solved > 20);
}

TEST_CASE("dimension validation") {
  LpProblem lp;
  lp.num_vars = 2;
  lp.rows = {{Rat(1)}};
  lp.rhs = {Rat(1)};
  CHECK_THROWS_AS(lp_solve(lp), Error);
  lp.rows = {{Rat(1), Rat(1)}};
  lp.rhs = {};
  CHECK_THROWS_AS(lp_solve(lp), Error);
}
