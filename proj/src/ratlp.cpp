#include "covdyn/ratlp.hpp"

#include <limits>

#include "covdyn/errors.hpp"

namespace covdyn {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Full-tableau simplex state. Column layout: structural variables first,
// then one artificial per row, then the rhs column.
struct Tableau {
  std::size_t n = 0;                    // structural variables
  std::size_t m = 0;                    // rows
  std::vector<std::vector<Rat>> rows;   // m rows, width n + m + 1
  std::vector<Rat> obj;                 // reduced-cost row, width n + m + 1
  std::vector<std::size_t> basis;       // basis[i] = variable of row i
  std::vector<char> usable;             // columns allowed to enter

  std::size_t width() const { return n + m + 1; }
  Rat& rhs(std::size_t i) { return rows[i][n + m]; }

  void pivot(std::size_t row, std::size_t col) {
    const Rat inv = Rat(1) / rows[row][col];
    for (auto& cell : rows[row]) cell *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || rows[i][col] == 0) continue;
      const Rat factor = rows[i][col];
      for (std::size_t j = 0; j < width(); ++j) rows[i][j] -= factor * rows[row][j];
    }
    if (obj[col] != 0) {
      const Rat factor = obj[col];
      for (std::size_t j = 0; j < width(); ++j) obj[j] -= factor * rows[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule: entering column is the lowest-index improving one, the
  // leaving row breaks ratio ties by lowest basis variable index.
  // Returns Optimal or Unbounded.
  LpStatus run() {
    for (;;) {
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < n + m; ++j) {
        if (usable[j] && obj[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering == kNone) return LpStatus::Optimal;

      std::size_t leaving = kNone;
      Rat best_ratio;
      for (std::size_t i = 0; i < m; ++i) {
        if (rows[i][entering] <= 0) continue;
        Rat ratio = rows[i][n + m] / rows[i][entering];
        if (leaving == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == kNone) return LpStatus::Unbounded;
      pivot(leaving, entering);
    }
  }
};

}  // namespace

LpOutcome lp_solve(const LpProblem& problem) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.rows.size();
  if (problem.rhs.size() != m) throw_error("DimensionMismatch", "rhs length != row count");
  for (const auto& row : problem.rows) {
    if (row.size() != n) throw_error("DimensionMismatch", "row length != num_vars");
  }
  if (!problem.objective.empty() && problem.objective.size() != n) {
    throw_error("DimensionMismatch", "objective length != num_vars");
  }

  Tableau t;
  t.n = n;
  t.m = m;
  t.rows.assign(m, std::vector<Rat>(n + m + 1, Rat(0)));
  t.basis.resize(m);
  t.usable.assign(n + m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = problem.rhs[i] < 0;
    for (std::size_t j = 0; j < n; ++j) {
      t.rows[i][j] = flip ? Rat(-problem.rows[i][j]) : problem.rows[i][j];
    }
    t.rows[i][n + i] = 1;
    t.rhs(i) = flip ? Rat(-problem.rhs[i]) : problem.rhs[i];
    t.basis[i] = n + i;
  }

  // Phase 1: minimize the sum of artificials. Reduced costs of that
  // objective under the artificial basis are the negated column sums.
  t.obj.assign(t.width(), Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rat sum = 0;
    for (std::size_t i = 0; i < m; ++i) sum += t.rows[i][j];
    t.obj[j] = -sum;
  }
  Rat rhs_total = 0;
  for (std::size_t i = 0; i < m; ++i) rhs_total += t.rhs(i);
  t.obj[n + m] = -rhs_total;  // objective row tracks -(sum of artificials)

  t.run();  // bounded below by 0, never Unbounded

  const Rat infeasibility = -t.obj[n + m];
  if (infeasibility > 0) {
    LpOutcome out;
    out.status = LpStatus::Infeasible;
    out.phase1_optimum = infeasibility;
    return out;
  }

  // Drive any degenerate artificials out of the basis; a row with no
  // structural coefficient left is redundant and can be neutralized.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    std::size_t col = kNone;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.rows[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col != kNone) t.pivot(i, col);
  }
  for (std::size_t j = n; j < n + m; ++j) t.usable[j] = 0;

  // Phase 2: maximize the caller's objective (reduced costs c_B B^-1 A - c).
  t.obj.assign(t.width(), Rat(0));
  if (!problem.objective.empty()) {
    for (std::size_t j = 0; j < n; ++j) t.obj[j] = -problem.objective[j];
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] >= n) continue;
      const Rat coeff = problem.objective[t.basis[i]];
      if (coeff == 0) continue;
      for (std::size_t j = 0; j < t.width(); ++j) t.obj[j] += coeff * t.rows[i][j];
    }
    for (std::size_t i = 0; i < m; ++i) t.obj[t.basis[i]] = 0;
    if (t.run() == LpStatus::Unbounded) {
      LpOutcome out;
      out.status = LpStatus::Unbounded;
      return out;
    }
  }

  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.assignment.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) out.assignment[t.basis[i]] = t.rhs(i);
  }
  if (!problem.objective.empty()) {
    Rat value = 0;
    for (std::size_t j = 0; j < n; ++j) value += problem.objective[j] * out.assignment[j];
    out.objective_value = value;
  }
  return out;
}

}  // namespace covdyn
