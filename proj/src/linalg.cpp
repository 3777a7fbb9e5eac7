#include "covdyn/linalg.hpp"

#include "covdyn/errors.hpp"

namespace covdyn {

std::size_t rref(std::vector<std::vector<Rat>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t width = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != width) throw_error("DimensionMismatch", "ragged row in rref");
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < width && pivot_row < rows.size(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[pivot_row], rows[sel]);
    const Rat inv = Rat(1) / rows[pivot_row][col];
    for (std::size_t j = col; j < width; ++j) rows[pivot_row][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot_row || rows[i][col] == 0) continue;
      const Rat factor = rows[i][col];
      for (std::size_t j = col; j < width; ++j) {
        rows[i][j] -= factor * rows[pivot_row][j];
      }
    }
    ++pivot_row;
  }
  return pivot_row;
}

std::size_t rank(std::vector<std::vector<Rat>> rows) { return rref(rows); }

bool in_row_span(const std::vector<std::vector<Rat>>& basis, const std::vector<Rat>& row) {
  auto augmented = basis;
  const std::size_t base_rank = rank(augmented);
  augmented.push_back(row);
  return rank(augmented) == base_rank;
}

std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw_error("DimensionMismatch", "solve_square shapes");
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) return std::nullopt;
    std::swap(a[col], a[sel]);
    const Rat inv = Rat(1) / a[col][col];
    for (std::size_t j = col; j <= n; ++j) a[col][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rat factor = a[i][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= factor * a[col][j];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace covdyn
