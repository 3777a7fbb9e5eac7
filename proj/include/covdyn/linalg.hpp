#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "covdyn/rational.hpp"

namespace covdyn {

// Exact Gauss-Jordan helpers used by the LP kernel's test oracles and by the
// commutant-subspace checks. Rows are plain rational vectors.

// Reduces `rows` in place to reduced row echelon form; returns the rank.
std::size_t rref(std::vector<std::vector<Rat>>& rows);

std::size_t rank(std::vector<std::vector<Rat>> rows);

// True iff `row` lies in the span of `basis` (all rows same width).
bool in_row_span(const std::vector<std::vector<Rat>>& basis, const std::vector<Rat>& row);

// Solves the square system A x = b exactly; nullopt when A is singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b);

}  // namespace covdyn
