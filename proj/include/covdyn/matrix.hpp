#pragma once

#include <cstddef>
#include <vector>

#include "covdyn/errors.hpp"
#include "covdyn/rational.hpp"

namespace covdyn {

// Dense rational matrix, row-major.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, Rat(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

  bool operator==(const RatMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && cells_ == other.cells_;
  }

  RatMatrix operator*(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw_error("DimensionMismatch", "matrix product shape");
    RatMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rat& lik = at(i, k);
        if (lik == 0) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) {
          out.at(i, j) += lik * rhs.at(k, j);
        }
      }
    }
    return out;
  }

  std::vector<Rat> operator*(const std::vector<Rat>& v) const {
    if (cols_ != v.size()) throw_error("DimensionMismatch", "matrix-vector shape");
    std::vector<Rat> out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (at(i, j) != 0) out[i] += at(i, j) * v[j];
      }
    }
    return out;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 1;
    return out;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> cells_;
};

}  // namespace covdyn
