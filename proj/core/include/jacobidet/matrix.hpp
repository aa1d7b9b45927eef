#pragma once

// Dense row-major matrices over integers, rationals and Z[zeta_m].
//
// A matrix carries a prototype zero element so that empty matrices and
// products over Z[zeta_m] still know their ring.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "jacobidet/cyclotomic.hpp"

namespace jacobidet {

template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, T zero = T()) : rows_(rows), cols_(cols), zero_(zero) {
    data_.assign(rows * cols, zero_);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const T& zero() const { return zero_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  /// Keeps the listed rows and columns, in the given order.
  Matrix select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
    Matrix out(row_idx.size(), col_idx.size(), zero_);
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
      for (std::size_t j = 0; j < col_idx.size(); ++j) out(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
    return out;
  }

  Matrix without_column(std::size_t c) const {
    std::vector<std::size_t> rows(rows_), cols;
    for (std::size_t i = 0; i < rows_; ++i) rows[i] = i;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j != c) cols.push_back(j);
    }
    return select(rows, cols);
  }

  Matrix without_row(std::size_t r) const { return transpose().without_column(r).transpose(); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix out(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T acc = a.zero_;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        out(i, j) = acc;
      }
    }
    return out;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  T zero_;
  std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using CycMatrix = Matrix<CycInt>;

inline CycMatrix make_cyc_matrix(std::size_t rows, std::size_t cols, const RingPtr& ring) {
  return CycMatrix(rows, cols, CycInt(ring));
}

/// Integer matrix embedded as constants of Z[zeta_m].
CycMatrix to_cyc(const IntMatrix& a, const RingPtr& ring);

}  // namespace jacobidet
