#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "symplectica/integer.hpp"

namespace symplectica {

/// Dense row-major matrix of exact integers. Zero-sized dimensions are
/// allowed (they show up for trivial groups).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  explicit IntMatrix(const std::vector<IntVector>& rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& d);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  std::vector<IntVector> to_rows() const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator-() const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;

  /// Sub-matrix with the given row and column index lists.
  IntMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  /// [this | other]
  IntMatrix hcat(const IntMatrix& other) const;
  /// [this ; other]
  IntMatrix vcat(const IntMatrix& other) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  bool is_zero() const;
  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Exact determinant (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

}  // namespace symplectica
