#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "subpack/field.hpp"

namespace subpack {

/// Dense row-major matrix of field elements. The matrix does not carry its
/// field; every arithmetic routine takes the Field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Element operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Element& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Element> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Element> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Element>& data() const noexcept { return data_; }

  bool is_zero() const noexcept;
  Matrix transpose() const;
  /// Rows [first, first + count).
  Matrix row_block(std::size_t first, std::size_t count) const;
  /// Columns [first, first + count).
  Matrix col_block(std::size_t first, std::size_t count) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend std::strong_ordering operator<=>(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

Matrix vstack(std::span<const Matrix> parts);
Matrix hstack(const Matrix& left, const Matrix& right);

Matrix add(const Field& f, const Matrix& a, const Matrix& b);
Matrix subtract(const Field& f, const Matrix& a, const Matrix& b);
Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix reduced;                   // same shape as the input, zero rows last
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row-echelon form. Over F_2 with at most 64 columns a bit-packed
/// elimination kernel is used.
RrefResult rref(const Field& f, Matrix m);
std::size_t rank(const Field& f, const Matrix& m);

namespace detail {
RrefResult rref_generic(const Field& f, Matrix m);
RrefResult rref_packed_f2(const Matrix& m);
}  // namespace detail

/// Incrementally maintained row space. Rows are kept fully reduced so that
/// membership tests and insertions cost one pass over the stored rows.
class EchelonBasis {
 public:
  EchelonBasis(const Field& f, std::size_t cols);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  /// Adds a vector; returns true when it increased the rank.
  bool insert(std::span<const Element> v);
  /// Adds every row of m; returns the number of rows that increased the rank.
  std::size_t insert_rows(const Matrix& m);
  bool contains(std::span<const Element> v) const;

 private:
  Field field_;
  std::size_t cols_;
  bool packed_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<Element>> rows_;
  std::vector<unsigned long long> bits_;
  std::vector<unsigned long long> pivot_masks_;
};

}  // namespace subpack
