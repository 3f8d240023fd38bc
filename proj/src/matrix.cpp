#include "subpack/matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace subpack {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Element e) { return e == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw std::out_of_range("row block out of range");
  Matrix m(count, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_,
              m.data_.begin());
  return m;
}

Matrix Matrix::col_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw std::out_of_range("column block out of range");
  Matrix m(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
  return m;
}

Matrix vstack(std::span<const Matrix> parts) {
  if (parts.empty()) return {};
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack: column count mismatch");
    rows += p.rows();
  }
  std::vector<Element> data;
  data.reserve(rows * cols);
  for (const auto& p : parts) data.insert(data.end(), p.data().begin(), p.data().end());
  return Matrix(rows, cols, std::move(data));
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw std::invalid_argument("hstack: row count mismatch");
  Matrix m(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) m(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) m(r, left.cols() + c) = right(r, c);
  }
  return m;
}

Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
  Matrix m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = f.add(a(r, c), b(r, c));
  return m;
}

Matrix subtract(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("subtract: shape mismatch");
  Matrix m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = f.sub(a(r, c), b(r, c));
  return m;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimension mismatch");
  Matrix m(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const Element x = a(r, i);
      if (x == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) m(r, c) = f.add(m(r, c), f.mul(x, b(i, c)));
    }
  return m;
}

namespace detail {

RrefResult rref_generic(const Field& f, Matrix m) {
  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
    const Element scale = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Element factor = m(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = std::move(m);
  return res;
}

RrefResult rref_packed_f2(const Matrix& m) {
  if (m.cols() > 64) throw std::invalid_argument("packed kernel supports at most 64 columns");
  std::vector<unsigned long long> rows(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) & 1) rows[r] |= 1ULL << c;

  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    const unsigned long long bit = 1ULL << c;
    std::size_t pivot = r;
    while (pivot < rows.size() && !(rows[pivot] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.reduced = Matrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c)
      res.reduced(i, c) = static_cast<Element>((rows[i] >> c) & 1ULL);
  return res;
}

}  // namespace detail

RrefResult rref(const Field& f, Matrix m) {
  if (f.order() == 2 && m.cols() <= 64) return detail::rref_packed_f2(m);
  return detail::rref_generic(f, std::move(m));
}

std::size_t rank(const Field& f, const Matrix& m) {
  EchelonBasis basis(f, m.cols());
  return basis.insert_rows(m);
}

EchelonBasis::EchelonBasis(const Field& f, std::size_t cols)
    : field_(f), cols_(cols), packed_(f.order() == 2 && cols <= 64) {}

bool EchelonBasis::insert(std::span<const Element> v) {
  if (v.size() != cols_) throw std::invalid_argument("EchelonBasis: vector length mismatch");
  if (packed_) {
    unsigned long long x = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (v[c] & 1) x |= 1ULL << c;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (x & pivot_masks_[i]) x ^= bits_[i];
    if (x == 0) return false;
    const unsigned long long mask = x & (~x + 1);
    for (auto& row : bits_)
      if (row & mask) row ^= x;
    bits_.push_back(x);
    pivot_masks_.push_back(mask);
    pivots_.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    return true;
  }

  std::vector<Element> x(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Element factor = x[pivots_[i]];
    if (factor == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) x[c] = field_.sub(x[c], field_.mul(factor, rows_[i][c]));
  }
  std::size_t p = 0;
  while (p < cols_ && x[p] == 0) ++p;
  if (p == cols_) return false;
  const Element scale = field_.inv(x[p]);
  for (auto& e : x) e = field_.mul(e, scale);
  for (auto& row : rows_) {
    const Element factor = row[p];
    if (factor == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) row[c] = field_.sub(row[c], field_.mul(factor, x[c]));
  }
  rows_.push_back(std::move(x));
  pivots_.push_back(p);
  return true;
}

std::size_t EchelonBasis::insert_rows(const Matrix& m) {
  std::size_t added = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (insert(m.row(r))) ++added;
  return added;
}

bool EchelonBasis::contains(std::span<const Element> v) const {
  EchelonBasis copy = *this;
  return !copy.insert(v);
}

}  // namespace subpack
