#pragma once

// Exact integer and rational linear algebra over GMP.
//
// Conventions used throughout the library:
//  * A lattice (sublattice of Z^k) is stored as the row space of an IntMatrix.
//  * A homomorphism Z^m -> Z^k is stored as a k x m matrix acting on column
//    vectors, so composition is ordinary matrix product.
//  * Hermite normal forms are row-style: u * m = h.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dualdefect {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  // Convenience for literals in tests and fixtures.
  static Matrix from_longs(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    Matrix m(rows.size(), cols);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != cols) throw std::invalid_argument("Matrix::from_longs: ragged rows");
      std::size_t j = 0;
      for (long v : r) m(i, j++) = T(v);
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<T> col_vector(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("Matrix::append_row: width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Rows [first, last).
  Matrix row_range(std::size_t first, std::size_t last) const {
    Matrix m(last - first, cols_);
    for (std::size_t i = first; i < last; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - first, j) = (*this)(i, j);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    T tmp;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          tmp = aik * b(k, j);
          c(i, j) += tmp;
        }
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("Matrix-vector product: dimension mismatch");
    std::vector<T> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// Vertical concatenation; both operands must have equal width (an empty
// 0 x 0 operand is accepted as neutral).
template <class T>
Matrix<T> vstack(const Matrix<T>& top, const Matrix<T>& bottom) {
  if (top.rows() == 0 && top.cols() == 0) return bottom;
  if (bottom.rows() == 0 && bottom.cols() == 0) return top;
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: width mismatch");
  Matrix<T> m(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) m(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) m(top.rows() + i, j) = bottom(i, j);
  return m;
}

struct HermiteForm {
  IntMatrix h;  // row-style Hermite normal form
  IntMatrix u;  // unimodular, u * m == h
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

struct SmithForm {
  IntMatrix s;  // diagonal, d_1 | d_2 | ..., d_i >= 0
  IntMatrix u;  // unimodular rows
  IntMatrix v;  // unimodular cols, u * m * v == s
  std::vector<Int> invariant_factors() const;
};

HermiteForm hnf(const IntMatrix& m);
SmithForm snf(const IntMatrix& m);

// Saturated basis (HNF rows) of {x in Z^cols : m * x = 0}.
IntMatrix kernel_basis_int(const IntMatrix& m);

// HNF basis of span_Q(rows of gens) intersected with Z^cols.
IntMatrix saturate(const IntMatrix& gens);

// Integer solution of m * x = b, if any.
std::optional<IntVector> solve_int(const IntMatrix& m, const IntVector& b);

// HNF rows of the lattice generated by the rows of m (zero rows dropped).
IntMatrix lattice_basis(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
Int determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);
// True iff m : Z^cols -> Z^rows is onto (rank == rows and all invariant factors 1).
bool is_surjective(const IntMatrix& m);
// Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
// Scales every row by the lcm of its denominators and divides by its content.
IntMatrix primitive_integer_rows(const RatMatrix& m);
Int content(std::span<const Int> v);

struct EchelonForm {
  RatMatrix r;  // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivot_cols;
};
EchelonForm rref(const RatMatrix& m);
// Rows form a basis of {x in Q^cols : m * x = 0}.
RatMatrix nullspace(const RatMatrix& m);
std::optional<RatVector> solve_rat(const RatMatrix& m, const RatVector& b);

// A subspace of Q^n, stored by its canonical RREF basis.
class RationalSubspace {
 public:
  RationalSubspace() = default;
  explicit RationalSubspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim), basis_(0, ambient_dim) {}

  static RationalSubspace span(const RatMatrix& generators);
  static RationalSubspace span(const IntMatrix& generators) { return span(to_rational(generators)); }
  static RationalSubspace full(std::size_t n) { return span(RatMatrix::identity(n)); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }
  IntMatrix integer_basis() const { return primitive_integer_rows(basis_); }

  bool contains(const RatVector& v) const;
  bool contains(const RationalSubspace& other) const;
  RationalSubspace operator+(const RationalSubspace& other) const;
  friend bool operator==(const RationalSubspace& a, const RationalSubspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  RatMatrix basis_;
};

// Sum of subspaces is direct iff dimensions add up.
bool is_direct_sum(std::span<const RationalSubspace> parts);

std::string to_string(const IntVector& v);

}  // namespace dualdefect
