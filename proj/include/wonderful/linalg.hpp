#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wonderful/gf.hpp"

// Dense row-major matrices over a finite field; row reduction and friends.
namespace wonderful::linalg {

using gf::Elem;
using gf::Field;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<Elem>& data() const { return data_; }

  void append_row(std::span<const Elem> row);
  /// Keep the first `rows` rows.
  void truncate(std::size_t rows);

  std::vector<std::vector<Elem>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Reduces m in place to reduced row echelon form, drops zero rows, and returns
/// the pivot columns.
std::vector<std::size_t> rref(const Field& f, Matrix& m);

std::size_t rank(const Field& f, Matrix m);

/// Reduces v against an RREF matrix; the result is zero iff v is in the row space.
void reduce_against(const Field& f, const Matrix& rref_rows, std::span<Elem> v);

bool in_row_space(const Field& f, const Matrix& rref_rows, std::span<const Elem> v);

/// Basis (in RREF) of {x : m x = 0}, returned as rows.
Matrix null_space(const Field& f, const Matrix& m);

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

/// Throws NotABasis when m is singular.
Matrix inverse(const Field& f, const Matrix& m);

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b);

/// Scales v so that its first nonzero entry is 1; returns false if v == 0.
bool normalize(const Field& f, std::span<Elem> v);

/// All nonzero vectors of F^n with first nonzero entry 1, lexicographic.
std::vector<std::vector<Elem>> projective_points(const Field& f, std::size_t n);

/// All normalized vectors of the row space of an RREF matrix, lexicographic.
std::vector<std::vector<Elem>> projective_vectors_in(const Field& f, const Matrix& rref_rows);

}  // namespace wonderful::linalg
