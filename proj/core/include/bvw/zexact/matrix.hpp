#pragma once

#include "bvw/zexact/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bvw {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() : ring_(CoeffRing::integers()) {}
  Matrix(CoeffRing ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(CoeffRing ring, std::size_t n);
  // Entries are normalized into the ring.
  static Matrix from_rows(CoeffRing ring, const std::vector<std::vector<Scalar>>& rows,
                          std::size_t cols_if_empty = 0);
  static Matrix from_columns(CoeffRing ring, std::size_t rows, const std::vector<Vec>& cols);
  static Matrix diagonal(CoeffRing ring, const Vec& d);

  const CoeffRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);

  Matrix transpose() const;
  // Reinterprets the entries in another ring (Z -> F_p, Z -> Q, same ring).
  Matrix cast(const CoeffRing& target) const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Scalar& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const Scalar& k);
  void scale_row(std::size_t r, const Scalar& k);
  void scale_col(std::size_t c, const Scalar& k);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const;

 private:
  CoeffRing ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// All binary operations require matching rings, except that an integer
// operand is coerced into the ring of the other operand.
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, const Scalar& k);
Vec mat_vec(const Matrix& a, const Vec& v);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

Vec normalize_vec(const CoeffRing& ring, Vec v);
Vec vec_sub(const CoeffRing& ring, const Vec& a, const Vec& b);
Vec vec_add(const CoeffRing& ring, const Vec& a, const Vec& b);
Vec vec_scale(const CoeffRing& ring, const Vec& a, const Scalar& k);
Vec unit_vector(std::size_t n, std::size_t i);
bool vec_is_zero(const Vec& v);
std::string vec_str(const Vec& v);

// Ring in which a composite of maps over `a` then `b` is computed.
CoeffRing common_ring(const CoeffRing& a, const CoeffRing& b);

}  // namespace bvw
