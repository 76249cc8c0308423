#include "bvw/zexact/matrix.hpp"

#include "bvw/error.hpp"

#include <sstream>

namespace bvw {

CoeffRing common_ring(const CoeffRing& a, const CoeffRing& b) {
  if (a == b) return a;
  if (a.kind() == RingKind::Integers) return b;
  if (b.kind() == RingKind::Integers) return a;
  throw Error(ErrorKind::UnsupportedRingPair, a.name() + " with " + b.name());
}

Matrix Matrix::identity(CoeffRing ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

Matrix Matrix::from_rows(CoeffRing ring, const std::vector<std::vector<Scalar>>& rows,
                         std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  Matrix m(ring, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ring.normalize(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_columns(CoeffRing ring, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(ErrorKind::InvalidArgument, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = ring.normalize(cols[j][i]);
  }
  return m;
}

Matrix Matrix::diagonal(CoeffRing ring, const Vec& d) {
  Matrix m(ring, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = ring.normalize(d[i]);
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw Error(ErrorKind::InvalidArgument, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = ring_.normalize(v[i]);
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::cast(const CoeffRing& target) const {
  if (target == ring_) return *this;
  if (ring_.kind() != RingKind::Integers)
    throw Error(ErrorKind::UnsupportedRingPair, "cannot cast " + ring_.name() + " to " + target.name());
  Matrix m(target, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = target.normalize(data_[k]);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void Matrix::add_row_multiple(std::size_t dst, std::size_t src, const Scalar& k) {
  if (k.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) ring_.fma((*this)(dst, j), k, (*this)(src, j));
}

void Matrix::add_col_multiple(std::size_t dst, std::size_t src, const Scalar& k) {
  if (k.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i) ring_.fma((*this)(i, dst), k, (*this)(i, src));
}

void Matrix::scale_row(std::size_t r, const Scalar& k) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = ring_.mul((*this)(r, j), k);
}

void Matrix::scale_col(std::size_t c, const Scalar& k) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = ring_.mul((*this)(i, c), k);
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << (*this)(i, j).str();
    }
  }
  os << ']';
  return os.str();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorKind::InvalidArgument, "dimension mismatch in product");
  CoeffRing r = common_ring(a.ring(), b.ring());
  Matrix ac = a.cast(r), bc = b.cast(r);
  Matrix out(r, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& x = ac(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r.fma(out(i, j), x, bc(k, j));
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::InvalidArgument, "dimension mismatch in sum");
  CoeffRing r = common_ring(a.ring(), b.ring());
  Matrix out = a.cast(r);
  Matrix bc = b.cast(r);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = r.add(out(i, j), bc(i, j));
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return a + scale(b, Scalar(-1));
}

Matrix scale(const Matrix& a, const Scalar& k) {
  Matrix out(a.ring(), a.rows(), a.cols());
  Scalar kk = a.ring().normalize(k);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.ring().mul(a(i, j), kk);
  return out;
}

Vec mat_vec(const Matrix& a, const Vec& v) {
  if (v.size() != a.cols()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in apply");
  const CoeffRing& r = a.ring();
  Vec out(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (v[j].is_zero()) continue;
    Scalar x = v[j];
    if (r.kind() == RingKind::PrimeField) x = r.normalize(x);
    for (std::size_t i = 0; i < a.rows(); ++i) r.fma(out[i], a(i, j), x);
  }
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvalidArgument, "row mismatch in hstack");
  CoeffRing r = common_ring(a.ring(), b.ring());
  Matrix out(r, a.rows(), a.cols() + b.cols());
  Matrix ac = a.cast(r), bc = b.cast(r);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = ac(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = bc(i, j);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "column mismatch in vstack");
  CoeffRing r = common_ring(a.ring(), b.ring());
  Matrix out(r, a.rows() + b.rows(), a.cols());
  Matrix ac = a.cast(r), bc = b.cast(r);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = ac(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) out(a.rows() + i, j) = bc(i, j);
  }
  return out;
}

Vec normalize_vec(const CoeffRing& ring, Vec v) {
  for (auto& s : v) s = ring.normalize(std::move(s));
  return v;
}

Vec vec_sub(const CoeffRing& ring, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.sub(ring.normalize(a[i]), ring.normalize(b[i]));
  return out;
}

Vec vec_add(const CoeffRing& ring, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(ring.normalize(a[i]), ring.normalize(b[i]));
  return out;
}

Vec vec_scale(const CoeffRing& ring, const Vec& a, const Scalar& k) {
  Vec out(a.size());
  Scalar kk = ring.normalize(k);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.mul(ring.normalize(a[i]), kk);
  return out;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = Scalar(1);
  return v;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace bvw
